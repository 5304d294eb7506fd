"""Frames, bilinear forms, sparse wedges, basis changes, worst terms, and
wedge-power operators."""

import random

import pytest

from ramwedge.exterior import (E_BASIS, WedgeVector, apply_wedge_power_operator,
                               basis_wedge, build_frame, change_wedge_basis,
                               chart_frame, f_frame, form_eval,
                               frame_position_map, g_frame, lambda_frame,
                               operator_add, operator_identity,
                               operator_pi_action, operator_scalar,
                               operator_sub, reindex_wedge_terms,
                               spin_involution, standard_e_frame,
                               wedge_columns, wedge_eq, wedge_scale,
                               worst_terms)
from ramwedge.fields import PrimeField
from ramwedge.indexsets import (IndexSet, all_index_sets, i_star, i_vee,
                                sigma_sign_closed)
from ramwedge.scalars import LaurentOps, PiLaurent

F = PrimeField(13)


def L(coeffs, field=F):
    return PiLaurent.make(field, {e: field.of_int(c) for e, c in coeffs.items()})


def test_g_frame_first_and_middle_vectors():
    for n in (3, 5):
        g = g_frame(F, n)
        assert g.vector(1) == {1: L({0: 1}), n + 1: L({-1: -1})}
        half = F.inv(F.of_int(2))
        assert g.vector(n + 1) == {1: PiLaurent.const(F, half),
                                   n + 1: PiLaurent.make(F, {-1: half})}


def test_lambda_frame_ambient_realization():
    # at n = 3 the middle-index lattice frame holds pi^-1 e_1 as pi^-2
    # times ambient position 4
    lam = standard_e_frame(F, 3)
    assert lam.vector(1) == {4: L({-2: 1})}
    assert [lam.vector(p) for p in range(2, 7)] == [
        {2: L({0: 1})}, {3: L({0: 1})}, {1: L({0: 1})},
        {5: L({0: 1})}, {6: L({0: 1})}]


def test_lambda_frames_along_the_chain():
    # every chain index yields a monomial frame covering all 2n ambient
    # positions; index 0 is the plain ambient basis, index n rescales the
    # top half by pi^-2
    for n in (3, 4):
        for i in range(0, 2 * n + 1):
            frame = lambda_frame(F, n, i)
            covered = {next(iter(v)) for v in frame.vectors}
            assert covered == set(range(1, 2 * n + 1))
    lam0 = lambda_frame(F, 3, 0)
    assert [lam0.vector(p) for p in (1, 4)] == [{1: L({0: 1})}, {4: L({0: 1})}]
    lam_n = lambda_frame(F, 3, 3)
    assert lam_n.vector(1) == {4: L({-2: 1})}
    assert lam_n.vector(4) == {1: L({0: 1})}


def test_chart_frame_is_reordered_lattice_frame():
    for n in (3, 5, 7):
        posmap = frame_position_map(chart_frame(F, n), standard_e_frame(F, n))
        assert sorted(posmap[1:]) == list(range(1, 2 * n + 1))


def test_build_frame_dispatch_and_errors():
    assert build_frame("g_split", 3, F).kind == "g_split"
    assert build_frame("lambda", 4, F, index=1).kind == "lambda(1)"
    with pytest.raises(ValueError):
        build_frame("nope", 3, F)
    with pytest.raises(ValueError):
        build_frame("g_split", 1, F)


def test_symmetric_form_on_ambient_basis():
    n = 3
    one = PiLaurent.one(F)
    u = lambda i: {i: one}
    assert form_eval("symmetric", n, u(1), u(3), F) == one
    assert form_eval("symmetric", n, u(1), u(4), F) == PiLaurent.zero(F)
    assert form_eval("symmetric", n, u(4), u(6), F) == L({2: -1})
    assert form_eval("alternating", n, u(1), u(1), F) == PiLaurent.zero(F)
    assert form_eval("alternating", n, u(1), u(6), F) == one
    assert form_eval("alternating", n, u(6), u(1), F) == L({0: -1})


@pytest.mark.parametrize("n", [3, 4, 5])
def test_f_frame_is_split(n):
    f = f_frame(F, n)
    one = PiLaurent.one(F)
    zero = PiLaurent.zero(F)
    for a in range(1, 2 * n + 1):
        for b in range(1, 2 * n + 1):
            want = one if b == 2 * n + 1 - a else zero
            assert form_eval("symmetric", n, f.vector(a), f.vector(b), F) == want


def test_wedge_of_bottom_identity_block():
    n = 3
    ring = LaurentOps(F)
    cols = [{n + j: PiLaurent.one(F)} for j in range(1, n + 1)]
    w = wedge_columns(n, cols, ring)
    assert w.terms == {IndexSet.of(n, (4, 5, 6)): PiLaurent.one(F)}


def test_wedge_alternates_in_columns():
    n = 3
    ring = LaurentOps(F)
    rng = random.Random(7)
    cols = [{p: L({0: rng.randrange(1, 13)}) for p in rng.sample(range(1, 7), 3)}
            for _ in range(3)]
    w = wedge_columns(n, cols, ring)
    swapped = wedge_columns(n, [cols[1], cols[0], cols[2]], ring)
    for s, c in w.terms.items():
        assert swapped.terms.get(s) == -c
    dup = wedge_columns(n, [cols[0], cols[0], cols[2]], ring)
    assert dup.is_zero


def test_wedge_column_validation():
    ring = LaurentOps(F)
    with pytest.raises(ValueError):
        wedge_columns(3, [{7: PiLaurent.one(F)}], ring)
    with pytest.raises(ValueError):
        wedge_columns(3, [], ring)


def test_lattice_frame_wedge_is_unit_coordinate():
    for n in (3, 5):
        e_fr = standard_e_frame(F, n)
        s = IndexSet.of(n, range(1, n + 1))
        w = change_wedge_basis(basis_wedge(e_fr, s), E_BASIS, e_fr)
        assert w.terms == {s: PiLaurent.one(F)}


def test_top_lattice_wedge_in_ambient_coordinates():
    # frame positions n+1..2n hold the ambient vectors 1..m and n+m+1..2n in
    # increasing order, so the conversion carries no sign and no monomial
    for n in (3, 5):
        m = n // 2
        e_fr = standard_e_frame(F, n)
        s = IndexSet.of(n, range(n + 1, 2 * n + 1))
        w = WedgeVector(E_BASIS, n, {s: PiLaurent.one(F)})
        amb = change_wedge_basis(w, "ambient_wedge", e_fr)
        expected = IndexSet.of(n, list(range(1, m + 1))
                               + list(range(n + m + 1, 2 * n + 1)))
        assert amb.terms == {expected: PiLaurent.one(F)}


def test_inverse_monomial_in_basis_change():
    # an ambient coordinate on a position carrying the pi^-2 frame scalar
    # picks up the inverse monomial pi^2 when written in the e-basis
    n = 3
    e_fr = standard_e_frame(F, n)
    t = IndexSet.of(n, (4, 5, 6))
    amb = WedgeVector("ambient_wedge", n, {t: L({-2: 1})})
    w = change_wedge_basis(amb, E_BASIS, e_fr)
    assert w.terms == {IndexSet.of(n, (1, 5, 6)): PiLaurent.one(F)}


def test_change_basis_round_trip():
    rng = random.Random(11)
    for n in (3, 4, 5):
        e_fr = standard_e_frame(F, n)
        terms = {}
        for s in rng.sample(list(all_index_sets(n)), 5):
            terms[s] = L({rng.randrange(-3, 4): rng.randrange(1, 13)})
        w = WedgeVector(E_BASIS, n, terms)
        back = change_wedge_basis(change_wedge_basis(w, "ambient_wedge", e_fr),
                                  E_BASIS, e_fr)
        assert wedge_eq(w, back)
    with pytest.raises(ValueError):
        change_wedge_basis(w, E_BASIS, e_fr)


def test_hand_expanded_g_wedge():
    # worked instance frozen from a manual expansion: at n = 3 the g-frame
    # wedge over {1, 3, 4} equals -pi*e_{134} - e_{146}
    n = 3
    w = change_wedge_basis(basis_wedge(g_frame(F, n), IndexSet.of(n, (1, 3, 4))),
                           E_BASIS, standard_e_frame(F, n))
    assert w.terms == {IndexSet.of(n, (1, 3, 4)): L({1: -1}),
                       IndexSet.of(n, (1, 4, 6)): L({0: -1})}


def test_worst_terms_minimum_filter():
    n = 3
    a, b, c = (IndexSet.of(n, t) for t in ((1, 2, 3), (1, 2, 4), (1, 2, 5)))
    w = WedgeVector(E_BASIS, n, {a: L({-2: 1}), b: L({-1: 1}), c: L({-2: 1})})
    wt, val = worst_terms(w)
    assert val == -2
    assert set(wt.terms) == {a, c}
    with pytest.raises(ValueError):
        worst_terms(WedgeVector(E_BASIS, n, {}))


def test_worst_term_of_near_diagonal_g_wedge():
    # n = 5, set {2,3,4,5,6}: removing row 1 and adding column 6 gives the
    # coefficient (-1)^(1+2)/2 on pi^-3 times the top coordinate
    n, i = 5, 1
    s = IndexSet.of(n, (2, 3, 4, 5, n + i))
    w = change_wedge_basis(basis_wedge(g_frame(F, n), s), E_BASIS,
                           standard_e_frame(F, n))
    wt, val = worst_terms(w)
    assert val == -3
    half = F.inv(F.of_int(2))
    expected = PiLaurent.make(F, {-3: F.neg(half)})
    assert wt.terms == {IndexSet.of(n, range(6, 11)): expected}


@pytest.mark.parametrize("n", [3, 5, 7])
def test_g_wedge_coefficients_preserve_weight(n):
    ring = LaurentOps(F)
    gfr = g_frame(F, n)
    efr = standard_e_frame(F, n)
    stride = {3: 1, 5: 17, 7: 131}[n]
    sets = [s for k, s in enumerate(all_index_sets(n)) if k % stride == 0]
    for s in sets:
        w = change_wedge_basis(basis_wedge(gfr, s, ring), E_BASIS, efr)
        for t in w.terms:
            assert t.weight() == s.weight()


def test_pair_factor_identity():
    # the two-factor combination that drives the cancellation case:
    # g_i ^ g_{i*} - g_{i_vee} ^ g_{n+i} equals
    # (e_i x 1) ^ (e_{i_vee} x 1) - (pi^-1 e_i x 1) ^ (pi e_{i_vee} x 1)
    ring = LaurentOps(F)
    for n in (3, 5):
        g = g_frame(F, n)
        for i in range(1, n // 2 + 1):
            iv = i_vee(n, i)
            lhs_a = wedge_columns(n, [g.vector(i), g.vector(i_star(n, i))], ring)
            lhs_b = wedge_columns(n, [g.vector(iv), g.vector(n + i)], ring)
            lhs = {s: c for s, c in lhs_a.terms.items()}
            for s, c in lhs_b.terms.items():
                cur = lhs.get(s, PiLaurent.zero(F)) - c
                if cur.is_zero:
                    lhs.pop(s, None)
                else:
                    lhs[s] = cur
            one = PiLaurent.one(F)
            rhs_a = wedge_columns(n, [{i: one}, {iv: one}], ring)
            rhs_b = wedge_columns(n, [{n + i: L({-2: 1})}, {n + iv: one}], ring)
            rhs = dict(rhs_a.terms)
            for s, c in rhs_b.terms.items():
                cur = rhs.get(s, PiLaurent.zero(F)) - c
                if cur.is_zero:
                    rhs.pop(s, None)
                else:
                    rhs[s] = cur
            assert lhs == rhs


def test_spin_involution_squares_to_identity():
    ring = LaurentOps(F)
    rng = random.Random(3)
    for n in (3, 4):
        terms = {s: L({0: rng.randrange(1, 13)})
                 for s in rng.sample(list(all_index_sets(n)), 4)}
        twice = spin_involution(spin_involution(terms, ring), ring)
        assert twice == terms


@pytest.mark.parametrize("n,eps", [(3, 1), (3, -1), (4, 1), (4, -1)])
def test_spin_generators_are_eigenvectors(n, eps):
    ring = LaurentOps(F)
    factor = PiLaurent.const(F, F.of_int(eps))
    for s in all_index_sets(n):
        terms = {s: PiLaurent.one(F)}
        sgn = sigma_sign_closed(s)
        partner = s.perp()
        cur = terms.get(partner, PiLaurent.zero(F)) + PiLaurent.const(
            F, F.of_int(eps * sgn))
        if cur.is_zero:
            terms.pop(partner, None)
        else:
            terms[partner] = cur
        if not terms:
            continue
        image = spin_involution(terms, ring)
        scaled = {t: c * factor for t, c in terms.items()}
        assert image == scaled


def test_identity_operator_fixes_wedges():
    n = 3
    ring = LaurentOps(F)
    w = basis_wedge(g_frame(F, n), IndexSet.of(n, (1, 2, 4)), ring)
    out = apply_wedge_power_operator(operator_identity(F, n), n, w, ring=ring)
    assert wedge_eq(out, w)


def test_pi_action_eigenvalue_products():
    # degree-n action of (T - pi x 1) at T = 0 multiplies a type-(r, s)
    # g-frame wedge by pi^r(-pi)^s
    n = 3
    ring = LaurentOps(F)
    gfr = g_frame(F, n)
    op = operator_sub(operator_scalar(F, n, PiLaurent.zero(F)),
                      operator_pi_action(F, n))
    for s in all_index_sets(n):
        _, ss = s.type_pair()
        w = basis_wedge(gfr, s, ring)
        lhs = apply_wedge_power_operator(op, n, w, ring=ring)
        coeff = PiLaurent.make(F, {n: F.of_int((-1) ** ss)})
        assert wedge_eq(lhs, wedge_scale(w, coeff, ring))


def test_pi_action_annihilation_on_bounded_summand():
    # (pi x 1 + pi)^2 kills every degree-2 g-frame wedge with at most one
    # +pi eigenvector factor
    n, r, s = 3, 2, 1
    ring = LaurentOps(F)
    gfr = g_frame(F, n)
    op = operator_add(operator_pi_action(F, n),
                      operator_scalar(F, n, PiLaurent.monomial(F, 1)))
    for t in all_index_sets(n, card=s + 1):
        j, k = t.type_pair()
        if j <= r and k <= s:
            w = basis_wedge(gfr, t, ring)
            assert apply_wedge_power_operator(op, s + 1, w, ring=ring).is_zero


def test_operator_degree_mismatch_rejected():
    n = 3
    ring = LaurentOps(F)
    w = basis_wedge(g_frame(F, n), IndexSet.of(n, (1, 2)), ring)
    with pytest.raises(ValueError):
        apply_wedge_power_operator(operator_identity(F, n), 3, w, ring=ring)


def test_reindex_respects_permutation_parity():
    n = 3
    ring = LaurentOps(F)
    posmap = frame_position_map(chart_frame(F, n), standard_e_frame(F, n))
    # positions {4,5,6} of the chart frame are pi*e_3, e_1, pi*e_2; sorting
    # their images needs an even permutation, so the sign is +1
    terms = {IndexSet.of(n, (4, 5, 6)): PiLaurent.one(F)}
    out = reindex_wedge_terms(terms, posmap, ring, n)
    assert out == {IndexSet.of(n, (4, 5, 6)): PiLaurent.one(F)}


def test_wedge_vector_json():
    n = 3
    w = WedgeVector(E_BASIS, n, {IndexSet.of(n, (1, 2, 3)): L({-1: 2})})
    obj = w.to_json()
    assert obj["basis"] == E_BASIS
    assert obj["terms"] == [{"indexSet": [1, 2, 3], "coefficient": [[-1, 2]]}]
