"""Spanning sets, pi-adic column reduction, residue bases, annihilators."""

import pytest

from ramwedge.errors import PrecisionExhaustedError
from ramwedge.exterior import (E_BASIS, WedgeVector, basis_wedge,
                               change_wedge_basis, f_frame, standard_e_frame,
                               wedge_eq, wedge_scale)
from ramwedge.fields import PrimeField
from ramwedge.indexsets import (IndexSet, all_index_sets, sigma_sign_closed)
from ramwedge.lattices import (annihilators, annihilator_evaluations,
                               intersect_with_standard_lattice,
                               lattice_contains, lattices_equal,
                               membership_over_R, reduce_mod_pi, residue_rank,
                               residue_spans_equal, spanning_set)
from ramwedge.rings import DualNumbers, FieldRing
from ramwedge.scalars import LaurentOps, PiLaurent

F = PrimeField(13)
PRECISION = 24


def L(coeffs):
    return PiLaurent.make(F, {e: F.of_int(c) for e, c in coeffs.items()})


def e_vec(n, sets_coeffs):
    return WedgeVector(E_BASIS, n, {IndexSet.of(n, m): c for m, c in sets_coeffs})


def test_refined_generator_count_matches_pair_count():
    for n in (3, 5):
        gens = spanning_set("refined", n, F, eps=-1, r=n - 1, s=1)
        pairs = 0
        for s in all_index_sets(n):
            if s.type_pair() != (n - 1, 1):
                continue
            i_s = min(t for t in s.members if t > n)
            i_p = min(t for t in s.perp().members if t > n)
            if i_s <= i_p:
                pairs += 1
        assert len(gens) == pairs == n * (n + 1) // 2


def test_spin_self_perp_generators_collapse_to_doubles():
    n = 3
    ring = LaurentOps(F)
    efr = standard_e_frame(F, n)
    ffr = f_frame(F, n)
    for eps in (1, -1):
        gens = spanning_set("spin", n, F, eps=eps)
        for s in all_index_sets(n):
            if s.perp() != s:
                continue
            f_s = change_wedge_basis(basis_wedge(ffr, s, ring), E_BASIS, efr)
            double = wedge_scale(f_s, L({0: 2}), ring)
            present = any(wedge_eq(g, double) for g in gens)
            # the combination survives exactly when eps matches the shuffle sign
            assert present == (sigma_sign_closed(s) == eps)


def test_spin_generator_counts():
    # half of the top-degree coordinates for each sign
    for n in (3, 5):
        import math
        for eps in (1, -1):
            gens = spanning_set("spin", n, F, eps=eps)
            assert len(gens) == math.comb(2 * n, n) // 2


def test_kl_top_degree_is_signature_summand():
    n, r, s = 3, 2, 1
    gens = spanning_set("kl", n, F, l=n, r=r, s=s)
    type_sets = [t for t in all_index_sets(n) if t.type_pair() == (r, s)]
    assert len(gens) == len(type_sets)


def test_spanning_parameter_validation():
    with pytest.raises(ValueError):
        spanning_set("spin", 3, F, eps=0)
    with pytest.raises(ValueError):
        spanning_set("refined", 3, F, eps=1, r=2, s=2)
    with pytest.raises(ValueError):
        spanning_set("kl", 3, F, l=4, r=2, s=1)
    with pytest.raises(ValueError):
        spanning_set("mystery", 3, F)


def test_monomial_saturation():
    n = 3
    a = IndexSet.of(n, (1, 2, 3))
    basis = intersect_with_standard_lattice([e_vec(n, [((1, 2, 3), L({-3: 1}))])],
                                            PRECISION)
    assert basis.rank == 1
    assert basis.pivots == ((a, -3),)
    assert basis.columns[0].terms == {a: PiLaurent.one(F)}


def test_single_column_scaling():
    n = 3
    gen = e_vec(n, [((1, 2, 3), L({0: 1})), ((1, 2, 4), L({-1: 1}))])
    basis = intersect_with_standard_lattice([gen], PRECISION)
    assert basis.rank == 1
    col = basis.columns[0].terms
    assert col[IndexSet.of(n, (1, 2, 3))] == L({1: 1})
    assert col[IndexSet.of(n, (1, 2, 4))] == L({0: 1})


def test_redundant_generators_detected():
    n = 3
    gen = e_vec(n, [((1, 2, 3), L({0: 1}))])
    dup = e_vec(n, [((1, 2, 3), L({2: 5}))])
    basis = intersect_with_standard_lattice([gen, dup], PRECISION)
    assert basis.rank == 1


def test_precision_guard_trips():
    n = 3
    gen = e_vec(n, [((1, 2, 3), L({23: 1}))])
    with pytest.raises(PrecisionExhaustedError):
        intersect_with_standard_lattice([gen], PRECISION)


def test_intersection_idempotence():
    n = 3
    gens = spanning_set("refined", n, F, eps=-1, r=2, s=1)
    basis = intersect_with_standard_lattice(gens, PRECISION)
    again = intersect_with_standard_lattice(list(basis.columns), PRECISION)
    assert lattices_equal(basis, again)


def test_lattice_contains_rejects_fractional_coordinates():
    n = 3
    gens = spanning_set("refined", n, F, eps=-1, r=2, s=1)
    basis = intersect_with_standard_lattice(gens, PRECISION)
    inside = basis.columns[0]
    ring = LaurentOps(F)
    outside = wedge_scale(inside, L({-1: 1}), ring)
    assert lattice_contains(basis, inside)
    assert not lattice_contains(basis, outside)


def test_residue_reduction_drops_pi():
    n = 3
    gens = spanning_set("refined", n, F, eps=-1, r=2, s=1)
    rb = reduce_mod_pi(intersect_with_standard_lattice(gens, PRECISION))
    assert len(rb) == 6
    for vec, pivot in zip(rb.vectors, rb.pivots):
        assert pivot in vec
        assert all(not F.is_zero(c) for c in vec.values())


def test_annihilator_toy_examples():
    # single coordinate in a 2-coordinate space: the complementary
    # coordinate functional is the annihilator
    from ramwedge.lattices import ResidueBasis
    a = IndexSet.of(1, (1,))
    b = IndexSet.of(1, (2,))
    rb = ResidueBasis(1, 1, F, ({a: F.one},), (a,))
    ann = annihilators(rb)
    assert len(ann.functionals) == 0
    assert ann.coordinate_dim == 2
    assert ann.functional_count == 1
    ring = FieldRing(F)
    assert membership_over_R({a: F.of_int(5)}, ann, ring).ok
    res = membership_over_R({b: F.one}, ann, ring)
    assert not res.ok and "coordinate" in res.witness

    # difference vector: the annihilator is the coordinate sum
    rb = ResidueBasis(1, 1, F, ({a: F.one, b: F.neg(F.one)},), (a,))
    ann = annihilators(rb)
    assert len(ann.functionals) == 1
    assert ann.functionals[0] == {b: F.one, a: F.one}
    assert ann.functional_count + ann.span_rank == ann.coordinate_dim
    assert membership_over_R({a: F.of_int(3), b: F.of_int(10)}, ann, ring).ok
    assert not membership_over_R({a: F.of_int(3), b: F.of_int(3)}, ann, ring).ok


def test_rank_nullity_on_computed_lattices():
    for n in (3, 5):
        gens = spanning_set("refined", n, F, eps=-1, r=n - 1, s=1)
        ann = annihilators(reduce_mod_pi(intersect_with_standard_lattice(gens, PRECISION)))
        assert ann.functional_count + ann.span_rank == ann.coordinate_dim


def test_membership_of_zero_vector():
    n = 3
    gens = spanning_set("spin", n, F, eps=1)
    ann = annihilators(reduce_mod_pi(intersect_with_standard_lattice(gens, PRECISION)))
    assert membership_over_R({}, ann, FieldRing(F)).ok


def test_spin_residue_over_dual_numbers():
    # listed monomials stay members after extension to the dual numbers
    n = 3
    ring = DualNumbers(F)
    gens = spanning_set("spin", n, F, eps=-1)
    ann = annihilators(reduce_mod_pi(intersect_with_standard_lattice(gens, PRECISION)))
    target = {IndexSet.of(n, (4, 5, 6)): ring.x()}
    assert membership_over_R(target, ann, ring).ok


def test_annihilator_evaluations_labels():
    n = 3
    gens = spanning_set("refined", n, F, eps=-1, r=2, s=1)
    ann = annihilators(reduce_mod_pi(intersect_with_standard_lattice(gens, PRECISION)))
    ring = FieldRing(F)
    labels = [label for label, _ in
              annihilator_evaluations(ann, {IndexSet.of(n, (1, 2, 3)): F.one}, ring)]
    assert any(label.startswith("coordinate") for label in labels)
    assert any(label.startswith("functional") for label in labels)


def test_pipeline_over_rationals_cross_check():
    from ramwedge.fields import Rationals
    q = Rationals()
    gens = spanning_set("refined", 3, q, eps=-1, r=2, s=1)
    basis = intersect_with_standard_lattice(gens, PRECISION)
    rb = reduce_mod_pi(basis)
    assert basis.rank == len(rb) == 6
    ann = annihilators(rb)
    full = IndexSet.of(3, (4, 5, 6))
    assert membership_over_R({full: q.one}, ann, FieldRing(q)).ok


@pytest.mark.parametrize("p", [3, 5, 7])
def test_residue_rank_independent_of_prime(p):
    field = PrimeField(p)
    gens = spanning_set("refined", 3, field, eps=-1, r=2, s=1)
    rb = reduce_mod_pi(intersect_with_standard_lattice(gens, PRECISION))
    assert len(rb) == 6


def test_residue_rank_and_span_equality():
    a = IndexSet.of(1, (1,))
    b = IndexSet.of(1, (2,))
    v1 = {a: F.one}
    v2 = {a: F.of_int(2)}
    v3 = {b: F.one}
    assert residue_rank(F, [v1, v2]) == 1
    assert residue_rank(F, [v1, v3]) == 2
    assert residue_spans_equal(F, [v1], [v2])
    assert not residue_spans_equal(F, [v1], [v3])
