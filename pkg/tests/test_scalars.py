"""Exact Laurent/series arithmetic: examples and seeded properties."""

import math
import random

import pytest

from ramwedge.errors import FieldMismatchError, IndeterminateValuationError
from ramwedge.fields import PrimeField, Rationals
from ramwedge.scalars import PiLaurent, PiSeries, ord_pi, truncated_inverse

F13 = PrimeField(13)


def L(field, coeffs):
    return PiLaurent.make(field, {e: field.of_int(c) for e, c in coeffs.items()})


def test_base_field_validation():
    with pytest.raises(ValueError):
        PrimeField(2)
    with pytest.raises(ValueError):
        PrimeField(9)
    assert PrimeField(3).char == 3
    assert Rationals().char == 0


def test_add_cancellation():
    a = L(F13, {1: 1, -1: 1})        # pi + pi^-1
    b = L(F13, {-1: -1})             # -pi^-1
    assert a + b == L(F13, {1: 1})


def test_pi_squared_representative():
    pi = PiLaurent.monomial(F13, 1)
    assert pi * pi == PiLaurent.monomial(F13, 2)


def test_difference_of_squares():
    one_plus = L(F13, {0: 1, 1: 1})
    one_minus = L(F13, {0: 1, 1: -1})
    assert one_plus * one_minus == L(F13, {0: 1, 2: -1})


def test_field_mismatch_rejected():
    a = PiLaurent.one(F13)
    b = PiLaurent.one(PrimeField(5))
    with pytest.raises(FieldMismatchError):
        a + b


def test_ord_examples():
    assert ord_pi(L(F13, {-2: 3, 1: 1})) == -2
    assert ord_pi(PiLaurent.zero(F13)) == math.inf
    truncated = PiLaurent.monomial(F13, 5).truncate(4)
    assert truncated.is_zero
    with pytest.raises(IndeterminateValuationError):
        ord_pi(truncated)


def test_truncated_inverse_monomial():
    inv = truncated_inverse(PiLaurent.monomial(F13, 1), 8)
    assert isinstance(inv, PiSeries)
    assert dict(inv.coeffs) == {-1: 1}


def test_truncated_inverse_geometric():
    inv = truncated_inverse(L(F13, {0: 1, 1: 1}), 3)
    assert dict(inv.coeffs) == {0: 1, 1: 12, 2: 1}
    assert inv.precision == 3


def test_truncated_inverse_constant_mod_5():
    f5 = PrimeField(5)
    # independent oracle: modular inverse
    assert pow(2, -1, 5) == 3
    inv = truncated_inverse(PiLaurent.const(f5, 2), 6)
    assert dict(inv.coeffs) == {0: 3}


def test_truncated_inverse_zero_rejected():
    with pytest.raises(ValueError):
        truncated_inverse(PiLaurent.zero(F13), 8)


def _random_laurent(rng, field, allow_zero=False):
    coeffs = {}
    for _ in range(rng.randrange(0 if allow_zero else 1, 4)):
        coeffs[rng.randrange(-5, 6)] = field.of_int(rng.randrange(1, 13))
    return PiLaurent.make(field, coeffs)


def test_ord_is_additive_and_ultrametric():
    rng = random.Random(1)
    for _ in range(300):
        a = _random_laurent(rng, F13)
        b = _random_laurent(rng, F13)
        if a.is_zero or b.is_zero:
            continue
        assert ord_pi(a * b) == ord_pi(a) + ord_pi(b)
        s = a + b
        if not s.is_zero:
            assert ord_pi(s) >= min(ord_pi(a), ord_pi(b))
        if ord_pi(a) != ord_pi(b):
            assert ord_pi(s) == min(ord_pi(a), ord_pi(b))


@pytest.mark.parametrize("precision", [4, 9, 24])
def test_inverse_agrees_through_requested_exponent(precision):
    rng = random.Random(precision)
    for _ in range(60):
        a = _random_laurent(rng, F13)
        if a.is_zero:
            continue
        inv = truncated_inverse(a, precision)
        assert ord_pi(inv) == -ord_pi(a)
        prod = a * inv
        bound = min(precision, prod.precision)
        for exp, c in prod.coeffs.items():
            if exp < bound and exp != 0:
                raise AssertionError(f"nonzero coefficient at pi^{exp}")
        if 0 < bound:
            assert prod.coeffs.get(0) == F13.one


def test_inverse_over_rationals():
    q = Rationals()
    a = PiLaurent.make(q, {0: q.of_int(3), 2: q.of_int(-7)})
    inv = truncated_inverse(a, 10)
    prod = a * inv
    assert prod.coeffs.get(0) == q.one
    assert all(q.is_zero(c) for e, c in prod.coeffs.items() if e != 0)


def test_series_precision_minimum_rule():
    a = L(F13, {0: 1, 1: 1}).truncate(10)
    b = L(F13, {0: 1}).truncate(6)
    assert (a + b).precision == 6
    assert (a * b).precision == 6
    exact = L(F13, {0: 2})
    assert (a * exact).precision == 10


def test_series_drops_coefficients_beyond_precision():
    a = L(F13, {0: 1, 5: 3}).truncate(4)
    assert dict(a.coeffs) == {0: 1}


def test_json_round_trip():
    a = L(F13, {-2: 5, 3: 11})
    assert PiLaurent.from_json(F13, a.to_json()) == a
    q = Rationals()
    b = PiLaurent.make(q, {0: q.of_int(1) / 3, 1: q.of_int(-2)})
    assert PiLaurent.from_json(q, b.to_json()) == b
