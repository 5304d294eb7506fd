"""Exact arithmetic in k((pi)) with pi^2 playing the role of the degree-0
uniformizer: finite Laurent polynomials in pi over a base field, plus
truncated series for division by non-monomials.

PiLaurent is exact. PiSeries carries a precision N and stores coefficients
only for exponents below N; arithmetic results carry the minimum precision
of the operands.  Zero coefficients are never stored, so an empty PiSeries
means "zero to the stored precision" and its valuation is indeterminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FieldMismatchError, IndeterminateValuationError

INF = math.inf


def _normalized(field, coeffs: dict, bound=None) -> dict:
    out = {}
    for e, c in coeffs.items():
        if bound is not None and e >= bound:
            continue
        if not field.is_zero(c):
            out[e] = c
    return out


@dataclass(frozen=True)
class PiLaurent:
    """A finite Laurent polynomial sum_e c_e * pi^e with c_e in the base field."""

    field: object
    coeffs: dict

    @staticmethod
    def make(field, coeffs: dict) -> "PiLaurent":
        return PiLaurent(field, _normalized(field, coeffs))

    @staticmethod
    def zero(field) -> "PiLaurent":
        return PiLaurent(field, {})

    @staticmethod
    def one(field) -> "PiLaurent":
        return PiLaurent(field, {0: field.one})

    @staticmethod
    def const(field, c) -> "PiLaurent":
        return PiLaurent.make(field, {0: c})

    @staticmethod
    def monomial(field, exp: int, c=None) -> "PiLaurent":
        if c is None:
            c = field.one
        return PiLaurent.make(field, {exp: c})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def ord(self):
        """Least exponent with nonzero coefficient; +inf for the zero element."""
        if not self.coeffs:
            return INF
        return min(self.coeffs)

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def scale(self, c) -> "PiLaurent":
        f = self.field
        return PiLaurent(f, _normalized(f, {e: f.mul(v, c) for e, v in self.coeffs.items()}))

    def shift(self, k: int) -> "PiLaurent":
        return PiLaurent(self.field, {e + k: v for e, v in self.coeffs.items()})

    def truncate(self, precision: int) -> "PiSeries":
        return PiSeries.make(self.field, dict(self.coeffs), precision)

    def residue(self):
        """Coefficient of pi^0, requiring ord >= 0."""
        if self.coeffs and min(self.coeffs) < 0:
            raise ValueError("residue of an element with negative valuation")
        return self.coeffs.get(0, self.field.zero)

    def __add__(self, other):
        return _add(self, other)

    def __sub__(self, other):
        return _add(self, _neg(other))

    def __mul__(self, other):
        return _mul(self, other)

    def __neg__(self):
        return _neg(self)

    def to_json(self):
        return [[e, self.field.element_to_json(c)] for e, c in self.items_sorted()]

    @staticmethod
    def from_json(field, obj) -> "PiLaurent":
        coeffs = {}
        for pair in obj:
            e, c = pair
            coeffs[int(e)] = field.element_from_json(c)
        return PiLaurent.make(field, coeffs)


@dataclass(frozen=True)
class PiSeries:
    """A Laurent series known modulo pi^precision."""

    field: object
    coeffs: dict
    precision: int

    @staticmethod
    def make(field, coeffs: dict, precision: int) -> "PiSeries":
        return PiSeries(field, _normalized(field, coeffs, bound=precision), precision)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def ord(self):
        if not self.coeffs:
            raise IndeterminateValuationError(
                f"zero to precision {self.precision}; valuation indeterminate")
        return min(self.coeffs)

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def scale(self, c) -> "PiSeries":
        f = self.field
        return PiSeries.make(f, {e: f.mul(v, c) for e, v in self.coeffs.items()}, self.precision)

    def shift(self, k: int) -> "PiSeries":
        return PiSeries(self.field, {e + k: v for e, v in self.coeffs.items()},
                        self.precision + k)

    def residue(self):
        if self.coeffs and min(self.coeffs) < 0:
            raise ValueError("residue of an element with negative valuation")
        if self.precision <= 0:
            raise IndeterminateValuationError("residue not determined at this precision")
        return self.coeffs.get(0, self.field.zero)

    def __add__(self, other):
        return _add(self, other)

    def __sub__(self, other):
        return _add(self, _neg(other))

    def __mul__(self, other):
        return _mul(self, other)

    def __neg__(self):
        return _neg(self)

    def to_json(self):
        return [[e, self.field.element_to_json(c)] for e, c in self.items_sorted()]


def _check_fields(a, b):
    if a.field != b.field:
        raise FieldMismatchError(f"mixed base fields {a.field} and {b.field}")


def _precision(x):
    return x.precision if isinstance(x, PiSeries) else INF


def _neg(a):
    f = a.field
    coeffs = {e: f.neg(c) for e, c in a.coeffs.items()}
    if isinstance(a, PiSeries):
        return PiSeries(f, coeffs, a.precision)
    return PiLaurent(f, coeffs)


def _add(a, b):
    _check_fields(a, b)
    f = a.field
    prec = min(_precision(a), _precision(b))
    out = dict(a.coeffs)
    for e, c in b.coeffs.items():
        s = f.add(out.get(e, f.zero), c)
        if f.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    if prec is INF:
        return PiLaurent(f, out)
    return PiSeries.make(f, out, prec)


def _mul(a, b):
    _check_fields(a, b)
    f = a.field
    prec = min(_precision(a), _precision(b))
    out = {}
    for e1, c1 in a.coeffs.items():
        for e2, c2 in b.coeffs.items():
            e = e1 + e2
            if e >= prec:
                continue
            s = f.add(out.get(e, f.zero), f.mul(c1, c2))
            if f.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
    if prec is INF:
        return PiLaurent(f, out)
    return PiSeries(f, out, prec)


def ord_pi(a):
    """Valuation of a PiLaurent or PiSeries; +inf for exact zero."""
    if isinstance(a, PiSeries):
        return a.ord()
    return a.ord()


def truncated_inverse(a, precision: int) -> PiSeries:
    """Multiplicative inverse of a, correct so that a * result == 1 through
    pi-exponent precision - 1.  The result has valuation -ord(a)."""
    if a.is_zero:
        raise ValueError("inverse of zero")
    f = a.field
    v = a.ord()
    lead_inv = f.inv(a.coeffs[v])
    # Relative precision of the geometric series 1/(1 + t).
    rel = precision
    if isinstance(a, PiSeries):
        rel = min(rel, a.precision - v)
    unit = a.shift(-v).scale(lead_inv)
    if isinstance(unit, PiLaurent):
        unit = unit.truncate(rel)
    else:
        unit = PiSeries.make(f, unit.coeffs, rel)
    t = _add(unit, PiLaurent.make(f, {0: f.neg(f.one)}))
    acc = PiSeries.make(f, {0: f.one}, rel)
    term = acc
    while not term.is_zero:
        term = _neg(_mul(term, t))
        acc = _add(acc, term)
    return acc.scale(lead_inv).shift(-v)


class LaurentOps:
    """Coefficient-ring adapter so generic wedge code can run over exact
    Laurent scalars (elements are PiLaurent or PiSeries)."""

    def __init__(self, field):
        self.field = field
        self.zero = PiLaurent.zero(field)
        self.one = PiLaurent.one(field)

    def add(self, a, b):
        return _add(a, b)

    def sub(self, a, b):
        return _add(a, _neg(b))

    def mul(self, a, b):
        return _mul(a, b)

    def neg(self, a):
        return _neg(a)

    def is_zero(self, a) -> bool:
        return a.is_zero

    def from_base(self, c):
        return PiLaurent.const(self.field, c)

    def eq(self, a, b) -> bool:
        return type(a) == type(b) and a == b
