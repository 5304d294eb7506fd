"""Base coefficient fields: a prime field F_p with p odd, or the rationals.

Field elements are plain Python values (int residues for F_p, Fraction for
the rationals); the field object supplies the operations.  Characteristic 2
is rejected everywhere since 1/2 must be invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime p; elements are ints in 0..p-1."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")

    @property
    def char(self) -> int:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def of_int(self, m: int) -> int:
        return m % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def element_to_json(self, a: int):
        return a % self.p

    def element_from_json(self, obj) -> int:
        if not isinstance(obj, int):
            raise ValueError(f"expected integer residue, got {obj!r}")
        return obj % self.p

    def key(self) -> tuple:
        return ("Fp", self.p)


@dataclass(frozen=True)
class Rationals:
    """The rational numbers; elements are Fraction instances."""

    @property
    def char(self) -> int:
        return 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def of_int(self, m: int) -> Fraction:
        return Fraction(m)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def element_to_json(self, a: Fraction) -> str:
        return f"{a.numerator}/{a.denominator}"

    def element_from_json(self, obj) -> Fraction:
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            return Fraction(obj)
        raise ValueError(f"expected integer or fraction string, got {obj!r}")

    def key(self) -> tuple:
        return ("Q",)


def field_from_key(key: tuple):
    if key[0] == "Fp":
        return PrimeField(key[1])
    if key[0] == "Q":
        return Rationals()
    raise ValueError(f"unknown field key {key!r}")
