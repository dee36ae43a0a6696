"""Exact roots of unity.

A :class:`Phase` stands for the complex number ``exp(2*pi*i * num/den)``; the
exponent is kept as a reduced fraction in ``[0, 1)`` so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .zpfield import ZpScalar


class NotPthRoot(ValueError):
    """The phase is not a p-th root of unity."""


@dataclass(frozen=True, order=True)
class Phase:
    num: int = 0
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError(f"phase denominator must be positive, got {self.den}")
        n = self.num % self.den
        g = gcd(n, self.den)
        object.__setattr__(self, "num", n // g)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fraction(cls, x) -> Phase:
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @classmethod
    def root(cls, k: int, d: int) -> Phase:
        """``omega_d ** k``."""
        return cls(k, d)

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_unit(self) -> bool:
        return self.num == 0

    def __mul__(self, other: Phase) -> Phase:
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.num * other.den + other.num * self.den, self.den * other.den)

    def __pow__(self, k: int) -> Phase:
        return Phase(self.num * k, self.den)

    def inverse(self) -> Phase:
        return Phase(-self.num, self.den)

    def __truediv__(self, other: Phase) -> Phase:
        return self * other.inverse()

    def to_complex(self) -> complex:
        import cmath

        return cmath.exp(2j * cmath.pi * self.num / self.den)

    def __repr__(self):
        return f"Phase({self.num}/{self.den})"

    def to_json(self) -> dict:
        return {"num": self.num, "den": self.den}

    @classmethod
    def from_json(cls, obj) -> Phase:
        return cls(int(obj["num"]), int(obj["den"]))


UNIT = Phase(0, 1)
MINUS_ONE = Phase(1, 2)


def phase_mul(a: Phase, b: Phase) -> Phase:
    return a * b


def phase_pow(a: Phase, k: int) -> Phase:
    return a ** k


def phase_inv(a: Phase) -> Phase:
    return a.inverse()


def root_order(a: Phase) -> int:
    """Smallest ``m >= 1`` with ``a**m == 1``; for a reduced exponent this is the denominator."""
    return a.den


def as_zp_exponent(a: Phase, p: int) -> ZpScalar:
    """Return ``c`` with ``a == omega_p ** c``.

    Raises:
        NotPthRoot: if the denominator of ``a`` does not divide ``p``.
    """
    if p % a.den:
        raise NotPthRoot(f"{a!r} is not a {p}-th root of unity")
    return ZpScalar(a.num * (p // a.den), p)
