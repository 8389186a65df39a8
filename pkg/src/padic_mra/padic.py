"""Exact p-adic arithmetic on rationals.

Everything in this module is exact: scalars are :class:`fractions.Fraction`
values tagged with a prime.  Only :func:`character` leaves the rationals,
returning a complex root of unity.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

TOL = 1e-9

INF = math.inf

RationalLike = Union[int, Fraction, "PAdicScalar"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime integer, got {p!r}")
    return p


def int_valuation(n: int, p: int) -> int | float:
    """Multiplicity of p in the integer n (infinite for n = 0)."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, PAdicScalar):
        return x.value
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class PAdicScalar:
    """A rational number viewed as an element of Q_p."""

    p: int
    value: Fraction

    def __init__(self, value: RationalLike, p: int):
        if isinstance(value, PAdicScalar) and value.p != p:
            raise ValueError(f"prime mismatch: {value.p} vs {p}")
        object.__setattr__(self, "p", _check_prime(p))
        object.__setattr__(self, "value", _as_fraction(value))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PAdicScalar):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other.value
        return _as_fraction(other)

    def __add__(self, other):
        return PAdicScalar(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PAdicScalar(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return PAdicScalar(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return PAdicScalar(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PAdicScalar(self.value / self._coerce(other), self.p)

    def __rtruediv__(self, other):
        return PAdicScalar(self._coerce(other) / self.value, self.p)

    def __neg__(self):
        return PAdicScalar(-self.value, self.p)

    def __pow__(self, k: int):
        return PAdicScalar(self.value ** k, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}@{self.p}"

    @classmethod
    def parse(cls, text: str) -> "PAdicScalar":
        """Inverse of ``str``: ``"4/9@3"`` -> 4/9 in Q_3."""
        m = re.fullmatch(r"\s*(-?\d+)(?:/(\d+))?@(\d+)\s*", text)
        if m is None:
            raise ValueError(f"malformed p-adic scalar {text!r}")
        num, den, p = m.groups()
        return cls(Fraction(int(num), int(den or 1)), int(p))


def _scalar(x: RationalLike, p: int | None) -> PAdicScalar:
    if isinstance(x, PAdicScalar):
        if p is not None and x.p != p:
            raise ValueError(f"prime mismatch: {x.p} vs {p}")
        return x
    if p is None:
        raise ValueError("a prime is required for a bare rational")
    return PAdicScalar(x, p)


def valuation(x: RationalLike, p: int | None = None) -> int | float:
    """The exponent gamma with x = p^gamma * (unit); +inf for zero."""
    x = _scalar(x, p)
    if x.value == 0:
        return INF
    return int_valuation(x.numerator, x.p) - int_valuation(x.denominator, x.p)


def padic_norm(x: RationalLike, p: int | None = None) -> Fraction:
    x = _scalar(x, p)
    v = valuation(x)
    if v == INF:
        return Fraction(0)
    return Fraction(x.p) ** (-v)


def residue(x: RationalLike, p: int, modulus: int) -> int:
    """Reduce a p-adic integer (rational with denominator prime to p) mod ``modulus``.

    ``modulus`` must be a power of p.
    """
    q = _as_fraction(x)
    if q.denominator % p == 0:
        raise ValueError(f"{q} is not a {p}-adic integer")
    if modulus == 1:
        return 0
    return q.numerator * pow(q.denominator, -1, modulus) % modulus


def fractional_part(x: RationalLike, p: int | None = None) -> Fraction:
    """The principal part {x}_p, a rational in [0, 1) with |x - {x}_p|_p <= 1."""
    x = _scalar(x, p)
    p = x.p
    den = x.denominator
    k = int_valuation(den, p)
    if x.value == 0 or k == 0:
        return Fraction(0)
    pk = p ** k
    unit = den // pk
    a = x.numerator * pow(unit, -1, pk) % pk
    return Fraction(a, pk)


def character(x: RationalLike, p: int | None = None) -> complex:
    """Additive character chi_p(x) = exp(2 pi i {x}_p)."""
    r = fractional_part(x, p)
    if r == 0:
        return 1.0 + 0.0j
    return cmath.exp(2j * math.pi * r.numerator / r.denominator)


def same_ball(x: RationalLike, y: RationalLike, gamma: int, p: int | None = None) -> bool:
    """True iff |x - y|_p <= p^gamma."""
    x = _scalar(x, p)
    y = _scalar(y, x.p)
    return valuation(x - y) >= -gamma


@dataclass(frozen=True)
class Ball:
    """The closed ball {x : |x - center|_p <= p^radius_exp}.

    Equality and hashing go through a canonical center, so any point of the
    ball may be used to construct it.
    """

    p: int
    center: PAdicScalar
    radius_exp: int

    def __init__(self, center: RationalLike, radius_exp: int, p: int | None = None):
        c = _scalar(center, p)
        object.__setattr__(self, "p", c.p)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius_exp", int(radius_exp))

    @property
    def canonical_center(self) -> Fraction:
        """p^-gamma * {c p^gamma}: the same point for every center of the ball."""
        scale = Fraction(self.p) ** (-self.radius_exp)
        return scale * fractional_part(self.center.value / scale, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ball):
            return NotImplemented
        return (
            self.p == other.p
            and self.radius_exp == other.radius_exp
            and same_ball(self.center, other.center, self.radius_exp)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.radius_exp, self.canonical_center))

    def __contains__(self, x: RationalLike) -> bool:
        return same_ball(x, self.center, self.radius_exp, self.p)

    def measure(self) -> Fraction:
        return Fraction(self.p) ** self.radius_exp

    def issubset(self, other: "Ball") -> bool:
        return self.radius_exp <= other.radius_exp and self.center in other

    def isdisjoint(self, other: "Ball") -> bool:
        big = max(self.radius_exp, other.radius_exp)
        return not same_ball(self.center, other.center, big)

    def scaled(self, a: RationalLike) -> "Ball":
        """The image a * B, itself a ball of radius |a|_p * p^gamma."""
        a = _scalar(a, self.p)
        if a.value == 0:
            raise ValueError("cannot scale a ball by zero")
        return Ball(self.center * a, self.radius_exp - valuation(a))

    def __repr__(self) -> str:
        return f"Ball(B_{self.radius_exp}({self.center.value}), p={self.p})"


@dataclass(frozen=True)
class ShiftIndex:
    """An element m / p^gamma of the shift set I_p."""

    p: int
    m: int
    gamma: int

    def __post_init__(self):
        _check_prime(self.p)
        if self.gamma < 0:
            raise ValueError("shift scale must be >= 0")
        if self.gamma == 0:
            if self.m != 0:
                raise ValueError("the only shift of scale 0 is 0")
        elif not (0 < self.m < self.p ** self.gamma) or self.m % self.p == 0:
            raise ValueError(f"{self.m}/{self.p}^{self.gamma} is not a reduced shift")

    def __lt__(self, other: "ShiftIndex") -> bool:
        return (self.gamma, self.m) < (other.gamma, other.m)

    @classmethod
    def from_fraction(cls, a: RationalLike, p: int) -> "ShiftIndex":
        q = _as_fraction(a)
        if not (0 <= q < 1):
            raise ValueError(f"{q} is not in I_{p}")
        gamma = int_valuation(q.denominator, p)
        if q.denominator != p ** gamma:
            raise ValueError(f"{q} does not have a {p}-power denominator")
        return cls(p, q.numerator, gamma)

    @property
    def value(self) -> Fraction:
        return Fraction(self.m, self.p ** self.gamma)

    def scalar(self) -> PAdicScalar:
        return PAdicScalar(self.value, self.p)

    def __str__(self) -> str:
        return f"{self.m}/{self.p}^{self.gamma}"

    @classmethod
    def parse(cls, text: str) -> "ShiftIndex":
        m = re.fullmatch(r"\s*(\d+)/(\d+)\^(\d+)\s*", text)
        if m is None:
            raise ValueError(f"malformed shift index {text!r}")
        num, p, gamma = (int(g) for g in m.groups())
        return cls(p, num, gamma)


def enumerate_shifts(p: int, gamma_max: int) -> list[ShiftIndex]:
    """All of I_p with scale <= gamma_max, ascending in (gamma, m)."""
    _check_prime(p)
    out = [ShiftIndex(p, 0, 0)]
    for g in range(1, gamma_max + 1):
        out.extend(ShiftIndex(p, m, g) for m in range(1, p ** g) if m % p)
    return out
