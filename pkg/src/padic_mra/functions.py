"""Locally constant, compactly supported functions on Q_p.

An :class:`LCFunction` with support exponent N and constancy exponent l is
zero outside B_N(0) and constant on every ball of radius p^l.  Its values
are stored densely: index m in [0, p^(N-l)) holds the value on the ball
B_l(m p^-N).  Under this indexing the grid B_N(0)/B_l(0) is the cyclic group
Z/p^(N-l), so translations are rolls and the Fourier transform is a DFT.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import dft as _dft
from .padic import (
    TOL,
    PAdicScalar,
    RationalLike,
    _as_fraction,
    int_valuation,
    residue,
    valuation,
)


@dataclass(frozen=True, eq=False)
class LCFunction:
    p: int
    support_exp: int
    constancy_exp: int
    values: np.ndarray

    def __post_init__(self):
        if self.constancy_exp > self.support_exp:
            raise ValueError("constancy exponent must not exceed support exponent")
        vals = np.array(self.values, dtype=complex).reshape(-1)
        if vals.size != self.size:
            raise ValueError(f"expected {self.size} values, got {vals.size}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def size(self) -> int:
        return self.p ** (self.support_exp - self.constancy_exp)

    @property
    def cell_measure(self) -> float:
        return float(Fraction(self.p) ** self.constancy_exp)

    def representative(self, m: int) -> Fraction:
        return Fraction(m) * Fraction(self.p) ** (-self.support_exp)

    def __call__(self, x: RationalLike) -> complex:
        return evaluate(self, x)

    def __add__(self, other: "LCFunction") -> "LCFunction":
        f, g = common_refinement(self, other)
        return _like(f, f.values + g.values)

    def __sub__(self, other: "LCFunction") -> "LCFunction":
        f, g = common_refinement(self, other)
        return _like(f, f.values - g.values)

    def __neg__(self) -> "LCFunction":
        return _like(self, -self.values)

    def __mul__(self, c: complex) -> "LCFunction":
        return _like(self, self.values * c)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return (
            f"LCFunction(p={self.p}, support_exp={self.support_exp}, "
            f"constancy_exp={self.constancy_exp}, size={self.size})"
        )


def _like(f: LCFunction, values) -> LCFunction:
    return LCFunction(f.p, f.support_exp, f.constancy_exp, values)


def zeros(p: int, support_exp: int, constancy_exp: int) -> LCFunction:
    return LCFunction(p, support_exp, constancy_exp, np.zeros(p ** (support_exp - constancy_exp)))


def indicator(p: int, radius_exp: int, center: RationalLike = 0) -> LCFunction:
    """Indicator of B_radius_exp(center)."""
    c = _as_fraction(center)
    N = radius_exp if c == 0 else max(radius_exp, -valuation(c, p))
    f = zeros(p, N, radius_exp)
    vals = np.zeros(f.size, dtype=complex)
    vals[_index(f, c)] = 1.0
    return _like(f, vals)


def omega(p: int) -> LCFunction:
    """Indicator of the unit ball B_0(0)."""
    return indicator(p, 0)


def random_lcfunction(rng: np.random.Generator, p: int, support_exp: int, constancy_exp: int) -> LCFunction:
    n = p ** (support_exp - constancy_exp)
    vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return LCFunction(p, support_exp, constancy_exp, vals)


def _index(f: LCFunction, x: Fraction) -> int | None:
    """Grid index of the cell containing x, or None outside B_N(0)."""
    if x == 0:
        return 0
    if valuation(x, f.p) < -f.support_exp:
        return None
    return residue(x * Fraction(f.p) ** f.support_exp, f.p, f.size)


def evaluate(f: LCFunction, x: RationalLike) -> complex:
    if isinstance(x, PAdicScalar) and x.p != f.p:
        raise ValueError(f"prime mismatch: {x.p} vs {f.p}")
    idx = _index(f, _as_fraction(x))
    return 0j if idx is None else complex(f.values[idx])


def refine(f: LCFunction, support_exp: int, constancy_exp: int) -> LCFunction:
    """Same function on the finer grid (support_exp >= N, constancy_exp <= l)."""
    if support_exp < f.support_exp or constancy_exp > f.constancy_exp:
        raise ValueError(
            f"cannot refine ({f.support_exp}, {f.constancy_exp}) to "
            f"({support_exp}, {constancy_exp})"
        )
    if (support_exp, constancy_exp) == (f.support_exp, f.constancy_exp):
        return f
    p = f.p
    n_new = p ** (support_exp - constancy_exp)
    stride = p ** (support_exp - f.support_exp)
    m = np.arange(n_new)
    inside = m % stride == 0
    vals = np.zeros(n_new, dtype=complex)
    vals[inside] = f.values[(m[inside] // stride) % f.size]
    return LCFunction(p, support_exp, constancy_exp, vals)


def coarsen(f: LCFunction, support_exp: int, constancy_exp: int, tol: float = TOL) -> LCFunction:
    """Inverse of :func:`refine`; raises if f is not representable on the coarser grid."""
    if support_exp > f.support_exp or constancy_exp < f.constancy_exp or constancy_exp > support_exp:
        raise ValueError("target grid is not coarser")
    stop = f.p ** (f.support_exp - constancy_exp)
    stride = f.p ** (f.support_exp - support_exp)
    g = LCFunction(f.p, support_exp, constancy_exp, f.values[:stop:stride])
    if max_deviation(f, g) > tol:
        raise ValueError("function is not constant on the requested grid")
    return g


def trimmed(f: LCFunction, tol: float = TOL, support: bool = True, constancy: bool = True) -> LCFunction:
    """Smallest support exponent and largest constancy exponent, up to ``tol``."""
    p = f.p
    N, l, vals = f.support_exp, f.constancy_exp, f.values
    if support:
        while N > l:
            # cells with m % p != 0 make up the outer shell |x| = p^N
            shell = vals.reshape(-1, p)[:, 1:]
            if shell.size and np.max(np.abs(shell)) > tol:
                break
            vals = vals[::p]
            N -= 1
    if constancy:
        while l < N:
            rows = vals.reshape(p, -1)
            if np.max(np.abs(rows - rows[0])) > tol:
                break
            vals = rows[0]
            l += 1
    return LCFunction(p, N, l, vals)


def common_refinement(*fs: LCFunction) -> tuple[LCFunction, ...]:
    p = fs[0].p
    if any(g.p != p for g in fs):
        raise ValueError("functions live over different primes")
    N = max(g.support_exp for g in fs)
    l = min(g.constancy_exp for g in fs)
    return tuple(refine(g, N, l) for g in fs)


def linear_combination(coeffs, functions) -> LCFunction:
    fs = common_refinement(*functions)
    vals = sum(c * g.values for c, g in zip(coeffs, fs))
    return _like(fs[0], vals)


def roll_amount(p: int, support_exp: int, constancy_exp: int, b: Fraction) -> int:
    """The roll amount implementing x -> x - b on a grid containing b."""
    if b == 0:
        return 0
    return residue(b * Fraction(p) ** support_exp, p, p ** (support_exp - constancy_exp))


def translate(f: LCFunction, b: RationalLike) -> LCFunction:
    """x -> f(x - b)."""
    b = _as_fraction(b)
    if b == 0:
        return f
    N = max(f.support_exp, -valuation(b, f.p))
    g = refine(f, N, f.constancy_exp)
    return _like(g, np.roll(g.values, roll_amount(f.p, N, f.constancy_exp, b)))


def dilate(f: LCFunction, j: int) -> LCFunction:
    """x -> f(p^-j x).  Since |p^-j x|_p = p^j |x|_p, both exponents drop by j."""
    return LCFunction(f.p, f.support_exp - j, f.constancy_exp - j, f.values)


def dilate_normalized(f: LCFunction, j: int) -> LCFunction:
    """x -> p^(j/2) f(p^-j x), an isometry of L^2."""
    return dilate(f, j) * f.p ** (j / 2)


def character_phases(a: Fraction, p: int, support_exp: int, m: np.ndarray) -> np.ndarray:
    """Exact fractional parts {a * m p^-N}_p as floats in [0, 1)."""
    A = a * Fraction(p) ** (-support_exp)
    if A == 0:
        return np.zeros(m.shape)
    k = int_valuation(A.denominator, p)
    if k == 0:
        return np.zeros(m.shape)
    pk = p ** k
    unit = A.denominator // pk
    c = A.numerator * pow(unit, -1, pk) % pk
    if pk < 2 ** 31:
        t = (c * (m.astype(np.int64) % pk)) % pk
    else:
        t = np.array([c * int(mi) % pk for mi in m], dtype=object)
    return np.asarray(t, dtype=float) / pk


def modulate(f: LCFunction, a: RationalLike) -> LCFunction:
    """x -> chi_p(a x) f(x).

    chi_p(a x) is constant on balls of radius |a|_p^-1 = p^v(a), so the
    constancy exponent becomes min(l, v(a)).
    """
    a = _as_fraction(a)
    if a == 0:
        return f
    l = min(f.constancy_exp, valuation(a, f.p))
    g = refine(f, f.support_exp, l)
    phase = character_phases(a, f.p, g.support_exp, np.arange(g.size))
    return _like(g, g.values * np.exp(2j * np.pi * phase))


def inner_product(f: LCFunction, g: LCFunction) -> complex:
    """Integral of f * conj(g) against Haar measure (unit ball has measure 1)."""
    f, g = common_refinement(f, g)
    return complex(np.vdot(g.values, f.values) * f.cell_measure)


def norm(f: LCFunction) -> float:
    return math.sqrt(max(inner_product(f, f).real, 0.0))


def max_deviation(f: LCFunction, g: LCFunction) -> float:
    f, g = common_refinement(f, g)
    if f.size == 0:
        return 0.0
    return float(np.max(np.abs(f.values - g.values)))


def allclose(f: LCFunction, g: LCFunction, tol: float = TOL) -> bool:
    return max_deviation(f, g) < tol


def fourier(f: LCFunction) -> LCFunction:
    """F[f](xi) = integral of chi_p(xi x) f(x) dx.

    The transform of a function on the grid (N, l) lives on (-l, -N) and
    its value at m' p^l is p^l * sum_m f_m exp(2 pi i m m' / p^(N-l)).
    """
    scale = f.cell_measure
    return LCFunction(f.p, -f.constancy_exp, -f.support_exp, _dft.dft(f.values, f.p) * scale)


def inverse_fourier(g: LCFunction) -> LCFunction:
    scale = g.cell_measure
    return LCFunction(g.p, -g.constancy_exp, -g.support_exp, _dft.dft(g.values, g.p, sign=-1) * scale)


def fourier_naive(f: LCFunction) -> LCFunction:
    """O(n^2) reference for :func:`fourier`."""
    return LCFunction(f.p, -f.constancy_exp, -f.support_exp, _dft.dft_naive(f.values) * f.cell_measure)


__all__ = [
    "LCFunction",
    "allclose",
    "coarsen",
    "common_refinement",
    "dilate",
    "dilate_normalized",
    "evaluate",
    "fourier",
    "fourier_naive",
    "indicator",
    "inner_product",
    "inverse_fourier",
    "linear_combination",
    "max_deviation",
    "modulate",
    "norm",
    "omega",
    "random_lcfunction",
    "refine",
    "translate",
    "trimmed",
    "zeros",
]
