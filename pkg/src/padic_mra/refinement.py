"""Masks, refinable functions, and the checks that make them scaling functions.

A mask of order s is the trigonometric polynomial

    m0(xi) = (1/p) * sum_{k < p^s} beta_k chi_p(k xi),

and the refinable function it defines has Fourier transform

    phi_hat(xi) = prod_{j >= 1} m0(xi / p^(s-j)),

a finite product at every point because m0 = m0(0) = 1 on Z_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import dft as _dft
from .exceptions import MaskInfeasibleError, SupportCapError
from .functions import (
    LCFunction,
    dilate,
    inverse_fourier,
    linear_combination,
    max_deviation,
    refine,
    translate,
    trimmed,
)
from .padic import TOL, RationalLike, _as_fraction, fractional_part, is_prime, valuation


@dataclass(frozen=True, eq=False)
class Mask:
    """Both faces of m0: the coefficients beta and the table m0(l / p^s)."""

    p: int
    s: int
    beta: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if not is_prime(self.p) or self.s < 1:
            raise ValueError(f"invalid mask parameters p={self.p}, s={self.s}")
        n = self.p ** self.s
        for name in ("beta", "values"):
            arr = np.array(getattr(self, name), dtype=complex).reshape(-1)
            if arr.size != n:
                raise ValueError(f"{name} must have {n} entries, got {arr.size}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def size(self) -> int:
        return self.p ** self.s

    def __call__(self, xi: RationalLike) -> complex:
        return mask_value(self, xi)


def mask_from_values(p: int, s: int, values) -> Mask:
    """Coefficients beta from the table m0(l / p^s), l = 0..p^s-1."""
    values = np.asarray(values, dtype=complex)
    beta = _dft.dft(values, p, sign=-1) * p / p ** s
    return Mask(p, s, beta, values)


def mask_from_beta(p: int, s: int, beta) -> Mask:
    beta = np.asarray(beta, dtype=complex)
    return Mask(p, s, beta, _dft.dft(beta, p) / p)


def haar_mask(p: int) -> Mask:
    """s = 1, m0(0) = 1 and m0(k/p) = 0 otherwise; beta_k = 1."""
    values = np.zeros(p, dtype=complex)
    values[0] = 1
    return mask_from_values(p, 1, values)


def mask_table(mask: Mask, K: int) -> np.ndarray:
    """m0(t / p^K) for t = 0..p^K-1."""
    p, n = mask.p, mask.size
    if K >= mask.s:
        padded = np.zeros(p ** K, dtype=complex)
        padded[:n] = mask.beta
    else:
        # chi_p(k t / p^K) only sees k mod p^K
        padded = mask.beta.reshape(-1, p ** K).sum(axis=0)
    return _dft.dft(padded, p) / p


def mask_value(mask: Mask, xi: RationalLike) -> complex:
    r = fractional_part(_as_fraction(xi), mask.p)
    k = np.arange(mask.size)
    phase = (k * r.numerator % r.denominator) / r.denominator
    return complex(np.sum(mask.beta * np.exp(2j * np.pi * phase)) / mask.p)


@dataclass(frozen=True)
class MaskValidationReport:
    normalization_deviation: float
    zero_deviation: float
    unimodularity_deviation: float
    tolerance: float = TOL

    @property
    def normalized(self) -> bool:
        return self.normalization_deviation < self.tolerance

    @property
    def zeros_ok(self) -> bool:
        return self.zero_deviation < self.tolerance

    @property
    def unimodular(self) -> bool:
        return self.unimodularity_deviation < self.tolerance

    @property
    def passed(self) -> bool:
        return self.normalized and self.zeros_ok and self.unimodular

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "normalized": self.normalized,
            "zeros_ok": self.zeros_ok,
            "unimodular": self.unimodular,
            "normalization_deviation": self.normalization_deviation,
            "zero_deviation": self.zero_deviation,
            "unimodularity_deviation": self.unimodularity_deviation,
            "tolerance": self.tolerance,
        }


def validate_mask(mask: Mask, tol: float = TOL) -> MaskValidationReport:
    """m0(0) = 1, m0 vanishes at k/p^s for p not dividing k, |m0| = 1 at the other k != 0."""
    v = mask.values
    k = np.arange(mask.size)
    off = k % mask.p != 0
    multiples = (~off) & (k != 0)
    zero_dev = float(np.max(np.abs(v[off]))) if off.any() else 0.0
    uni_dev = float(np.max(np.abs(np.abs(v[multiples]) - 1))) if multiples.any() else 0.0
    return MaskValidationReport(float(abs(v[0] - 1)), zero_dev, uni_dev, tol)


def build_phi_hat(mask: Mask, m_max: int | None = None, tol: float = TOL, truncate: bool = False) -> LCFunction:
    """phi_hat on B_{m_max}(0), constant on balls of radius p^(1-s).

    phi_hat(xi) = m0(xi / p^(s-1)) phi_hat(p xi), so once phi_hat vanishes on
    the sphere |xi| = p^m_max it vanishes on every larger sphere too; that
    sphere is checked and a :class:`SupportCapError` raised if it is not
    zero.  With ``truncate=True`` the function restricted to B_{m_max}(0) is
    returned instead.  Vanishing outer shells are trimmed.
    """
    p, s = mask.p, mask.s
    if m_max is None:
        m_max = s + 2
    if abs(mask.values[0] - 1) >= tol:
        raise ValueError(f"m0(0) = {mask.values[0]} is not 1")
    N, l = m_max, 1 - s
    if N < l:
        raise ValueError(f"m_max must be >= {l}")
    n = p ** (N - l)
    m = np.arange(n)
    vals = np.ones(n, dtype=complex)
    for j in range(1, N + s):
        K = N + s - j
        table = mask_table(mask, K)
        table[0] = 1.0
        vals *= table[m % p ** K]
    if N > l:
        shell = np.max(np.abs(vals.reshape(-1, p)[:, 1:]))
        if shell > tol and not truncate:
            raise SupportCapError(
                f"phi_hat does not vanish on |xi|_p = {p}^{N} (max {shell:.3g})", float(shell)
            )
    return trimmed(LCFunction(p, N, l, vals), tol, constancy=False)


def build_phi(mask: Mask, m_max: int | None = None, tol: float = TOL, truncate: bool = False) -> LCFunction:
    """The refinable function itself, supported in B_{s-1}(0).

    For masks passing :func:`validate_mask` the result is constant on unit
    balls; probe masks whose phi_hat reaches beyond B_0(0) give finer
    constancy.
    """
    return inverse_fourier(build_phi_hat(mask, m_max, tol, truncate))


def two_scale(phi: LCFunction, coeffs, s: int) -> LCFunction:
    """x -> sum_k c_k phi(x/p - k/p^s), k = 0..p^s-1."""
    half = dilate(phi, 1)
    step = Fraction(1, phi.p ** (s - 1))
    coeffs = np.asarray(coeffs, dtype=complex)
    return linear_combination(coeffs, [translate(half, k * step) for k in range(coeffs.size)])


def refinement_rhs(phi: LCFunction, mask: Mask) -> LCFunction:
    return two_scale(phi, mask.beta, mask.s)


def refinement_residual(phi: LCFunction, mask: Mask) -> float:
    if phi.p != mask.p:
        raise ValueError("prime mismatch")
    return max_deviation(phi, refinement_rhs(phi, mask))


def shift_stack(f: LCFunction, s: int, support_exp: int | None = None, constancy_exp: int | None = None) -> np.ndarray:
    """Rows are f(x - k/p^(s-1)), k = 0..p^(s-1)-1, on the grid B_{s-1}(0)/B_l(0).

    On that grid the shift by k/p^(s-1) is a roll by k.
    """
    N = s - 1 if support_exp is None else support_exp
    l = f.constancy_exp if constancy_exp is None else constancy_exp
    g = refine(f, N, l)
    count = f.p ** (s - 1)
    base = np.arange(g.size)
    idx = (base[None, :] - np.arange(count)[:, None] * f.p ** (N - s + 1)) % g.size
    return g.values[idx]


def _checked_support(phi: LCFunction, s: int, tol: float) -> LCFunction:
    t = trimmed(phi, tol, constancy=False)
    if t.support_exp > s - 1:
        raise ValueError(f"support exponent {t.support_exp} exceeds s-1 = {s - 1}")
    return t


def shift_gram(phi: LCFunction, s: int, tol: float = TOL) -> np.ndarray:
    """Gram matrix of phi(x - j/p^(s-1)), phi(x - k/p^(s-1)).

    Every other shift a in I_p has |a|_p > p^(s-1) and moves the support
    B_{s-1}(0) off itself, so identity here certifies orthonormality of the
    whole shift system.
    """
    phi = _checked_support(phi, s, tol)
    A = shift_stack(phi, s)
    return (A @ A.conj().T) * float(Fraction(phi.p) ** phi.constancy_exp)


def gram_deviation(G: np.ndarray) -> float:
    return float(np.max(np.abs(G - np.eye(G.shape[0]))))


def check_union_density(phi_hat: LCFunction, tol: float = TOL) -> bool:
    """|phi_hat| > tol on all of B_0(0): then the dilates of supp phi_hat cover Q_p."""
    t = trimmed(phi_hat, tol, constancy=False)
    if t.support_exp > 0:
        raise ValueError("phi_hat is not supported in B_0(0)")
    g = refine(t, 0, min(t.constancy_exp, 0))
    return bool(np.all(np.abs(g.values) > tol))


def solve_mask_constraints(
    p: int,
    s: int,
    zero_points,
    value_constraints=(),
    tol: float = TOL,
) -> Mask:
    """Least-norm beta with m0(0) = 1, m0(xi) = 0 at ``zero_points`` and m0(xi) = v
    for each (xi, v) in ``value_constraints``.

    Raises :class:`MaskInfeasibleError` when the system has no solution
    within ``tol``.
    """
    points = [Fraction(0)] + [_as_fraction(x) for x in zero_points]
    targets = [1.0] + [0.0] * len(zero_points)
    for xi, v in value_constraints:
        points.append(_as_fraction(xi))
        targets.append(complex(v))
    if len(points) > p ** s:
        raise ValueError(f"{len(points)} constraints exceed the {p ** s} coefficients")
    k = np.arange(p ** s)
    rows = []
    for xi in points:
        r = fractional_part(xi, p)
        rows.append(np.exp(2j * np.pi * (k * r.numerator % r.denominator) / r.denominator) / p)
    A = np.array(rows)
    b = np.array(targets, dtype=complex)
    beta, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.max(np.abs(A @ beta - b)))
    if residual >= tol:
        raise MaskInfeasibleError(f"constraints are inconsistent (residual {residual:.3g})", residual)
    return mask_from_beta(p, s, beta)


def random_valid_mask(rng: np.random.Generator, p: int, s: int) -> Mask:
    """m0(0) = 1, zeros off the multiples of p, uniform random phases on the multiples."""
    n = p ** s
    values = np.zeros(n, dtype=complex)
    values[0] = 1
    mult = np.arange(p, n, p)
    values[mult] = np.exp(2j * np.pi * rng.random(mult.size))
    return mask_from_values(p, s, values)


def perturbed_mask(rng: np.random.Generator, p: int, s: int, condition: str, delta: float = 0.1) -> Mask:
    """A random valid mask with one condition broken by ``delta`` at one node.

    ``condition`` is ``"zeros"`` (m0 = delta e^{i theta} at a non-multiple of p)
    or ``"unimodular"`` (|m0| = 1 +- delta at a nonzero multiple of p).
    """
    values = np.array(random_valid_mask(rng, p, s).values)
    n = p ** s
    if condition == "zeros":
        off = [k for k in range(n) if k % p]
        k = off[rng.integers(len(off))]
        values[k] = delta * np.exp(2j * np.pi * rng.random())
    elif condition == "unimodular":
        mult = list(range(p, n, p))
        if not mult:
            raise ValueError("s = 1 masks have no nonzero multiples of p")
        k = mult[rng.integers(len(mult))]
        values[k] *= 1 + delta * (1 if rng.random() < 0.5 else -1)
    else:
        raise ValueError(f"unknown condition {condition!r}")
    return mask_from_values(p, s, values)


def phi_hat_product(mask: Mask, xi: RationalLike) -> complex:
    """Pointwise product formula evaluated with exact p-adic arithmetic."""
    xi = _as_fraction(xi)
    if xi == 0:
        return 1.0 + 0j
    m = -valuation(xi, mask.p)
    out = 1.0 + 0j
    for j in range(1, max(m + mask.s, 1)):
        out *= mask_value(mask, xi * Fraction(mask.p) ** (j - mask.s))
    return out


__all__ = [
    "Mask",
    "MaskValidationReport",
    "build_phi",
    "build_phi_hat",
    "check_union_density",
    "gram_deviation",
    "haar_mask",
    "mask_from_beta",
    "mask_from_values",
    "mask_table",
    "mask_value",
    "perturbed_mask",
    "phi_hat_product",
    "random_valid_mask",
    "refinement_residual",
    "refinement_rhs",
    "shift_gram",
    "shift_stack",
    "solve_mask_constraints",
    "two_scale",
    "validate_mask",
]
