"""Finite wavelet analysis and synthesis of locally constant functions.

A function constant on balls of radius p^l lies in V_J with J = -l, so its
expansion is finite.  Everything lives on a window B_R(0): at level j the
shifts a = n / p^(R+j), n < p^(R+j), are exactly the ones whose basis
function p^(j/2) phi(p^-j x - a) can meet B_R(0).  The refinement relation

    p^(j/2) phi(p^-j x - a) = p^(-1/2) sum_k beta_k p^((j+1)/2) phi(p^-(j+1) x - a/p - k/p^s)

turns one analysis step into a gather from level j+1 at indices
n + k p^(R+j+1-s), taken mod p^(R+j+1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import dft as _dft
from .exceptions import VerificationError
from .functions import LCFunction, dilate, inner_product, max_deviation, norm, refine, translate, trimmed
from .padic import TOL, ShiftIndex
from .refinement import two_scale
from .wavelets import WaveletSystem


def embedding_level(f: LCFunction, tol: float = TOL) -> int:
    """Smallest J with supp fourier(f) in B_J(0)."""
    return -trimmed(f, tol, support=False).constancy_exp


def _shift(n: int, p: int, exp: int) -> ShiftIndex:
    return ShiftIndex.from_fraction(Fraction(n, p ** exp), p)


def _shift_position(a: ShiftIndex, exp: int) -> int:
    if a.gamma > exp:
        raise ValueError(f"shift {a} does not fit the window")
    return a.m * a.p ** (exp - a.gamma)


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """Sparse coefficients of f in the basis {phi_(j_min, a)} + {psi_(j, nu, a) : j_min <= j < J}.

    ``wavelet`` is keyed by (j, nu, a) with nu = 1..p-1.  ``window_exp`` is
    the R of the computation; coefficient energies include dropped entries.
    """

    p: int
    s: int
    j_min: int
    J: int
    window_exp: int
    scaling: dict = field(default_factory=dict)
    wavelet: dict = field(default_factory=dict)
    input_energy: float = 0.0
    coefficient_energy: float = 0.0

    @property
    def energy_gap(self) -> float:
        return abs(self.input_energy - self.coefficient_energy)

    def rows(self):
        """(j, nu, a, value) sorted by (j, nu, a); scaling terms carry nu = 0."""
        out = [(self.j_min, 0, a, c) for a, c in sorted(self.scaling.items())]
        out += [(j, nu, a, c) for (j, nu, a), c in sorted(self.wavelet.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))]
        return out


def _finest_grid(phi: LCFunction, f_l: int, J: int) -> int:
    return min(f_l, phi.constancy_exp - J)


def _finest_coefficients(f: LCFunction, phi: LCFunction, J: int, R: int) -> np.ndarray:
    """(f, p^(J/2) phi(p^-J x - n/p^(R+J))) for n < p^(R+J)."""
    p = f.p
    L = _finest_grid(phi, f.constancy_exp, J)
    fv = refine(f, R, L).values
    hv = refine(dilate(phi, J), R, L).values
    corr = _dft.cyclic_correlation(fv, hv, p)
    return corr[: p ** (R + J)] * (float(Fraction(p) ** L) * p ** (J / 2))


def _finest_synthesis(c: np.ndarray, phi: LCFunction, J: int, R: int) -> LCFunction:
    p = phi.p
    L = min(-J, phi.constancy_exp - J)
    hv = refine(dilate(phi, J), R, L).values
    padded = np.zeros(hv.size, dtype=complex)
    padded[: c.size] = c
    return LCFunction(p, R, L, _dft.cyclic_convolution(padded, hv, p) * p ** (J / 2))


def _gather_index(p: int, s: int, R: int, j: int) -> np.ndarray:
    """Level-(j+1) indices n + k p^(R+j+1-s) mod p^(R+j+1) for each level-j index n."""
    size = p ** (R + j + 1)
    n = np.arange(p ** (R + j))[:, None]
    k = np.arange(p ** s)[None, :]
    return (n + k * p ** (R + j + 1 - s)) % size


def _filters(system: WaveletSystem) -> np.ndarray:
    """Rows beta, gamma_1, ..., gamma_(p-1), scaled by p^(-1/2)."""
    return np.vstack([system.beta[None, :], system.gamma]) / math.sqrt(system.p)


def _analysis(c: np.ndarray, system: WaveletSystem, R: int, J: int, j_min: int):
    p, s = system.p, system.s
    H = _filters(system).conj()
    details = {}
    for j in range(J - 1, j_min - 1, -1):
        out = c[_gather_index(p, s, R, j)] @ H.T
        c = out[:, 0]
        details[j] = out[:, 1:]
    return c, details


def _synthesis(c: np.ndarray, details: dict, system: WaveletSystem, R: int, J: int, j_min: int) -> np.ndarray:
    p, s = system.p, system.s
    H = _filters(system)
    for j in range(j_min, J):
        idx = _gather_index(p, s, R, j)
        coeffs = np.column_stack([c, details[j]])
        finer = np.zeros(p ** (R + j + 1), dtype=complex)
        np.add.at(finer, idx, coeffs @ H)
        c = finer
    return c


def _window(f: LCFunction, s: int, j_min: int) -> int:
    return max(f.support_exp, s - 1 - j_min)


def analyze(
    f: LCFunction,
    system: WaveletSystem,
    phi: LCFunction | None = None,
    j_min: int | None = None,
    tol: float = TOL,
    drop_tol: float | None = None,
) -> DecompositionResult:
    """Decompose f over levels j_min..J-1 plus the scaling part at j_min.

    phi must solve the refinement equation with the system's beta, and the
    result is cross-checked by reconstructing f from the full coefficient
    arrays; a failure of either check raises :class:`VerificationError`.
    """
    phi = system.phi if phi is None else phi
    if phi is None:
        raise ValueError("a scaling function is required")
    if f.p != system.p or phi.p != system.p:
        raise ValueError("prime mismatch")
    p, s = system.p, system.s
    drop_tol = tol if drop_tol is None else drop_tol
    f = trimmed(f, tol)
    phi = trimmed(phi, tol)
    mismatch = max_deviation(phi, two_scale(phi, system.beta, s))
    if mismatch >= tol:
        raise VerificationError(f"phi does not solve the system's refinement equation ({mismatch:.3g})", mismatch)
    J = -f.constancy_exp
    j_min = J if j_min is None else j_min
    if j_min > J:
        raise ValueError(f"j_min = {j_min} exceeds the embedding level {J}")
    R = _window(f, s, j_min)

    top = _finest_coefficients(f, phi, J, R)
    c, details = _analysis(top, system, R, J, j_min)

    rebuilt = _finest_synthesis(_synthesis(c, details, system, R, J, j_min), phi, J, R)
    residual = norm(rebuilt - f)
    if residual >= tol:
        raise VerificationError(f"reconstruction residual {residual:.3g} exceeds tolerance", residual)

    energy = float(np.sum(np.abs(c) ** 2)) + sum(float(np.sum(np.abs(d) ** 2)) for d in details.values())
    scaling = {_shift(n, p, R + j_min): complex(v) for n, v in enumerate(c) if abs(v) >= drop_tol}
    wavelet = {}
    for j, d in details.items():
        for n, nu in zip(*np.nonzero(np.abs(d) >= drop_tol)):
            wavelet[(j, int(nu) + 1, _shift(int(n), p, R + j))] = complex(d[n, nu])
    return DecompositionResult(
        p, s, j_min, J, R, scaling, wavelet,
        input_energy=inner_product(f, f).real,
        coefficient_energy=energy,
    )


def reconstruct(result: DecompositionResult, system: WaveletSystem, phi: LCFunction | None = None) -> LCFunction:
    """Sum of coefficient * basis function, as an LCFunction."""
    phi = system.phi if phi is None else phi
    if phi is None:
        raise ValueError("a scaling function is required")
    p, s, J, j_min = result.p, result.s, result.J, result.j_min
    if (p, s) != (system.p, system.s):
        raise ValueError("result and system disagree on (p, s)")
    phi = trimmed(phi)
    R = max(result.window_exp, s - 1 - j_min)
    c = np.zeros(p ** (R + j_min), dtype=complex)
    for a, v in result.scaling.items():
        c[_shift_position(a, R + j_min)] += v
    details = {j: np.zeros((p ** (R + j), p - 1), dtype=complex) for j in range(j_min, J)}
    for (j, nu, a), v in result.wavelet.items():
        details[j][_shift_position(a, R + j), nu - 1] += v
    return trimmed(_finest_synthesis(_synthesis(c, details, system, R, J, j_min), phi, J, R))


def fine_scale_decay(f: LCFunction, phi: LCFunction, j_list, tol: float = TOL) -> list[float]:
    """sum_a |(f, p^(j/2) phi(p^-j x - a))|^2 for each j in j_list."""
    f = trimmed(f, tol)
    phi = trimmed(phi, tol)
    p = f.p
    out = []
    for j in j_list:
        R = max(f.support_exp, phi.support_exp - j, -j)
        c = _finest_coefficients(f, phi, j, R)
        out.append(float(np.sum(np.abs(c) ** 2)))
    return out


def basis_function(system: WaveletSystem, phi: LCFunction, j: int, nu: int, a) -> LCFunction:
    """p^(j/2) psi_nu(p^-j x - a), with nu = 0 meaning phi; used as an inner-product oracle."""
    g = phi if nu == 0 else system.psi[nu - 1]
    a = a.value if isinstance(a, ShiftIndex) else Fraction(a)
    return translate(dilate(g, j), Fraction(system.p) ** j * a) * system.p ** (j / 2)


__all__ = [
    "DecompositionResult",
    "analyze",
    "basis_function",
    "embedding_level",
    "fine_scale_decay",
    "reconstruct",
]
