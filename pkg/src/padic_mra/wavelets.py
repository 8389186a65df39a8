"""Wavelet functions from a scaling function by unitary completion.

With B = beta / sqrt(p) and S the cyclic down-shift on C^(p^s), the wavelet
coefficient vectors G_1..G_{p-1} must make

    U = (B, SB, ..., S^(q-1) B, G_1, ..., S^(q-1) G_1, ..., S^(q-1) G_{p-1}),   q = p^(s-1),

unitary.  Each wavelet is then psi_nu(x) = sum_k gamma_{nu k} phi(x/p - k/p^s)
with gamma_nu = sqrt(p) G_nu.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import VerificationError
from .functions import LCFunction, modulate, omega
from .padic import TOL
from .refinement import Mask, gram_deviation, shift_stack, two_scale


def shift_operator(n: int) -> np.ndarray:
    """The n x n cyclic down-shift: (S v)[i] = v[i-1]."""
    return np.roll(np.eye(n), 1, axis=0)


def orbit(v: np.ndarray, count: int) -> np.ndarray:
    """Columns S^0 v, ..., S^(count-1) v."""
    return np.column_stack([np.roll(v, i) for i in range(count)])


@dataclass(frozen=True, eq=False)
class OrbitSystem:
    p: int
    s: int
    B: np.ndarray
    gram_deviation: float

    @property
    def orbit_length(self) -> int:
        return self.p ** (self.s - 1)

    def columns(self) -> np.ndarray:
        return orbit(self.B, self.orbit_length)

    def periodicity_deviation(self) -> float:
        """How far B is from depending on k mod p^(s-1) only."""
        rows = self.B.reshape(self.p, -1)
        return float(np.max(np.abs(rows - rows[0])))


def orbit_system_from_mask(mask: Mask, tol: float = TOL) -> OrbitSystem:
    B = mask.beta / math.sqrt(mask.p)
    C = orbit(B, mask.p ** (mask.s - 1))
    dev = gram_deviation(C.conj().T @ C)
    if dev >= tol:
        raise VerificationError(f"shift orbit of B is not orthonormal (deviation {dev:.3g})", dev)
    return OrbitSystem(mask.p, mask.s, B, dev)


def assemble_and_verify_U(orb: OrbitSystem, Gs) -> tuple[np.ndarray, float]:
    """U in column order (orbit of B, orbit of G_1, ...) and max |U* U - I|."""
    q = orb.orbit_length
    blocks = [orb.columns()] + [orbit(np.asarray(G, dtype=complex), q) for G in Gs]
    U = np.hstack(blocks)
    if U.shape[0] != U.shape[1]:
        raise ValueError(f"U has shape {U.shape}; expected p - 1 = {orb.p - 1} vectors G")
    return U, gram_deviation(U.conj().T @ U)


def canonical_completion(p: int, s: int) -> list[np.ndarray]:
    """G_nu carries the nu-th size-p DFT row on the lattice {r p^(s-1)}."""
    q = p ** (s - 1)
    r = np.arange(p)
    Gs = []
    for nu in range(1, p):
        G = np.zeros(p ** s, dtype=complex)
        G[r * q] = np.exp(2j * np.pi * ((nu * r) % p) / p) / math.sqrt(p)
        Gs.append(G)
    return Gs


def complete_to_unitary(orb: OrbitSystem, tol: float = TOL) -> list[np.ndarray]:
    """Canonical completion, verified by assembling U.

    The S^j G_nu occupy disjoint residues mod p^(s-1), and against a
    p^(s-1)-periodic B each cross term is a DFT row summed against a
    constant, hence zero.
    """
    per = orb.periodicity_deviation()
    if per >= tol:
        raise VerificationError(f"B is not p^(s-1)-periodic (deviation {per:.3g})", per)
    Gs = canonical_completion(orb.p, orb.s)
    _, dev = assemble_and_verify_U(orb, Gs)
    if dev >= tol:
        raise VerificationError(f"completed U is not unitary (deviation {dev:.3g})", dev)
    return Gs


def accept_completion(orb: OrbitSystem, Gs, tol: float = TOL) -> list[np.ndarray]:
    """Use caller-supplied G vectors if and only if they complete U to a unitary matrix."""
    Gs = [np.asarray(G, dtype=complex) for G in Gs]
    if len(Gs) != orb.p - 1:
        raise ValueError(f"need {orb.p - 1} vectors, got {len(Gs)}")
    _, dev = assemble_and_verify_U(orb, Gs)
    if dev >= tol:
        raise VerificationError(f"supplied completion is not unitary (deviation {dev:.3g})", dev)
    return Gs


def normalize_completion(Gs) -> list[np.ndarray]:
    return [np.asarray(G, dtype=complex) / np.linalg.norm(G) for G in Gs]


def fallback_completion(orb: OrbitSystem, tol: float = TOL) -> tuple[np.ndarray, float, bool]:
    """Extend the orbit columns to a unitary matrix by Householder QR.

    The extra columns carry no shift structure in general; ``conforming``
    reports whether reading G_nu off the first column of each block happens
    to reproduce a unitary orbit matrix.
    """
    C = orb.columns()
    Q, _ = np.linalg.qr(C, mode="complete")
    q = orb.orbit_length
    U = np.hstack([C, Q[:, q:]])
    dev = gram_deviation(U.conj().T @ U)
    Gs = [U[:, q * nu] for nu in range(1, orb.p)]
    _, orbit_dev = assemble_and_verify_U(orb, Gs)
    return U, dev, orbit_dev < tol


@dataclass(frozen=True, eq=False)
class WaveletSystem:
    p: int
    s: int
    beta: np.ndarray
    gamma: np.ndarray
    U: np.ndarray
    psi: tuple[LCFunction, ...]
    phi: LCFunction | None = field(default=None)

    @property
    def Gs(self) -> list[np.ndarray]:
        return [g / math.sqrt(self.p) for g in self.gamma]


def build_wavelets(phi: LCFunction, orb: OrbitSystem, Gs) -> WaveletSystem:
    p, s = orb.p, orb.s
    if phi.p != p:
        raise ValueError("prime mismatch")
    Gs = [np.asarray(G, dtype=complex) for G in Gs]
    gamma = np.array([math.sqrt(p) * G for G in Gs])
    psi = tuple(two_scale(phi, g, s) for g in gamma)
    U, _ = assemble_and_verify_U(orb, Gs)
    return WaveletSystem(p, s, orb.B * math.sqrt(p), gamma, U, psi, phi)


@dataclass(frozen=True)
class WaveletGramReport:
    orthogonality_deviation: float
    orthonormality_deviation: float

    @property
    def deviation(self) -> float:
        return max(self.orthogonality_deviation, self.orthonormality_deviation)

    def passed(self, tol: float = TOL) -> bool:
        return self.deviation < tol


def _stacks(system: WaveletSystem, phi: LCFunction):
    fs = [phi, *system.psi]
    l = min(f.constancy_exp for f in fs)
    stacks = [shift_stack(f, system.s, system.s - 1, l) for f in fs]
    return stacks, float(Fraction(system.p) ** l)


def wavelet_gram(system: WaveletSystem, phi: LCFunction | None = None) -> WaveletGramReport:
    """(psi_nu, phi(. - a)) = 0 and (psi_nu, psi_mu(. - a)) = delta for a = k/p^(s-1).

    Shifts outside B_{s-1}(0) separate the supports and need no check.
    """
    phi = system.phi if phi is None else phi
    (phi_stack, *psi_stacks), cell = _stacks(system, phi)
    ortho = 0.0
    normal = 0.0
    q = phi_stack.shape[0]
    for nu, A in enumerate(psi_stacks):
        ortho = max(ortho, float(np.max(np.abs(phi_stack.conj() @ A[0]))) * cell)
        for mu, C in enumerate(psi_stacks):
            row = (C.conj() @ A[0]) * cell
            target = np.zeros(q)
            if nu == mu:
                target[0] = 1
            normal = max(normal, float(np.max(np.abs(row - target))))
    return WaveletGramReport(ortho, normal)


def level_gram(system: WaveletSystem, phi: LCFunction | None = None) -> np.ndarray:
    """Gram of all p^s shifts {phi, psi_1, ..., psi_{p-1}}(x - k/p^(s-1))."""
    phi = system.phi if phi is None else phi
    stacks, cell = _stacks(system, phi)
    A = np.vstack(stacks)
    return (A @ A.conj().T) * cell


def kozyrev_closed_form(p: int) -> WaveletSystem:
    """psi_nu(x) = chi_p(nu x / p) Omega(|x|_p), nu = 1..p-1, with phi = Omega."""
    k = np.arange(p)
    gamma = np.array([np.exp(2j * np.pi * ((nu * k) % p) / p) for nu in range(1, p)])
    beta = np.ones(p, dtype=complex)
    orb = OrbitSystem(p, 1, beta / math.sqrt(p), 0.0)
    U, _ = assemble_and_verify_U(orb, [g / math.sqrt(p) for g in gamma])
    psi = tuple(modulate(omega(p), Fraction(nu, p)) for nu in range(1, p))
    return WaveletSystem(p, 1, beta, gamma, U, psi, omega(p))


__all__ = [
    "OrbitSystem",
    "WaveletGramReport",
    "WaveletSystem",
    "accept_completion",
    "assemble_and_verify_U",
    "build_wavelets",
    "canonical_completion",
    "complete_to_unitary",
    "fallback_completion",
    "kozyrev_closed_form",
    "level_gram",
    "normalize_completion",
    "orbit",
    "orbit_system_from_mask",
    "shift_operator",
    "wavelet_gram",
]
