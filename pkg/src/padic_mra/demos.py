"""End-to-end scenarios checked against embedded golden tables.

Each demo returns a :class:`DemoResult` whose checks record the observed
deviation next to the tolerance it must meet.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .functions import LCFunction, evaluate, max_deviation, omega, trimmed
from .padic import TOL, character
from .refinement import (
    build_phi,
    build_phi_hat,
    gram_deviation,
    haar_mask,
    mask_from_values,
    refinement_residual,
    shift_gram,
    solve_mask_constraints,
    validate_mask,
)
from .transform import analyze, reconstruct
from .wavelets import (
    accept_completion,
    assemble_and_verify_U,
    build_wavelets,
    complete_to_unitary,
    kozyrev_closed_form,
    normalize_completion,
    orbit_system_from_mask,
    wavelet_gram,
)

R32 = math.sqrt(1.5)
R2 = math.sqrt(2)

# p = 3, s = 2: m0 at l/9, zero off multiples of 3
THREEADIC_MASK_VALUES = [1, 0, 0, -1, 0, 0, -1, 0, 0]
THREEADIC_BETA = [Fraction(-1, 3), Fraction(2, 3), Fraction(2, 3)] * 3
# (center, radius exponent, value); each function vanishes outside the listed balls
THREEADIC_PHI_HAT = [("0", -1, 1), ("1", -1, -1), ("2", -1, -1)]
THREEADIC_PHI = [("0", 0, Fraction(-1, 3)), ("1/3", 0, Fraction(2, 3)), ("2/3", 0, Fraction(2, 3))]
THREEADIC_PSI = [
    [("0", -1, -R32), ("1", -1, R32), ("2", -1, 0)],
    [("0", -1, -1 / R2), ("1", -1, -1 / R2), ("2", -1, R2)],
]
# Completion as printed, before normalization; the second vector has norm
# sqrt(2) times the first's, so both are rescaled to unit norm.
THREEADIC_COMPLETION = [
    [1, 0, 0, -1, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, -2, 0, 0],
]
THREEADIC_OMEGA_COEFFS = {Fraction(0): Fraction(-1, 3), Fraction(1, 3): Fraction(2, 3), Fraction(2, 3): Fraction(2, 3)}

COUNTEREXAMPLE_P, COUNTEREXAMPLE_S = 2, 3
COUNTEREXAMPLE_ZEROS = [Fraction(1, 4), Fraction(3, 8), Fraction(7, 16), Fraction(15, 16)]
COUNTEREXAMPLE_PHI_HAT_SUPPORT = 1
COUNTEREXAMPLE_GRAM_DEVIATION = 0.7222997533764595


@dataclass(frozen=True)
class Check:
    label: str
    deviation: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {"label": self.label, "deviation": self.deviation, "tolerance": self.tolerance, "passed": self.passed}


@dataclass
class DemoResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def below(self, label: str, deviation: float, tol: float) -> float:
        self.checks.append(Check(label, float(deviation), tol, bool(deviation < tol)))
        return deviation

    def at_least(self, label: str, value: float, bound: float) -> float:
        self.checks.append(Check(label, float(value), bound, bool(value >= bound)))
        return value

    def as_dict(self) -> dict:
        return {
            "demo": self.name,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "details": self.details,
        }


def table_deviation(f: LCFunction, table, support_exp: int, tol: float = TOL) -> float:
    """Worst mismatch between f and a ball table, including f's support bound."""
    # f must be constant on each listed ball for a table to describe it
    if trimmed(f, tol, support=False).constancy_exp < min(r for _, r, _ in table):
        return math.inf
    dev = max(abs(evaluate(f, Fraction(c)) - complex(v)) for c, _, v in table)
    t = trimmed(f, tol, constancy=False)
    if t.support_exp > support_exp:
        dev = max(dev, float(np.max(np.abs(t.values))))
    return float(dev)


def kozyrev(primes=(2, 3, 5), tol: float = TOL) -> DemoResult:
    """Haar mask to Kozyrev wavelets chi_p(nu x / p) Omega(|x|_p)."""
    out = DemoResult("kozyrev")
    for p in primes:
        mask = haar_mask(p)
        out.below(f"p={p} beta = 1", float(np.max(np.abs(mask.beta - 1))), tol)
        phi = build_phi(mask, tol=tol)
        out.below(f"p={p} phi = Omega", max_deviation(phi, omega(p)), tol)
        orb = orbit_system_from_mask(mask, tol)
        system = build_wavelets(phi, orb, complete_to_unitary(orb, tol))
        out.below(f"p={p} U unitary", assemble_and_verify_U(orb, system.Gs)[1], tol)
        out.below(f"p={p} wavelet Gram", wavelet_gram(system).deviation, tol)
        dev = 0.0
        for nu, psi in enumerate(system.psi, start=1):
            # golden values: psi_nu = chi_p(nu r / p) on B_{-1}(r), r = 0..p-1
            table = [(str(r), -1, character(Fraction(nu * r, p), p)) for r in range(p)]
            dev = max(dev, table_deviation(psi, table, 0, tol))
        out.below(f"p={p} psi golden table", dev, tol)
        closed = kozyrev_closed_form(p)
        out.below(
            f"p={p} psi = closed form",
            max(max_deviation(a, b) for a, b in zip(system.psi, closed.psi)),
            tol,
        )
    return out


def threeadic_system(tol: float = TOL):
    """Mask, phi, and the wavelet system with the normalized printed completion."""
    mask = mask_from_values(3, 2, THREEADIC_MASK_VALUES)
    phi = build_phi(mask, tol=tol)
    orb = orbit_system_from_mask(mask, tol)
    Gs = accept_completion(orb, normalize_completion(THREEADIC_COMPLETION), tol)
    return mask, phi, build_wavelets(phi, orb, Gs)


def threeadic(tol: float = TOL) -> DemoResult:
    out = DemoResult("threeadic")
    mask, phi, system = threeadic_system(tol)
    beta = np.array([float(b) for b in THREEADIC_BETA])
    out.below("beta", float(np.max(np.abs(mask.beta - beta))), 1e-12)
    out.below("mask valid", 0.0 if validate_mask(mask, tol).passed else 1.0, 0.5)
    out.below("phi_hat table", table_deviation(build_phi_hat(mask, tol=tol), THREEADIC_PHI_HAT, 0, tol), tol)
    out.below("phi table", table_deviation(phi, THREEADIC_PHI, 1, tol), tol)
    out.below("refinement residual", refinement_residual(phi, mask), tol)
    out.below("shift Gram", gram_deviation(shift_gram(phi, 2, tol)), tol)
    out.below("U unitary", float(gram_deviation(system.U.conj().T @ system.U)), tol)
    for nu, table in enumerate(THREEADIC_PSI, start=1):
        out.below(f"psi{nu} table", table_deviation(system.psi[nu - 1], table, 0, tol), tol)
    out.below("wavelet Gram", wavelet_gram(system).deviation, tol)

    # the printed G vectors agree with the used ones up to a scale per family
    for nu, printed in enumerate(THREEADIC_COMPLETION, start=1):
        g = system.Gs[nu - 1]
        printed = np.asarray(printed, dtype=complex)
        scale = np.vdot(printed, g) / np.vdot(printed, printed)
        out.below(f"G{nu} proportional to printed", float(np.max(np.abs(g - scale * printed))), tol)

    orb = orbit_system_from_mask(mask, tol)
    canonical = build_wavelets(phi, orb, complete_to_unitary(orb, tol))
    out.below("canonical completion wavelet Gram", wavelet_gram(canonical).deviation, tol)

    result = analyze(omega(3), system, j_min=0, tol=tol)
    got = {a.value: c for a, c in result.scaling.items()}
    dev = max(abs(got.get(a, 0) - float(v)) for a, v in THREEADIC_OMEGA_COEFFS.items())
    dev = max(dev, float(len(got) != 3), float(len(result.wavelet)))
    out.below("Omega coefficients", dev, tol)
    out.below("Omega energy", abs(result.coefficient_energy - 1), tol)
    out.below("Omega reconstruction", max_deviation(reconstruct(result, system), omega(3)), tol)
    out.details = {
        "beta": [str(b) for b in THREEADIC_BETA],
        "omega_coefficients": {str(a): [c.real, c.imag] for a, c in sorted(result.scaling.items())},
    }
    return out


def counterexample_mask(tol: float = TOL):
    return solve_mask_constraints(COUNTEREXAMPLE_P, COUNTEREXAMPLE_S, COUNTEREXAMPLE_ZEROS, tol=tol)


def counterexample(tol: float = TOL) -> DemoResult:
    """A mask with the prescribed zeros but whose refinable function is no scaling function.

    Passing here means the shifts are observed NOT to be orthonormal.
    """
    out = DemoResult("counterexample")
    mask = counterexample_mask(tol)
    phi_hat = build_phi_hat(mask, tol=tol)
    phi = build_phi(mask, tol=tol)
    out.below("phi_hat support exponent", abs(phi_hat.support_exp - COUNTEREXAMPLE_PHI_HAT_SUPPORT), 0.5)
    out.below("refinement residual", refinement_residual(phi, mask), tol)
    dev = gram_deviation(shift_gram(phi, COUNTEREXAMPLE_S, tol))
    out.at_least("shift Gram deviation", dev, 1e-3)
    out.below("frozen Gram deviation", abs(dev - COUNTEREXAMPLE_GRAM_DEVIATION), tol)
    out.details = {
        "phi_hat_support_exp": phi_hat.support_exp,
        "gram_deviation": dev,
        "shifts_orthonormal": dev < tol,
    }
    return out


DEMOS = {"kozyrev": kozyrev, "threeadic": threeadic, "counterexample": counterexample}


__all__ = [
    "Check",
    "DEMOS",
    "DemoResult",
    "counterexample",
    "counterexample_mask",
    "kozyrev",
    "table_deviation",
    "threeadic",
    "threeadic_system",
]
