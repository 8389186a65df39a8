"""Command-line front end.

Exit status: 0 when every check passes, 1 on a verification failure, 2 on
malformed input or arguments.  Reports go to stdout as JSON; artifacts go to
``--output`` when given and are embedded in the report otherwise.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import demos as _demos
from .exceptions import MaskInfeasibleError, SupportCapError, VerificationError
from .functions import max_deviation, trimmed
from .padic import TOL, is_prime
from .refinement import (
    build_phi,
    build_phi_hat,
    gram_deviation,
    random_valid_mask,
    refinement_residual,
    shift_gram,
    solve_mask_constraints,
    validate_mask,
)
from .serialization import (
    FormatError,
    constraints_from_dict,
    decode_array,
    decomposition_to_csv,
    decomposition_to_dict,
    dump_json,
    lcfunction_from_dict,
    lcfunction_to_dict,
    load_json,
    mask_from_dict,
    mask_to_dict,
    report_to_dict,
    wavelet_system_from_dict,
    wavelet_system_to_dict,
)
from .transform import analyze, reconstruct
from .wavelets import (
    accept_completion,
    build_wavelets,
    complete_to_unitary,
    normalize_completion,
    orbit_system_from_mask,
    wavelet_gram,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    p: int | None = None
    s: int | None = None
    tolerance: float = TOL
    m_max: int | None = None
    seed: int = 0
    output: Path | None = None
    csv: Path | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise UsageError(f"--p must be prime, got {self.p}")
        if self.s is not None and self.s < 1:
            raise UsageError(f"--s must be >= 1, got {self.s}")
        if not (0 < self.tolerance <= 1e-4):
            raise UsageError(f"--tolerance must lie in (0, 1e-4], got {self.tolerance}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            p=args.p,
            s=args.s,
            tolerance=args.tolerance,
            m_max=args.m_max,
            seed=args.seed,
            output=Path(args.output) if args.output else None,
            csv=Path(args.csv) if args.csv else None,
        )

    def check_shape(self, p: int, s: int | None = None):
        if self.p is not None and self.p != p:
            raise UsageError(f"--p {self.p} does not match input p = {p}")
        if s is not None and self.s is not None and self.s != s:
            raise UsageError(f"--s {self.s} does not match input s = {s}")


def _emit(report: dict, cfg: RunConfig, artifact: dict | None = None) -> None:
    if artifact is not None:
        if cfg.output is not None:
            dump_json(artifact, cfg.output)
            report["output"] = str(cfg.output)
        else:
            report["artifact"] = artifact
    print(json.dumps(report, indent=2))


def _load_mask(args, cfg: RunConfig):
    path = getattr(args, "mask", None) or getattr(args, "mask_values", None)
    if path is None:
        raise UsageError("a mask file is required (--mask or --mask-values)")
    mask = mask_from_dict(load_json(path))
    cfg.check_shape(mask.p, mask.s)
    return mask


def cmd_mask(args, cfg: RunConfig) -> int:
    tol = cfg.tolerance
    if args.action == "random":
        if cfg.p is None or cfg.s is None:
            raise UsageError("mask random needs --p and --s")
        mask = random_valid_mask(np.random.default_rng(cfg.seed), cfg.p, cfg.s)
        report = validate_mask(mask, tol)
        _emit({"command": "mask random", **report_to_dict(report)}, cfg, mask_to_dict(mask))
        return EXIT_OK if report.passed else EXIT_FAIL
    if args.action == "build" and args.constraints:
        p, s, zeros, values = constraints_from_dict(load_json(args.constraints))
        cfg.check_shape(p, s)
        mask = solve_mask_constraints(p, s, zeros, values, tol)
        report = validate_mask(mask, tol)
        _emit({"command": "mask build", "source": "constraints", **report_to_dict(report)}, cfg, mask_to_dict(mask))
        return EXIT_OK
    mask = _load_mask(args, cfg)
    report = validate_mask(mask, tol)
    if args.action == "build":
        _emit({"command": "mask build", "source": "values", **report_to_dict(report)}, cfg, mask_to_dict(mask))
        return EXIT_OK
    _emit({"command": "mask validate", **report_to_dict(report)}, cfg)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_phi(args, cfg: RunConfig) -> int:
    tol = cfg.tolerance
    mask = _load_mask(args, cfg)
    try:
        phi_hat = build_phi_hat(mask, cfg.m_max, tol)
    except SupportCapError as exc:
        _emit({"command": "phi build", "passed": False, "error": str(exc), "shell_max": exc.shell_max}, cfg)
        return EXIT_FAIL
    phi = build_phi(mask, cfg.m_max, tol)
    support = trimmed(phi, tol, constancy=False).support_exp
    report = {
        "command": "phi build",
        "phi_hat_support_exp": phi_hat.support_exp,
        "phi_support_exp": support,
        "refinement_residual": refinement_residual(phi, mask),
    }
    if support <= mask.s - 1:
        dev = gram_deviation(shift_gram(phi, mask.s, tol))
        report["gram_deviation"] = dev
        report["shifts_orthonormal"] = dev < tol
    else:
        report["shifts_orthonormal"] = False
    report["summary"] = (
        f"support exponent {phi_hat.support_exp}; shifts "
        + ("orthonormal" if report["shifts_orthonormal"] else "NOT orthonormal")
    )
    if args.phi_hat_output:
        dump_json(lcfunction_to_dict(phi_hat), args.phi_hat_output)
        report["phi_hat_output"] = args.phi_hat_output
    _emit(report, cfg, lcfunction_to_dict(phi))
    return EXIT_OK


def cmd_wavelets(args, cfg: RunConfig) -> int:
    tol = cfg.tolerance
    mask = _load_mask(args, cfg)
    phi = build_phi(mask, cfg.m_max, tol)
    orb = orbit_system_from_mask(mask, tol)
    if args.completion:
        data = load_json(args.completion)
        if not isinstance(data, dict) or "G" not in data:
            raise FormatError("completion file needs a field 'G'")
        Gs = [decode_array(g) for g in data["G"]]
        if args.normalize:
            Gs = normalize_completion(Gs)
        Gs = accept_completion(orb, Gs, tol)
        source = "supplied"
    else:
        Gs = complete_to_unitary(orb, tol)
        source = "canonical"
    system = build_wavelets(phi, orb, Gs)
    unitarity = gram_deviation(system.U.conj().T @ system.U)
    gram = wavelet_gram(system)
    report = {
        "command": "wavelets derive",
        "completion": source,
        "unitarity_deviation": unitarity,
        "orthogonality_deviation": gram.orthogonality_deviation,
        "orthonormality_deviation": gram.orthonormality_deviation,
        "passed": unitarity < tol and gram.passed(tol),
    }
    _emit(report, cfg, wavelet_system_to_dict(system))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_analyze(args, cfg: RunConfig) -> int:
    tol = cfg.tolerance
    f = lcfunction_from_dict(load_json(args.input))
    system = wavelet_system_from_dict(load_json(args.system))
    cfg.check_shape(system.p, system.s)
    if f.p != system.p:
        raise UsageError(f"input lives over p = {f.p}, system over p = {system.p}")
    if system.phi is None:
        raise FormatError("wavelet system file carries no 'phi'")
    result = analyze(f, system, j_min=args.jmin, tol=tol)
    err = max_deviation(reconstruct(result, system), f)
    report = {
        "command": "analyze",
        "j_min": result.j_min,
        "J": result.J,
        "coefficients": len(result.scaling) + len(result.wavelet),
        "input_energy": result.input_energy,
        "coefficient_energy": result.coefficient_energy,
        "energy_gap": result.energy_gap,
        "reconstruction_error": err,
        "passed": result.energy_gap < tol and err < tol,
    }
    if cfg.csv is not None:
        cfg.csv.write_text(decomposition_to_csv(result))
        report["csv"] = str(cfg.csv)
    _emit(report, cfg, decomposition_to_dict(result))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_demo(args, cfg: RunConfig) -> int:
    if args.name == "kozyrev":
        result = _demos.kozyrev((cfg.p,) if cfg.p else (2, 3, 5), cfg.tolerance)
    else:
        result = _demos.DEMOS[args.name](cfg.tolerance)
    _emit(result.as_dict(), cfg)
    return EXIT_OK if result.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="prime")
    common.add_argument("--s", type=int, help="mask order")
    common.add_argument("--tolerance", type=float, default=TOL)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help="write the artifact here instead of stdout")
    common.add_argument("--csv", help="also write coefficients as CSV")
    common.add_argument("--m-max", type=int, dest="m_max", help="support cap for phi_hat (default s+2)")

    parser = argparse.ArgumentParser(prog="padic-mra", description="p-adic multiresolution analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    mask = sub.add_parser("mask", help="build, validate or draw masks")
    mask_sub = mask.add_subparsers(dest="action", required=True)
    for name in ("build", "validate", "random"):
        sp = mask_sub.add_parser(name, parents=[common])
        if name != "random":
            src = sp.add_mutually_exclusive_group(required=True)
            src.add_argument("--mask", help="Mask JSON")
            src.add_argument("--mask-values", dest="mask_values", help="Mask JSON with a 'values' table")
            if name == "build":
                src.add_argument("--constraints", help="zero and value constraints JSON")
    mask.set_defaults(func=cmd_mask)

    phi = sub.add_parser("phi", help="refinable function from a mask")
    phi_sub = phi.add_subparsers(dest="action", required=True)
    pb = phi_sub.add_parser("build", parents=[common])
    pb.add_argument("--mask", required=True)
    pb.add_argument("--phi-hat-output", dest="phi_hat_output")
    phi.set_defaults(func=cmd_phi)

    wav = sub.add_parser("wavelets", help="wavelet system from a mask")
    wav_sub = wav.add_subparsers(dest="action", required=True)
    wd = wav_sub.add_parser("derive", parents=[common])
    wd.add_argument("--mask", required=True)
    wd.add_argument("--completion", help="JSON with field 'G': p-1 vectors")
    wd.add_argument("--normalize", action="store_true", help="rescale supplied G vectors to unit norm")
    wav.set_defaults(func=cmd_wavelets)

    an = sub.add_parser("analyze", parents=[common], help="wavelet decomposition of a function")
    an.add_argument("--input", required=True)
    an.add_argument("--system", required=True)
    an.add_argument("--jmin", type=int, help="coarsest level (default: the embedding level)")
    an.set_defaults(func=cmd_analyze)

    demo = sub.add_parser("demo", parents=[common], help="run a scripted scenario")
    demo.add_argument("name", choices=sorted(_demos.DEMOS))
    demo.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (VerificationError, MaskInfeasibleError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
