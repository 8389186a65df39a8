"""JSON and CSV forms of the package's artifacts.

Complex numbers are written as ``[re, im]``.  On input a scalar may also be
a plain number or a rational string such as ``"-1/3"``.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .functions import LCFunction
from .padic import ShiftIndex
from .refinement import Mask, MaskValidationReport, mask_from_beta, mask_from_values
from .transform import DecompositionResult
from .wavelets import WaveletSystem


class FormatError(ValueError):
    """Malformed artifact input."""


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise FormatError(f"complex value must be [re, im], got {x!r}")
        return complex(decode_complex(x[0]).real, decode_complex(x[1]).real)
    if isinstance(x, bool):
        raise FormatError(f"not a number: {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, str):
        try:
            return complex(float(Fraction(x)))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a number: {x!r}") from exc
    raise FormatError(f"not a number: {x!r}")


def encode_array(a) -> list:
    return [encode_complex(z) for z in np.asarray(a).reshape(-1)]


def decode_array(items) -> np.ndarray:
    if not isinstance(items, list):
        raise FormatError("expected a list of values")
    return np.array([decode_complex(x) for x in items], dtype=complex)


def _field(d: dict, key: str, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"missing field {key!r}")
    v = d[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise FormatError(f"field {key!r} must be an integer")
    return v


def _check_kind(d: dict, kind: str):
    if isinstance(d, dict) and d.get("kind", kind) != kind:
        raise FormatError(f"expected a {kind} artifact, got {d.get('kind')!r}")


def lcfunction_to_dict(f: LCFunction) -> dict:
    return {
        "kind": "LCFunction",
        "p": f.p,
        "support_exp": f.support_exp,
        "constancy_exp": f.constancy_exp,
        "values": encode_array(f.values),
    }


def lcfunction_from_dict(d: dict) -> LCFunction:
    _check_kind(d, "LCFunction")
    try:
        return LCFunction(
            _field(d, "p", int),
            _field(d, "support_exp", int),
            _field(d, "constancy_exp", int),
            decode_array(_field(d, "values")),
        )
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def mask_to_dict(mask: Mask) -> dict:
    return {
        "kind": "Mask",
        "p": mask.p,
        "s": mask.s,
        "values": encode_array(mask.values),
        "beta": encode_array(mask.beta),
    }


def mask_from_dict(d: dict) -> Mask:
    """Built from ``values`` (the table m0(l/p^s)) when present, else from ``beta``."""
    _check_kind(d, "Mask")
    p, s = _field(d, "p", int), _field(d, "s", int)
    try:
        if "values" in d:
            return mask_from_values(p, s, decode_array(d["values"]))
        return mask_from_beta(p, s, decode_array(_field(d, "beta")))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def constraints_from_dict(d: dict) -> tuple[int, int, list[Fraction], list[tuple[Fraction, complex]]]:
    """``{"p", "s", "zeros": ["1/4", ...], "values": [{"xi": "1/2", "value": ...}]}``."""
    p, s = _field(d, "p", int), _field(d, "s", int)
    try:
        zeros = [Fraction(str(x)) for x in _field(d, "zeros")]
        values = [(Fraction(str(_field(v, "xi"))), decode_complex(_field(v, "value"))) for v in d.get("values", [])]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"malformed constraint: {exc}") from exc
    return p, s, zeros, values


def report_to_dict(report: MaskValidationReport) -> dict:
    return {"kind": "MaskValidationReport", **report.as_dict()}


def wavelet_system_to_dict(system: WaveletSystem) -> dict:
    out = {
        "kind": "WaveletSystem",
        "p": system.p,
        "s": system.s,
        "beta": encode_array(system.beta),
        "gamma": [encode_array(g) for g in system.gamma],
        "U": [encode_array(row) for row in system.U],
        "psi": [lcfunction_to_dict(f) for f in system.psi],
    }
    if system.phi is not None:
        out["phi"] = lcfunction_to_dict(system.phi)
    return out


def wavelet_system_from_dict(d: dict) -> WaveletSystem:
    _check_kind(d, "WaveletSystem")
    p, s = _field(d, "p", int), _field(d, "s", int)
    beta = decode_array(_field(d, "beta"))
    gamma = np.array([decode_array(g) for g in _field(d, "gamma")], dtype=complex).reshape(p - 1, -1)
    U = np.array([decode_array(row) for row in _field(d, "U")], dtype=complex)
    psi = tuple(lcfunction_from_dict(f) for f in _field(d, "psi"))
    phi = lcfunction_from_dict(d["phi"]) if "phi" in d else None
    if beta.size != p ** s or gamma.shape[1] != p ** s or len(psi) != p - 1:
        raise FormatError("wavelet system dimensions do not match (p, s)")
    return WaveletSystem(p, s, beta, gamma, U, psi, phi)


def decomposition_to_dict(result: DecompositionResult) -> dict:
    return {
        "kind": "DecompositionResult",
        "p": result.p,
        "s": result.s,
        "j_min": result.j_min,
        "J": result.J,
        "window_exp": result.window_exp,
        "scaling": [{"a": str(a), "value": encode_complex(c)} for a, c in sorted(result.scaling.items())],
        "wavelet": [
            {"j": j, "nu": nu, "a": str(a), "value": encode_complex(c)}
            for (j, nu, a), c in sorted(result.wavelet.items())
        ],
        "input_energy": result.input_energy,
        "coefficient_energy": result.coefficient_energy,
        "energy_gap": result.energy_gap,
    }


def decomposition_from_dict(d: dict) -> DecompositionResult:
    _check_kind(d, "DecompositionResult")
    try:
        scaling = {ShiftIndex.parse(e["a"]): decode_complex(e["value"]) for e in _field(d, "scaling")}
        wavelet = {
            (int(e["j"]), int(e["nu"]), ShiftIndex.parse(e["a"])): decode_complex(e["value"])
            for e in _field(d, "wavelet")
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed coefficient entry: {exc}") from exc
    return DecompositionResult(
        _field(d, "p", int),
        _field(d, "s", int),
        _field(d, "j_min", int),
        _field(d, "J", int),
        _field(d, "window_exp", int),
        scaling,
        wavelet,
        float(d.get("input_energy", 0.0)),
        float(d.get("coefficient_energy", 0.0)),
    )


CSV_HEADER = ("j", "nu", "a", "re", "im", "abs2")


def decomposition_to_csv(result: DecompositionResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for j, nu, a, c in result.rows():
        w.writerow([j, nu, str(a), repr(c.real), repr(c.imag), repr(abs(c) ** 2)])
    return buf.getvalue()


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


__all__ = [
    "CSV_HEADER",
    "FormatError",
    "constraints_from_dict",
    "decode_array",
    "decode_complex",
    "decomposition_from_dict",
    "decomposition_to_csv",
    "decomposition_to_dict",
    "dump_json",
    "encode_array",
    "encode_complex",
    "lcfunction_from_dict",
    "lcfunction_to_dict",
    "load_json",
    "mask_from_dict",
    "mask_to_dict",
    "report_to_dict",
    "wavelet_system_from_dict",
    "wavelet_system_to_dict",
]
