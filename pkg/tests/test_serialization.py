import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest

from padic_mra.demos import threeadic_system
from padic_mra.functions import allclose, indicator, random_lcfunction
from padic_mra.refinement import mask_from_values, validate_mask
from padic_mra.serialization import (
    CSV_HEADER,
    FormatError,
    constraints_from_dict,
    decode_complex,
    decomposition_from_dict,
    decomposition_to_csv,
    decomposition_to_dict,
    lcfunction_from_dict,
    lcfunction_to_dict,
    mask_from_dict,
    mask_to_dict,
    report_to_dict,
    wavelet_system_from_dict,
    wavelet_system_to_dict,
)
from padic_mra.transform import analyze

TOL = 1e-9


def through_json(d):
    return json.loads(json.dumps(d))


@pytest.mark.parametrize("raw,value", [("-1/3", -1 / 3), (2, 2), ([0.5, -1], 0.5 - 1j), ("1e-3", 1e-3)])
def test_decode_complex(raw, value):
    assert decode_complex(raw) == value


@pytest.mark.parametrize("raw", ["abc", [1, 2, 3], None, True, "1/0"])
def test_decode_complex_rejects(raw):
    with pytest.raises(FormatError):
        decode_complex(raw)


def test_lcfunction_round_trip(rng):
    f = random_lcfunction(rng, 5, 1, -1)
    g = lcfunction_from_dict(through_json(lcfunction_to_dict(f)))
    assert (g.p, g.support_exp, g.constancy_exp) == (5, 1, -1)
    np.testing.assert_array_equal(g.values, f.values)


def test_lcfunction_rejects_malformed():
    with pytest.raises(FormatError):
        lcfunction_from_dict({"p": 3, "support_exp": 1, "constancy_exp": 0, "values": [1]})
    with pytest.raises(FormatError):
        lcfunction_from_dict({"p": 3, "support_exp": 1})
    with pytest.raises(FormatError):
        lcfunction_from_dict({"kind": "Mask", "p": 3})


def test_mask_round_trip_and_rational_input():
    m = mask_from_dict({"p": 3, "s": 2, "values": ["1", "0", "0", "-1", "0", "0", "-1", "0", "0"]})
    np.testing.assert_allclose(m.beta, np.array([-1, 2, 2] * 3) / 3, atol=1e-12)
    back = mask_from_dict(through_json(mask_to_dict(m)))
    np.testing.assert_array_equal(back.values, m.values)
    from_beta = mask_from_dict({"p": 3, "s": 2, "beta": [str(Fraction(b.real).limit_denominator()) for b in m.beta]})
    np.testing.assert_allclose(from_beta.values, m.values, atol=1e-12)
    with pytest.raises(FormatError):
        mask_from_dict({"p": 4, "s": 1, "values": [1, 0, 0, 0]})


def test_constraints():
    p, s, zeros, values = constraints_from_dict({"p": 2, "s": 3, "zeros": ["1/4"], "values": [{"xi": "1/2", "value": [0, 1]}]})
    assert (p, s, zeros) == (2, 3, [Fraction(1, 4)])
    assert values == [(Fraction(1, 2), 1j)]
    with pytest.raises(FormatError):
        constraints_from_dict({"p": 2, "s": 3, "zeros": ["x"]})


def test_report_dict():
    d = report_to_dict(validate_mask(mask_from_values(3, 1, [1, 0, 0])))
    assert d["kind"] == "MaskValidationReport" and d["passed"] is True


def test_wavelet_system_round_trip():
    _, _, system = threeadic_system()
    back = wavelet_system_from_dict(through_json(wavelet_system_to_dict(system)))
    np.testing.assert_allclose(back.gamma, system.gamma)
    np.testing.assert_allclose(back.U, system.U)
    assert all(allclose(a, b) for a, b in zip(back.psi, system.psi))
    assert allclose(back.phi, system.phi)


def test_decomposition_round_trip_and_csv():
    _, _, system = threeadic_system()
    result = analyze(indicator(3, -1, Fraction(1, 3)), system, j_min=-1)
    back = decomposition_from_dict(through_json(decomposition_to_dict(result)))
    assert back.scaling.keys() == result.scaling.keys()
    assert back.wavelet.keys() == result.wavelet.keys()
    for k, v in result.wavelet.items():
        assert abs(back.wavelet[k] - v) < TOL
    assert abs(back.coefficient_energy - result.coefficient_energy) < TOL

    rows = list(csv.reader(io.StringIO(decomposition_to_csv(result))))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) - 1 == len(result.scaling) + len(result.wavelet)
    assert {r[1] for r in rows[1:] if r[0] == str(result.j_min)} >= {"0"}
    energy = sum(float(r[5]) for r in rows[1:])
    assert abs(energy - result.coefficient_energy) < TOL


def test_decomposition_rejects_bad_shift():
    with pytest.raises(FormatError):
        decomposition_from_dict(
            {"p": 3, "s": 2, "j_min": 0, "J": 0, "window_exp": 1, "scaling": [{"a": "3/3^1", "value": 1}], "wavelet": []}
        )
