import json
from pathlib import Path

import pytest

from padic_mra.cli import RunConfig, UsageError, main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_mask_validate_example2(capsys):
    code, report = run(capsys, "mask", "validate", "--p", 3, "--s", 2, "--mask-values", DATA / "example2_mask.json")
    assert code == 0 and report["passed"]


def test_mask_validate_perturbed(capsys):
    code, report = run(capsys, "mask", "validate", "--mask", DATA / "example2_perturbed_mask.json")
    assert code == 1
    assert abs(report["unimodularity_deviation"] - 0.5) < 1e-12


def test_mask_build_from_constraints_then_probe(capsys, tmp_path):
    mask_file = tmp_path / "p2s3.json"
    code, report = run(capsys, "mask", "build", "--constraints", DATA / "p2s3_constraints.json", "--output", mask_file)
    assert code == 0 and mask_file.exists()
    code, report = run(capsys, "phi", "build", "--mask", mask_file)
    assert code == 0
    assert report["summary"] == "support exponent 1; shifts NOT orthonormal"
    assert report["gram_deviation"] >= 1e-3


def test_phi_build_haar(capsys, tmp_path):
    out = tmp_path / "phi.json"
    hat = tmp_path / "phi_hat.json"
    code, report = run(capsys, "phi", "build", "--mask", DATA / "haar3_mask.json", "--output", out, "--phi-hat-output", hat)
    assert code == 0 and report["shifts_orthonormal"]
    phi = json.loads(out.read_text())
    assert (phi["support_exp"], phi["constancy_exp"], phi["values"]) == (0, 0, [[1.0, 0.0]])
    assert hat.exists()


def test_phi_build_support_cap(capsys, tmp_path):
    mask = tmp_path / "broken.json"
    mask.write_text(json.dumps({"p": 3, "s": 2, "values": ["1", "1/10", "0", "-1", "0", "0", "-1", "0", "0"]}))
    code, report = run(capsys, "phi", "build", "--mask", mask)
    assert code == 1 and report["passed"] is False


def test_wavelets_then_analyze(capsys, tmp_path):
    system = tmp_path / "sys.json"
    code, report = run(
        capsys, "wavelets", "derive", "--mask", DATA / "example2_mask.json",
        "--completion", DATA / "example2_completion.json", "--normalize", "--output", system,
    )
    assert code == 0 and report["passed"]
    csv_file = tmp_path / "c.csv"
    code, report = run(
        capsys, "analyze", "--input", DATA / "omega3.json", "--system", system, "--jmin", 0, "--csv", csv_file,
    )
    assert code == 0
    assert report["coefficients"] == 3
    assert abs(report["coefficient_energy"] - 1) < 1e-9
    assert len(csv_file.read_text().splitlines()) == 4
    assert len(report["artifact"]["scaling"]) == 3


def test_wavelets_canonical(capsys):
    code, report = run(capsys, "wavelets", "derive", "--mask", DATA / "haar3_mask.json")
    assert code == 0 and report["completion"] == "canonical"


def test_unnormalized_completion_rejected(capsys):
    code, _ = run(
        capsys, "wavelets", "derive", "--mask", DATA / "example2_mask.json", "--completion", DATA / "example2_completion.json"
    )
    assert code == 1


@pytest.mark.parametrize("name", ["kozyrev", "threeadic", "counterexample"])
def test_demos(capsys, name):
    code, report = run(capsys, "demo", name)
    assert code == 0 and report["passed"]


def test_demo_kozyrev_single_prime(capsys):
    code, report = run(capsys, "demo", "kozyrev", "--p", 5)
    assert code == 0
    assert all(c["label"].startswith("p=5") for c in report["checks"])


def test_mask_random_is_seeded(capsys):
    _, a = run(capsys, "mask", "random", "--p", 2, "--s", 2, "--seed", 7)
    _, b = run(capsys, "mask", "random", "--p", 2, "--s", 2, "--seed", 7)
    assert a["passed"] and a["artifact"] == b["artifact"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["mask", "validate", "--p", "4", "--mask", "x.json"],
        ["mask", "validate", "--mask", "/nonexistent.json"],
        ["mask", "validate", "--p", "5", "--mask", str(DATA / "haar3_mask.json")],
        ["demo", "kozyrev", "--tolerance", "0.1"],
        ["mask", "random", "--p", "3"],
        ["analyze", "--input", str(DATA / "omega3.json"), "--system", str(DATA / "haar3_mask.json")],
    ],
)
def test_malformed_input_exits_2(capsys, argv):
    assert main(argv) == 2


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["mask", "validate", "--mask", str(bad)]) == 2


def test_run_config_validation():
    assert RunConfig(p=3, s=2).tolerance == 1e-9
    for kwargs in [{"p": 6}, {"s": 0}, {"tolerance": 0.0}, {"tolerance": 1e-3}]:
        with pytest.raises(UsageError):
            RunConfig(**kwargs)
