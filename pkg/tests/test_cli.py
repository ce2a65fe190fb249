import json
import math

import numpy as np
import pytest

from sphereslice.cli import main


def run_cli(args):
    return main(args)


def test_forward_csv_matches_law(tmp_path):
    out = tmp_path / "out.csv"
    code = run_cli(
        ["forward", "--transform", "F", "--n", "2", "--a", "0.5", "--field", "const1",
         "--random", "10", "--seed", "1", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "xi1,xi2,xi3,value"
    assert len(lines) == 11
    for line in lines[1:]:
        xi1, xi2, xi3, value = map(float, line.split(","))
        want = 2 * math.pi * math.sqrt(1 - 0.25 * xi3 * xi3)
        assert value == pytest.approx(want, rel=1e-10)


def test_forward_truncated_constant(tmp_path):
    out = tmp_path / "out.csv"
    code = run_cli(
        ["forward", "--transform", "S", "--n", "2", "--a", "0", "--field", "const1",
         "--grid", "4x8", "--out", str(out)]
    )
    assert code == 0
    for line in out.read_text().strip().splitlines()[1:]:
        assert float(line.split(",")[-1]) == pytest.approx(math.pi, rel=1e-10)


def test_forward_empty_grid_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    code = run_cli(["forward", "--grid", "0x8", "--out", str(out)])
    assert code == 0
    assert out.read_text() == "xi1,xi2,xi3,value\n"


def test_byte_stable_outputs(tmp_path):
    a1, a2 = tmp_path / "a1.csv", tmp_path / "a2.csv"
    args = ["forward", "--random", "12", "--seed", "7", "--a", "0.3"]
    assert run_cli(args + ["--out", str(a1)]) == 0
    assert run_cli(args + ["--out", str(a2)]) == 0
    assert a1.read_bytes() == a2.read_bytes()


def test_config_error_exit_codes(tmp_path):
    assert run_cli(["forward", "--a", "1.7"]) == 2
    assert run_cli(["forward", "--field", "nosuch"]) == 2
    assert run_cli(["selftest", "--suite", "nosuch"]) == 2


def test_selftest_pass_and_filter(tmp_path):
    out = tmp_path / "report.json"
    code = run_cli(["selftest", "--suite", "quadrature", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert list(report["suites"]) == ["quadrature"]
    assert report["pass"] is True


def test_selftest_perturb_exit_one(tmp_path):
    out = tmp_path / "report.json"
    code = run_cli(["selftest", "--suite", "quadrature", "--perturb", "--out", str(out)])
    assert code == 1
    report = json.loads(out.read_text())
    assert report["pass"] is False
    assert any("injected_perturbation" in f for f in report["failing"])


def test_reconstruct_round_trip_summary(tmp_path):
    out = tmp_path / "rec.csv"
    summ = tmp_path / "rec.json"
    code = run_cli(
        ["reconstruct", "--transform", "S", "--a", "0", "--field", "cap_bump",
         "--grid", "6x12", "--resolution", "32", "--margin", "0.3",
         "--out", str(out), "--summary", str(summ)]
    )
    assert code == 0
    summary = json.loads(summ.read_text())
    assert summary["pass"] is True
    assert summary["metrics"]["rel_l2"] <= 2e-2
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("eta1,eta2,eta3")


def test_reconstruct_summary_stable_modulo_runtime(tmp_path):
    outs = []
    for tag in ("x", "y"):
        out, summ = tmp_path / f"{tag}.csv", tmp_path / f"{tag}.json"
        code = run_cli(
            ["reconstruct", "--transform", "S", "--a", "0", "--field", "cap_bump",
             "--grid", "4x8", "--resolution", "24", "--margin", "0.3",
             "--out", str(out), "--summary", str(summ)]
        )
        assert code == 0
        payload = json.loads(summ.read_text())
        payload["metrics"].pop("runtime_s")
        outs.append((out.read_bytes(), json.dumps(payload, sort_keys=True)))
    assert outs[0] == outs[1]


def test_reconstruct_failure_exit_three(tmp_path):
    out = tmp_path / "rec.csv"
    summ = tmp_path / "rec.json"
    code = run_cli(
        ["reconstruct", "--transform", "S", "--a", "0", "--field", "cap_bump",
         "--grid", "4x8", "--resolution", "24", "--margin", "0.3",
         "--tolerance", "1e-9", "--out", str(out), "--summary", str(summ)]
    )
    assert code == 3
    assert json.loads(summ.read_text())["pass"] is False
