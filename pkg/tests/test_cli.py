import json
import subprocess
import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent.parent / "fixtures"


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "kummer.cli", *args],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == expect, proc.stderr or proc.stdout
    return proc


def test_surface_fast():
    proc = run_cli("surface", "--field-p", "1697", "--theta", "883,375,1692,1586")
    data = json.loads(proc.stdout)
    assert data["theta"] == ["883", "375", "1692", "1586"]
    assert data["constants"]["A"] == "1007"


def test_surface_degenerate_exit_code():
    run_cli("surface", "--field-p", "1697", "--theta", "1,1,1,1", expect=4)


def test_isogeny_fast_golden(tmp_path):
    out = tmp_path / "iso.json"
    run_cli(
        "isogeny", "--field-p", "1697", "--theta", "883,375,1692,1586",
        "--kernel-file", str(FIXTURES / "fast_1697_kernel.json"),
        "--counters", "--out", str(out),
    )
    data = json.loads(out.read_text())
    assert data["branch"] == "5"
    # image theta projectively equal to (381, 960, 69, 1199)
    img = [int(x) for x in data["image"]["theta"]]
    p = 1697
    ref = (381, 960, 69, 1199)
    k = next(i for i, v in enumerate(ref) if v)
    assert all(img[i] * ref[k] % p == ref[i] * img[k] % p for i in range(4))
    assert data["op_counts"]["M"] > 0


def test_isogeny_deterministic_output(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        run_cli(
            "isogeny", "--field-p", "1697", "--theta", "883,375,1692,1586",
            "--kernel-file", str(FIXTURES / "fast_1697_kernel.json"),
            "--seed", "11", "--out", str(out),
        )
    assert out1.read_bytes() == out2.read_bytes()


def test_isogeny_invalid_kernel_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"N": 5, "R": ["1593", "713", "1161", "1"],
                               "S": ["1593", "713", "1161", "1"]}))
    run_cli(
        "isogeny", "--field-p", "1697", "--theta", "883,375,1692,1586",
        "--kernel-file", str(bad), expect=3,
    )


def test_evaluate_and_multiply(tmp_path):
    out = tmp_path / "iso.json"
    run_cli(
        "isogeny", "--field-p", "1697", "--theta", "883,375,1692,1586",
        "--kernel-file", str(FIXTURES / "fast_1697_kernel.json"), "--out", str(out),
    )
    proc = run_cli(
        "evaluate", "--field-p", "1697", "--map-file", str(out),
        "--point", "1593,713,1161,1",
    )
    data = json.loads(proc.stdout)
    assert data["on_image_surface"] is True
    proc = run_cli(
        "multiply", "--field-p", "1697", "--theta", "883,375,1692,1586",
        "--n", "5", "--point", "1593,713,1161,1",
    )
    data = json.loads(proc.stdout)
    # k(5R) is the identity (a, b, c, d) projectively
    res = [int(x) for x in data["result"]]
    theta = (883, 375, 1692, 1586)
    p = 1697
    assert all(res[i] * theta[0] % p == theta[i] * res[0] % p for i in range(4))


def test_diagonalize_golden():
    proc = run_cli(
        "diagonalize", "--field-p", "101",
        "--factors", "13,15,1;83,53,1;64,10,1",
        "--eigenvalues", "52,49,33,68",
    )
    data = json.loads(proc.stdout)
    assert data["M1"] == [["6", "18", "39", "1"], ["92", "13", "15", "86"],
                          ["17", "52", "22", "13"], ["46", "54", "52", "60"]]
    assert data["res_H1_H2H3"] == "78"
    assert len(data["sparse_quartic"]) == 11


def test_verify_f101_suite():
    proc = run_cli("verify", "--suite", "f101")
    data = json.loads(proc.stdout)
    assert data["passed"] is True
    assert len(data["results"]) == 4


def test_usage_error_exit_code():
    run_cli("isogeny", "--field-p", "1697", "--theta", "883,375,1692,1586",
            "--kernel-file", "/nonexistent.json", expect=2)


@pytest.mark.slow
def test_bench_smoke(tmp_path):
    out = tmp_path / "bench.csv"
    run_cli("bench", "--N", "5", "--log2p", "28", "--seed", "3", "--out", str(out))
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("N,log2p,branch")
    assert len(lines) == 2
