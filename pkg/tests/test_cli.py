import io
import json
import sys

import pytest

from twocon.cli import run


def _capture(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_params(capsys):
    code, out, _ = _capture(["params", "--n", "1000", "--m", "2000"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert 3.58 < float(obj["lambda_c"]) < 3.60


def test_count_exact(capsys):
    code, out, _ = _capture(
        ["count", "exact", "--n", "4", "--m", "4",
         "--predicate", "two-connected"], capsys)
    assert code == 0
    assert json.loads(out)["count"] == "3"


def test_count_main_equals_b(capsys):
    argv = ["count", "asymptotic", "--n", "1000000", "--m", "1500000"]
    _, out_main, _ = _capture(argv + ["--regime", "main"], capsys)
    _, out_b, _ = _capture(argv + ["--regime", "b"], capsys)
    a = json.loads(out_main)
    b = json.loads(out_b)
    assert a["log"] == b["log"]
    assert a["decimal"] == b["decimal"]


def test_count_degseq(tmp_path, capsys):
    f = tmp_path / "d.txt"
    f.write_text("3 3 2 2\n")
    code, out, _ = _capture(
        ["count", "degseq", "--file", str(f), "--regime", "b"], capsys)
    assert code == 0
    assert "log10" in json.loads(out)
    code, out, _ = _capture(
        ["count", "exact-degseq", "--file", str(f),
         "--predicate", "two-connected"], capsys)
    assert code == 0
    int(json.loads(out)["count"])


def test_sample_pairing_output(tmp_path, capsys):
    f = tmp_path / "d.txt"
    f.write_text("2 2 2\n")
    code, out, _ = _capture(
        ["sample", "pairing", "--file", str(f), "--seed", "4"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    n, m = map(int, lines[0].split())
    assert (n, m) == (3, 3)
    assert len(lines) == 1 + m


def test_sample_kernel_output(tmp_path, capsys):
    f = tmp_path / "d.txt"
    f.write_text("3 3 2 2\n")
    code, out, _ = _capture(
        ["sample", "kernel", "--file", str(f), "--seed", "4"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert sum(1 for ln in lines if ln.startswith("a ")) == 3


def test_estimate_deterministic(capsys):
    argv = ["estimate", "--model", "kernel", "--event", "2cs",
            "--n", "300", "--m", "450", "--samples", "256", "--seed", "7"]
    _, out1, _ = _capture(argv + ["--threads", "1"], capsys)
    _, out4, _ = _capture(argv + ["--threads", "4"], capsys)
    assert out1 == out4


def test_xyz_runs(capsys):
    code, out, _ = _capture(
        ["xyz", "--mode", "section5", "--n", "300", "--m", "450",
         "--samples", "64", "--seed", "2"], capsys)
    assert code == 0
    assert "E[X+Y]" in json.loads(out)["moments"]


def test_typical(tmp_path, capsys):
    f = tmp_path / "d.txt"
    f.write_text(" ".join(["2"] * 3000))
    code, out, _ = _capture(
        ["typical", "--file", str(f), "--regime", "b", "--m", "4500"],
        capsys)
    assert code == 0
    assert json.loads(out)["member"] is False


def test_table_sweep(tmp_path, capsys):
    spec = tmp_path / "sweep.json"
    spec.write_text(json.dumps({
        "variable": "c", "values": [2.5, 3], "fixed": {"n": 10000},
        "output": "-"}))
    code, out, _ = _capture(["table", "--sweep", str(spec)], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("value,")
    assert len(lines) == 3


def test_domain_error_exit_code(capsys):
    code, out, err = _capture(["params", "--n", "100", "--m", "50"], capsys)
    assert code == 1
    assert out == ""
    assert "error" in json.loads(err)


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["count", "asymptotic", "--n", "10", "--frobnicate"])
    assert exc.value.code == 2
