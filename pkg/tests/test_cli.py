"""Exit-code contract and output-shape tests for the command-line front end."""

import json
import subprocess
import sys

import pytest

from qshuffle.cli import main


SKEWED_SUPER = {
    "vertices": ["0", "1", "2"],
    "arrows": [
        {"id": "x0", "src": "0", "tgt": "1", "q_exp": 1, "t_exp": -1},
        {"id": "y0", "src": "1", "tgt": "0", "q_exp": 1, "t_exp": 1},
        {"id": "x1", "src": "1", "tgt": "2", "q_exp": 1, "t_exp": 1},
        {"id": "y1", "src": "2", "tgt": "1", "q_exp": -1, "t_exp": -1},
        {"id": "x2", "src": "2", "tgt": "0", "q_exp": 1, "t_exp": -1},
        {"id": "y2", "src": "0", "tgt": "2", "q_exp": 1, "t_exp": 1},
        {"id": "w0", "src": "0", "tgt": "0", "q_exp": -2, "t_exp": 0},
    ],
    "pairs": [["x0", "y0"], ["x1", "y1"], ["x2", "y2"]],
    "parity": {"0": 0, "1": 1, "2": 1},
}


# -- kernel ---------------------------------------------------------------------------


def test_kernel_a2_cross_factor(capsys):
    rc = main(["kernel", "--builtin", "a2", "--kind", "bullet",
               "--alpha", "1,0", "--gamma", "0,1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "factored:" in out and "expanded:" in out
    assert "x[1,1]" in out and "x[2,1]" in out
    assert "q^-1" in out


def test_kernel_zero_degree_is_one(capsys):
    rc = main(["kernel", "--builtin", "a2", "--alpha", "0,0", "--gamma", "0,1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "factored: 1" in out


def test_kernel_json_payload(capsys):
    rc = main(["kernel", "--builtin", "a1", "--kind", "diamond",
               "--alpha", "1", "--gamma", "1", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["kind"] == "diamond"
    assert payload["alpha"] == {"1": 1}
    assert "q^-2" in payload["factored"]


def test_kernel_malformed_vector(capsys):
    rc = main(["kernel", "--builtin", "a2", "--alpha", "1,x", "--gamma", "0,1"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "error:" in err


def test_kernel_wrong_vector_length(capsys):
    rc = main(["kernel", "--builtin", "a2", "--alpha", "1", "--gamma", "0,1"])
    assert rc == 2
    assert "--alpha wants 2" in capsys.readouterr().err


# -- mul ------------------------------------------------------------------------------


def test_mul_square_of_generator(capsys):
    rc = main(["mul", "--builtin", "a1", "--kind", "bullet", "e 1 0", "e 1 0"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "degree: {'1': 2}" in out
    assert "(q^2 + 1) / (q^2)" in out


def test_mul_divided_power_monomial(capsys):
    rc = main(["mul", "--builtin", "a1", "ediv 1 3 2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "x[1,1]^3*x[1,2]^3" in out


def test_mul_single_element_echo(capsys):
    rc = main(["mul", "--builtin", "a2", "e 2 -1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "degree: {'2': 1}" in out
    assert "value: (1) / (x[2,1])" in out


def test_mul_slot_cap_overflow(capsys):
    rc = main(["mul", "--builtin", "a1", "--max-slots", "2",
               "e 1 0", "e 1 0", "e 1 0"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "exceeds --max-slots" in err


def test_mul_bad_element_spec(capsys):
    rc = main(["mul", "--builtin", "a1", "f 1 0"])
    assert rc == 2
    assert "bad element spec" in capsys.readouterr().err


# -- verify ---------------------------------------------------------------------------


def test_verify_kernels_proves(capsys):
    rc = main(["verify", "--suite", "kernels"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "kernels/derivation:a2" in out
    assert "suite kernels: proved" in out


def test_verify_unknown_suite_exits_two(capsys):
    rc = main(["verify", "--suite", "nosuch"])
    assert rc == 2


def test_verify_corrupt_quiver_no_partial_output(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc = main(["verify", "--suite", "super-all", "--quiver", str(bad),
               "--format", "json"])
    captured = capsys.readouterr()
    assert rc == 2
    assert captured.out == ""
    assert "error:" in captured.err


def test_verify_skewed_super_quiver_refutes(capsys, tmp_path):
    path = tmp_path / "skewed_super.json"
    path.write_text(json.dumps(SKEWED_SUPER))
    rc = main(["verify", "--suite", "super-all", "--quiver", str(path),
               "--window=-1,1"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "refuted" in out
    assert "witness:" in out
    assert "suite super-all: refuted" in out


def test_verify_alternate_super_builtin(capsys):
    rc = main(["verify", "--suite", "super-all", "--builtin", "super:2|1:+-+",
               "--window=-1,1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "drinfeld/super:2|1:+-+/0,0" in out


def test_verify_bad_window(capsys):
    rc = main(["verify", "--suite", "dims", "--window=2,-2"])
    assert rc == 2


def test_verify_json_deterministic_in_process(capsys):
    args = ["verify", "--suite", "dims", "--qmax", "3", "--zmax", "3",
            "--format", "json"]
    assert main(args) == 0
    first = json.loads(capsys.readouterr().out)
    assert main(args) == 0
    second = json.loads(capsys.readouterr().out)
    for report in first["reports"] + second["reports"]:
        report["ms"] = 0
    assert first == second


def test_verify_json_deterministic_across_processes(tmp_path):
    cmd = [sys.executable, "-m", "qshuffle.cli", "verify", "--suite", "kernels",
           "--format", "json"]
    runs = []
    for _ in range(2):
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode == 0
        runs.append(json.loads(proc.stdout))
    for payload in runs:
        for report in payload["reports"]:
            report["ms"] = 0
    assert runs[0] == runs[1]


def test_verify_out_file(tmp_path):
    target = tmp_path / "report.json"
    rc = main(["verify", "--suite", "dims", "--qmax", "2", "--zmax", "2",
               "--format", "json", "--out", str(target)])
    assert rc == 0
    payload = json.loads(target.read_text())
    assert payload["verdict"] == "proved"
    assert [r["id"] for r in payload["reports"]] == ["dims/a1", "dims/a2"]


def test_verify_parallelism_env(capsys, monkeypatch):
    monkeypatch.setenv("QSHUFFLE_PARALLELISM", "4")
    rc = main(["verify", "--suite", "dims", "--qmax", "2", "--zmax", "2"])
    assert rc == 0
    monkeypatch.setenv("QSHUFFLE_PARALLELISM", "zebra")
    capsys.readouterr()
    rc = main(["verify", "--suite", "dims", "--qmax", "2", "--zmax", "2"])
    assert rc == 2
    assert "QSHUFFLE_PARALLELISM" in capsys.readouterr().err


# -- dims -----------------------------------------------------------------------------


def test_dims_a1_agrees(capsys):
    rc = main(["dims", "--type", "a1", "--qmax", "4", "--zmax", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "type a1: agree" in out
    assert "NO" not in out


def test_dims_zmax_zero_single_row(capsys):
    rc = main(["dims", "--type", "a1", "--qmax", "2", "--zmax", "0"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "(1 coefficients, 0 basis items)" in out


def test_dims_unknown_type(capsys):
    rc = main(["dims", "--type", "e8"])
    assert rc == 2
    assert "unknown type" in capsys.readouterr().err


def test_dims_json_rows(capsys):
    rc = main(["dims", "--type", "a2", "--qmax", "2", "--zmax", "2",
               "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["agree"] is True
    assert all(row["exp_kac"] == row["exp_form4"] == row["pbw"]
               for row in payload["rows"])


# -- top level ------------------------------------------------------------------------


def test_no_command_exits_two(capsys):
    assert main([]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "kernel" in capsys.readouterr().out
