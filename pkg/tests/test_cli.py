import json
import subprocess
import sys

import pytest

from asymtop.cli import LEVELS_HEADER, WAVE_HEADER, load_config, main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_levels_csv_shape(capsys):
    code, out, err = run_cli(capsys, ["levels", "--jmax", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == LEVELS_HEADER
    assert len(lines) == 1 + sum(2 * j + 1 for j in range(4))
    # every data row parses and the routes agree
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 7
        assert float(cells[6]) < 1e-8


def test_levels_json(capsys):
    code, out, _ = run_cli(capsys, ["levels", "--jmax", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["params"] == {"A": 3.0, "B": 2.0, "C": 1.0}
    assert len(doc["levels"]) == 9
    first = doc["levels"][0]
    assert set(first) >= {"j", "s", "E_wigner", "E_lambda", "E_lame"}


def test_levels_honors_routes_subset(capsys):
    code, out, _ = run_cli(capsys, ["levels", "--jmax", "1", "--routes", "wigner"])
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert row[3] != "" and row[4] == "" and row[5] == ""


def test_levels_disagreement_exit(capsys):
    code, _, err = run_cli(
        capsys, ["levels", "--jmax", "2", "--tol-route-agreement", "1e-30"]
    )
    assert code == 2
    assert "disagree" in err


def test_levels_degenerate_params_warns_and_skips_lame(capsys):
    code, out, err = run_cli(
        capsys, ["levels", "--jmax", "1", "--A", "3", "--B", "2", "--C", "2"]
    )
    assert code == 0
    assert "warning" in err
    for line in out.strip().splitlines()[1:]:
        cells = line.split(",")
        assert cells[2] == "" and cells[5] == ""  # class and E_lame empty


def test_invalid_params_exit_code(capsys):
    code, _, err = run_cli(capsys, ["levels", "--A", "1", "--B", "2", "--C", "3"])
    assert code == 3
    assert err.startswith("error:")


def test_invalid_route_exit_code(capsys):
    code, _, err = run_cli(capsys, ["levels", "--routes", "wigner,exact"])
    assert code == 3


def test_wave_csv_shape(capsys):
    code, out, _ = run_cli(capsys, ["wave", "--j", "1", "--s", "0", "--grid-n", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == WAVE_HEADER
    assert len(lines) == 1 + 27
    for line in lines[1:]:
        assert len(line.split(",")) == 5


def test_wave_bad_quantum_numbers(capsys):
    code, _, _ = run_cli(capsys, ["wave", "--j", "1", "--s", "2"])
    assert code == 3
    code, _, _ = run_cli(capsys, ["wave", "--j", "1", "--s", "0", "--grid-n", "1"])
    assert code == 3


def test_kernel_rows(capsys):
    base = ["kernel", "--j", "1", "--q-re", "0.3", "--qp-re", "1.0", "--g-theta", "0.5"]
    code, out, _ = run_cli(capsys, base)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "quantity,value"
    names = [line.split(",")[0] for line in lines[1:]]
    assert names == ["kernel_re", "kernel_im", "conj_defect"]
    code, out, _ = run_cli(capsys, base + ["--identity-check"])
    names = [line.split(",")[0] for line in out.strip().splitlines()[1:]]
    assert names == [
        "kernel_re",
        "kernel_im",
        "conj_defect",
        "delta_re",
        "delta_im",
        "identity_defect",
    ]


def test_kernel_identity_defect_small(capsys):
    code, out, _ = run_cli(
        capsys, ["kernel", "--j", "2", "--q-re", "0.4", "--qp-re", "0.9",
                 "--identity-check"]
    )
    assert code == 0
    rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
    assert float(rows["identity_defect"]) < 1e-10
    assert float(rows["conj_defect"]) < 1e-10


def test_verify_csv_and_exit_codes(capsys):
    code, out, err = run_cli(capsys, ["verify", "--jmax", "2"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "check,passed,defect,tol"
    assert len(lines) == 12
    assert all(line.split(",")[1] == "true" for line in lines[1:])
    assert "11/11 checks passed" in err
    code, _, err = run_cli(capsys, ["verify", "--jmax", "2", "--tol-casimir", "1e-30"])
    assert code == 1
    assert "10/11" in err


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--jmax", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["all_passed"] is True
    assert len(doc["checks"]) == 11


def test_output_deterministic(capsys):
    argv = ["levels", "--jmax", "2"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2
    argv = ["verify", "--jmax", "2", "--seed", "7"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "top.cfg"
    cfg.write_text("A = 10\nB = 4\n# comment\nC = 1.5\njmax = 1\nformat = json\n")
    code, out, _ = run_cli(capsys, ["levels", "--config", str(cfg)])
    assert code == 0
    assert json.loads(out)["params"] == {"A": 10.0, "B": 4.0, "C": 1.5}
    # flags beat the file
    code, out, _ = run_cli(
        capsys, ["levels", "--config", str(cfg), "--B", "9", "--format", "csv"]
    )
    assert code == 0
    assert out.startswith(LEVELS_HEADER)


def test_config_bad_line(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("A = 10\nnot a pair\n")
    code, _, err = run_cli(capsys, ["levels", "--config", str(cfg)])
    assert code == 3
    assert err.startswith("error:")


def test_load_config_parses(tmp_path):
    cfg = tmp_path / "ok.cfg"
    cfg.write_text("A=2\n\n# note\nseed = 5\n")
    assert load_config(str(cfg)) == {"A": "2", "seed": "5"}


def test_missing_config_exit_code(capsys):
    code, _, err = run_cli(capsys, ["levels", "--config", "/nonexistent/x.cfg"])
    assert code == 3


def test_unknown_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["levels", "--bogus"])
    assert exc.value.code == 3
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "asymtop.cli", "levels", "--jmax", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith(LEVELS_HEADER)
