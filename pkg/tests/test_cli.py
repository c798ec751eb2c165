import csv
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from dunklsphere.cli import RunConfig, main, parse_config, run

SCHEMA = json.loads(resources.files("dunklsphere").joinpath("schemas/report.schema.json").read_text())


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_check_fundamental_gegenbauer(capsys):
    code, rep = as_json(capsys, "check-fundamental", "--family", "z2", "--d", "2", "--kappa", "1/2,1/2", "--g", "gegenbauer:3")
    assert code == 2
    assert 0 in rep["result"]["witnesses"]
    assert rep["result"]["overall"] == "not-fundamental"
    assert rep["config"]["kappa"] == ["1/2", "1/2"]


def test_check_fundamental_exp(capsys):
    code, rep = as_json(capsys, "check-fundamental", "--family", "z2", "--d", "2", "--kappa", "1/2,1/2", "--g", "exp", "--nmax", "9")
    assert code == 0
    assert rep["result"]["overall"] == "fundamental-up-to-n_max"


def test_kernel_check(capsys):
    code, rep = as_json(capsys, "kernel-check", "--family", "z2", "--d", "2", "--kappa", "1/2,1/2", "--nmax", "6")
    assert code == 0
    assert all(r["residual"] <= 1e-9 for r in rep["result"]["residuals"])


def test_expand_parity(capsys):
    code, rep = as_json(capsys, "expand", "--lambda", "1", "--g", "poly:0,0,0,1", "--nmax", "5")
    b = [c["b_exact"] for c in rep["result"]["coefficients"]]
    assert code == 0
    assert b[0] == b[2] == b[4] == b[5] == "0"
    assert b[1] != "0" and b[3] != "0"


def test_expand_csv(capsys):
    code, out, _ = invoke(capsys, "expand", "--lambda", "1", "--g", "exp", "--nmax", "3", "--format", "csv")
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["n", "b"] and len(rows) == 5
    assert "\r\n" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["validate-roots", "--family", "i2", "--m", "6", "--kappa", "1,1/2"],
        ["dunkl-apply", "--family", "i2", "--m", "3", "--kappa", "1/2", "--poly", "x1^2*x2", "--axis", "1"],
        ["intertwine", "--family", "z2", "--d", "2", "--kappa", "1/3,2", "--nmax", "5", "--poly", "x1 + x2^2"],
        ["rule", "--family", "i2", "--m", "4", "--kappa", "1/2,1", "--degree", "6"],
        ["harmonics", "--family", "z2", "--d", "3", "--kappa", "1,1,1", "--degree", "2"],
        ["cesaro", "--lambda", "1", "--g", "abs", "--delta", "2", "--N", "8,16"],
        ["verify-all", "--criteria", "5,6"],
    ],
)
def test_commands_validate_against_schema(capsys, argv):
    code, rep = as_json(capsys, *argv)
    assert code == 0
    assert rep["schema"] == "dunklsphere.report/v1"
    assert rep["command"] == argv[0]


def test_dunkl_apply_values(capsys):
    _, rep = as_json(capsys, "dunkl-apply", "--family", "z2", "--d", "2", "--kappa", "1/2,1/2", "--poly", "x1")
    assert rep["result"]["images"] == {"D1": "2", "D2": "0"}


def test_intertwine_value(capsys):
    _, rep = as_json(capsys, "intertwine", "--family", "z2", "--d", "2", "--kappa", "1/2,1/2", "--nmax", "2", "--poly", "1 + x1")
    assert rep["result"]["V"] == "1/2*x1 + 1"
    assert rep["result"]["holds"] is True


def test_invalid_roots_exit_2(capsys):
    code, rep = as_json(capsys, "validate-roots", "--roots", "1,0;-1,0;1,1;-1,-1", "--kappa", "1,1,1,1")
    assert code == 2
    assert rep["result"]["valid"] is False


def test_errors_exit_1(capsys):
    assert invoke(capsys, "check-fundamental", "--family", "z2", "--d", "2", "--kappa", "0,0", "--g", "exp")[0] == 1
    assert invoke(capsys, "expand", "--g", "exp")[0] == 1
    assert invoke(capsys, "dunkl-apply", "--family", "z2", "--d", "2", "--kappa", "1,1", "--poly", "x1 +")[0] == 1
    assert invoke(capsys, "nonsense")[0] == 1
    code, out, err = invoke(capsys, "harmonics", "--family", "z2", "--d", "2", "--kappa", "1,1", "--format", "csv")
    assert code == 1 and "error" in err and out == ""


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"family": "z2", "d": 2, "kappa": ["1/2", "1/2"], "g": "exp", "nmax": 4}))
    code, rep = as_json(capsys, "check-fundamental", "--config", str(cfg))
    assert code == 0 and rep["result"]["n_max"] == 4
    code, rep = as_json(capsys, "check-fundamental", "--config", str(cfg), "--nmax", "6", "--g", "gegenbauer:1")
    assert rep["result"]["n_max"] == 6 and code == 2


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert invoke(capsys, "expand", "--config", str(cfg))[0] == 1


def test_rationals_stay_exact():
    cfg, _ = parse_config(["expand", "--lambda", "1/3", "--g", "exp", "--kappa", "1/2,2/7"])
    from fractions import Fraction

    assert cfg.lam == Fraction(1, 3)
    assert cfg.kappa == (Fraction(1, 2), Fraction(2, 7))


def test_rule_export(tmp_path, capsys):
    path = tmp_path / "rule.csv"
    code, rep = as_json(capsys, "rule", "--family", "z2", "--d", "2", "--kappa", "1/2,1/2", "--degree", "6", "--export", str(path))
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x1", "x2", "weight"]
    assert len(rows) - 1 == rep["result"]["nodes"]
    assert rep["result"]["mass"] == pytest.approx(2.0, abs=1e-13)


def test_run_api():
    code, rep = run(RunConfig(command="expand", lam=None, g="poly:1", family="z2", d=2, kappa=(1, 1), n_max=2))
    assert code == 0 and rep["result"]["lambda"] == "2"


def test_output_is_byte_stable(tmp_path):
    argv = [sys.executable, "-m", "dunklsphere.cli", "kernel-check", "--family", "z2", "--d", "3", "--kappa", "1,1,1", "--nmax", "4", "--seed", "5"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
