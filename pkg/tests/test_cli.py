import json
import subprocess
import sys
from fractions import Fraction

import pytest

import _oracles as orc
from sobocert.cli import main, parse_grid, parse_interval
from sobocert.errors import UsageError
from sobocert.interval import Interval


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_catalog(capsys):
    rc, out, _ = run(["catalog"], capsys)
    assert rc == 0
    doms = {d["name"]: d for d in json.loads(out)["domains"]}
    a = doms["exampleA"]
    assert (a["n"], a["M"], a["N"]) == (2, 1.0, 2)
    assert Interval.from_dict(a["eps"]) == Interval(0.25)
    b = Interval.from_dict(doms["exampleB"]["eps"])
    assert not b.is_point and orc.inside(b, orc.EPS_EXAMPLE_B)


def test_catalog_csv(capsys):
    rc, out, _ = run(["catalog", "--format", "csv"], capsys)
    assert rc == 0 and out.splitlines()[0] == "param,lo,hi,branch"


def test_constants_report(capsys):
    rc, out, _ = run(["constants", "--n", "2", "--moments", "1", "--moment-tol", "1e-4"], capsys)
    assert rc == 0
    rep = json.loads(out)
    A0 = Interval.from_dict(rep["kernel"]["A0"]["value"])
    assert A0.intersects(Interval.from_decimal("12.8860", "12.8861"))
    assert rep["inputs"]["c_omega"] == 4.83
    assert rep["kernel"]["A0"]["wall_ms"] is None
    assert Interval.from_dict(rep["moments"][0]["value"]).contains(1.0)


def test_constants_byte_identical(capsys):
    args = ["constants", "--n", "2", "--moments", "0", "--moment-tol", "1e-4"]
    _, first, _ = run(args, capsys)
    _, second, _ = run(args, capsys)
    assert first == second


def test_negative_c_omega(capsys):
    rc, _, err = run(["constants", "--c-omega", "-1"], capsys)
    assert rc == 2 and "C_omega" in err


def test_bound_example_a(capsys, tmp_path):
    out_file = tmp_path / "bound.json"
    rc, out, _ = run(["bound", "--domain", "exampleA", "--p", "4", "--tau", "8.12", "--measure", "3", "--out", str(out_file)], capsys)
    assert rc == 0 and out == ""
    rep = json.loads(out_file.read_text())
    kinds = [r["kind"] for r in rep["records"]]
    assert kinds == ["A_q", "T_p", "C_p", "C_p_prime"]
    for r in rep["records"]:
        v = Interval.from_dict(r["value"])
        assert 0 < v.lo <= v.hi < float("inf")
        assert set(r) == {"kind", "value", "inputs", "branch_taken", "formula_variant", "wall_ms"}
        assert r["inputs"]["run"]["tau"] == 8.12


def test_bound_forced_first_branch(capsys):
    rc, out, _ = run(["bound", "--n", "2", "--M", "1", "--N", "2", "--eps", "0.25", "--p", "4", "--tau", "8.12", "--sigma", "1e30"], capsys)
    assert rc == 0
    rec = json.loads(out)["records"][0]
    assert rec["kind"] == "A_q" and rec["branch_taken"] == "R<=gamma"


def test_h1_without_measure(capsys):
    rc, _, err = run(["bound", "--domain", "exampleA", "--p", "4", "--tau", "8.12", "--h1"], capsys)
    assert rc == 3 and "measure" in err


def test_missing_tau(capsys):
    rc, _, _ = run(["bound", "--domain", "exampleA", "--p", "4"], capsys)
    assert rc == 2


def test_unknown_domain(capsys):
    rc, _, err = run(["bound", "--domain", "nowhere", "--p", "4", "--tau", "1"], capsys)
    assert rc == 2 and "unknown domain" in err


def test_bad_p(capsys):
    rc, _, _ = run(["bound", "--domain", "exampleA", "--p", "2", "--tau", "1"], capsys)
    assert rc == 2


def test_sweep_tau_csv(capsys):
    rc, out, _ = run(["sweep", "--domain", "exampleA", "--p", "4", "--grid", "1:20:0.05", "--format", "csv"], capsys)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "param,lo,hi,branch"
    argmin = float(lines[-1].split(",")[0].split("=")[1])
    assert abs(argmin - 8.12) <= 0.2


def test_sweep_empty_grid(capsys):
    rc, _, _ = run(["sweep", "--domain", "exampleA", "--p", "4", "--grid", ""], capsys)
    assert rc == 2


def test_sweep_p_example_b(capsys):
    rc, out, _ = run(["sweep", "--domain", "exampleB", "--axis", "p", "--grid", "4,6,8", "--format", "csv"], capsys)
    assert rc == 0
    rows = out.splitlines()[1:-1]
    assert len(rows) == 3
    for row in rows:
        _, lo, hi, _ = row.split(",")
        assert 0 < float(lo) <= float(hi) < float("inf")


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\ndomain = exampleA\np = 4\ntau = 5.0\n")
    rc, out, _ = run(["bound", "--config", str(cfg), "--tau", "8.12"], capsys)
    assert rc == 0
    rep = json.loads(out)
    assert rep["inputs"]["tau"] == 8.12 and rep["inputs"]["p"] == "4"


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\ncolour = red\n")
    rc, _, _ = run(["catalog", "--config", str(cfg)], capsys)
    assert rc == 2


def test_thread_env_rejected(capsys, monkeypatch):
    monkeypatch.setenv("SOBOCERT_THREADS", "-2")
    rc, _, _ = run(["sweep", "--domain", "exampleA", "--p", "4", "--grid", "7,8,9"], capsys)
    assert rc == 2


def test_parse_helpers():
    assert parse_grid("1:2:0.5") == [1.0, 1.5, 2.0]
    assert parse_grid("3,4") == [3.0, 4.0]
    with pytest.raises(UsageError):
        parse_grid("")
    iv = parse_interval("0.1,0.2")
    assert Fraction(iv.lo) < Fraction(1, 10) and Fraction(iv.hi) > Fraction(1, 5)
    with pytest.raises(UsageError):
        parse_interval("abc")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "sobocert", "catalog"], capture_output=True, text=True)
    assert r.returncode == 0 and "exampleB" in r.stdout
