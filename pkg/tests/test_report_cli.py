import csv
import io
import json

import numpy as np
import pytest

from zetalab import cli, suites
from zetalab.report import SCHEMA, CheckRecord, VerificationReport
from zetalab.suites import ConfigError, RunConfig


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


# --- report schema ----------------------------------------------------------------

def test_record_status_and_oracle():
    r = CheckRecord("x", "a = b", {"s": 1 + 2j}, 1.0, 1.0, 0.0, 1e-12, "TRIVIAL")
    assert r.passed and r.to_dict()["inputs"] == {"s": [1.0, 2.0]}
    assert not CheckRecord("y", "", {}, 1.0, 2.0, 1.0, 1e-3, "DERIVED").passed
    with pytest.raises(ValueError):
        CheckRecord("z", "", {}, 0, 0, 0, 1, "GUESS")


def test_report_round_trip():
    rep = VerificationReport()
    rep.add(CheckRecord("a", "id", {"k": 3, "s": 0.5 + 1j}, 0.5 - 2j, [0.5, -2.0], 1e-15, 1e-12,
                        "PAPER"))
    rep.add(CheckRecord("b", "id2", {}, np.float64(2.0), 2.0, 3.0, 1.0, "DERIVED"))
    rep.timings["borel"] = 0.25
    again = VerificationReport.loads(rep.dumps())
    assert again.dumps() == rep.dumps()
    assert again.status == "fail" and [c.id for c in again.failures()] == ["b"]
    d = json.loads(rep.dumps())
    assert d["schema"] == SCHEMA and "timings" not in json.loads(rep.canonical())


def test_report_rejects_other_schema():
    with pytest.raises(ValueError):
        VerificationReport.from_dict({"schema": "other/2", "checks": []})


# --- run configuration ------------------------------------------------------------

def test_run_config_guards():
    assert RunConfig(tolerances={"s1": 1e-10}).tol("s1") == 1e-10
    with pytest.raises(ConfigError):
        RunConfig(tolerances={"s1": 1e-3})
    assert RunConfig(tolerances={"s1": 1e-3}, allow_loose=True).tol("s1") == 1e-3
    for bad in ({"suites": ("nope",)}, {"tolerances": {"eta": 1e-20}}, {"height_max": 500},
                {"threads": 0}, {"n_max": 4}, {"tolerances": {"s1": -1.0}}):
        with pytest.raises(ConfigError):
            RunConfig(**bad)
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"colour": "blue"})
    assert RunConfig(suites=("operators", "su11")).suites == ("su11",)


def test_suite_filter():
    rep = suites.run(RunConfig(suites=("su11",), threads=1))
    # the operator suite covers the algebra and the matrix structure
    assert rep.checks and {c.id.split(".")[0] for c in rep.checks} == {"su11", "htilde"}
    assert all(c.oracle in ("PAPER", "TRIVIAL", "DERIVED") for c in rep.checks)


def test_determinism_and_thread_independence():
    cfg = dict(suites=("specfun", "quadrature", "weightspace"), seed=5)
    a = suites.run(RunConfig(threads=1, **cfg)).canonical()
    b = suites.run(RunConfig(threads=1, **cfg)).canonical()
    c = suites.run(RunConfig(threads=3, **cfg)).canonical()
    assert a == b == c


def test_seed_changes_random_grids():
    a = suites.run(RunConfig(suites=("specfun",), seed=1, threads=1)).canonical()
    b = suites.run(RunConfig(suites=("specfun",), seed=2, threads=1)).canonical()
    assert a != b


# --- verify -----------------------------------------------------------------------

def test_cli_verify_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, stdout, _ = run_cli(["verify", "--suite", "su11", "--suite", "borel",
                               "--threads", "2", "--out", str(out)], capsys)
    rep = VerificationReport.loads(out.read_text())
    ids = {c.id.split(".")[0] for c in rep.checks}
    assert ids == {"su11", "htilde", "borel"}
    assert code == (0 if rep.passed else 1)
    assert "passed" in stdout.splitlines()[-1]


def test_cli_verify_exit_codes(tmp_path, capsys):
    assert run_cli(["verify", "--suite", "su11", "--out", str(tmp_path / "a.json")], capsys)[0] == 0
    assert run_cli(["verify", "--tolerance", "su11=1e-3"], capsys)[0] == 2
    assert run_cli(["verify", "--tolerance", "eta=1e-3"], capsys)[0] == 2
    assert run_cli(["verify", "--tolerance", "su11"], capsys)[0] == 2
    assert run_cli(["verify", "--suite", "astrology"], capsys)[0] == 2
    assert run_cli(["frobnicate"], capsys)[0] == 2
    # an impossible tolerance turns passing checks into failures: exit 1
    assert run_cli(["verify", "--suite", "su11", "--tolerance", "htilde=1e-300"], capsys)[0] == 1
    assert run_cli(["verify", "--suite", "su11",
                    "--out", str(tmp_path / "missing" / "r.json")], capsys)[0] == 3


def test_cli_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    out_cfg, out_flag = tmp_path / "from_config.json", tmp_path / "from_flag.json"
    cfg.write_text(json.dumps({"suites": ["su11"], "out": str(out_cfg), "threads": 1,
                               "tolerances": {"su11": 1e-13}}))
    assert run_cli(["verify", "--config", str(cfg)], capsys)[0] == 0
    rec = VerificationReport.loads(out_cfg.read_text()).checks[0]
    assert rec.tolerance == 1e-13
    run_cli(["verify", "--config", str(cfg), "--out", str(out_flag),
             "--tolerance", "su11=1e-12"], capsys)
    assert VerificationReport.loads(out_flag.read_text()).checks[0].tolerance == 1e-12


def test_cli_bad_config_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(["verify", "--config", str(bad)], capsys)[0] == 2
    assert run_cli(["verify", "--config", str(tmp_path / "absent.json")], capsys)[0] == 3


def test_cli_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    run_cli(["verify", "--suite", "su11", "--out", str(out)], capsys)
    code, stdout, _ = run_cli(["report", str(out)], capsys)
    assert code == 0 and stdout.strip().endswith("status: pass")
    assert run_cli(["report", str(tmp_path / "none.json")], capsys)[0] == 3


# --- zeros, scan, eigfun ----------------------------------------------------------

@pytest.mark.parametrize("height, rows", [(50, 10), (15, 1), (5, 0)])
def test_cli_zeros(tmp_path, capsys, height, rows):
    out = tmp_path / "z.csv"
    assert run_cli(["zeros", "--height-max", str(height), "--out", str(out)], capsys)[0] == 0
    data = read_csv(out)
    assert data[0] == ["index", "height", "residual", "eigenvalue_re", "eigenvalue_im"]
    heights = [float(r[1]) for r in data[1:]]
    assert len(heights) == rows and heights == sorted(set(heights))
    if rows == 1:
        assert abs(heights[0] - 14.134725) < 1e-6
    assert all(abs(float(r[4])) <= 1e-9 for r in data[1:])


def test_cli_zeros_limits(capsys):
    assert run_cli(["zeros", "--height-max", "150"], capsys)[0] == 2


def test_cli_zeros_stdout(capsys):
    code, stdout, _ = run_cli(["zeros", "--height-max", "22"], capsys)
    rows = list(csv.reader(io.StringIO(stdout)))
    assert code == 0 and len(rows) == 3


def test_cli_scan_Z_brackets_zeros(tmp_path, capsys):
    out, zout = tmp_path / "s.csv", tmp_path / "z.csv"
    run_cli(["scan", "Z", "--t-min", "10", "--t-max", "30", "--step", "0.05", "--out", str(out)],
            capsys)
    run_cli(["zeros", "--height-max", "30", "--out", str(zout)], capsys)
    rows = [[float(v) for v in r] for r in read_csv(out)[1:]]
    assert all(r[2] == 0.0 for r in rows)
    crossings = [(a[0], b[0]) for a, b in zip(rows, rows[1:]) if a[1] * b[1] < 0]
    zeros = [float(r[1]) for r in read_csv(zout)[1:] if float(r[1]) >= 10]
    assert len(crossings) == len(zeros) == 3
    assert all(lo <= z <= hi for (lo, hi), z in zip(crossings, zeros))


def test_cli_scan_boundary_dips(tmp_path, capsys):
    out = tmp_path / "b.csv"
    run_cli(["scan", "boundary", "--t-min", "13.5", "--t-max", "14.8", "--step", "0.001",
             "--out", str(out)], capsys)
    rows = [[float(v) for v in r] for r in read_csv(out)[1:]]
    mags = np.array([r[3] for r in rows])
    i = int(np.argmin(mags))
    assert abs(rows[i][0] - 14.134725) < 0.001
    # Gamma makes the envelope fall steeply, so compare with points 0.5 away
    assert mags[i] < 1e-2 * min(mags[i - 500], mags[i + 500])


def test_cli_scan_domain_limit_is_real_on_line(tmp_path, capsys):
    out = tmp_path / "d.csv"
    run_cli(["scan", "domain_limit", "--t-min", "1", "--t-max", "3", "--step", "0.5",
             "--out", str(out)], capsys)
    rows = [[float(v) for v in r] for r in read_csv(out)[1:]]
    assert len(rows) == 5 and all(abs(r[2]) <= 1e-15 * r[3] for r in rows)


def test_cli_scan_empty_and_bad(tmp_path, capsys):
    out = tmp_path / "e.csv"
    assert run_cli(["scan", "Z", "--t-min", "5", "--t-max", "4", "--out", str(out)], capsys)[0] == 0
    assert read_csv(out) == [["t", "re", "im", "abs"]]
    assert run_cli(["scan", "Z", "--step", "0"], capsys)[0] == 2


def test_cli_eigfun(tmp_path, capsys):
    out = tmp_path / "e.csv"
    code, _, _ = run_cli(["eigfun", "--s", "0.5+3j", "--x-max", "4", "--num", "5",
                          "--out", str(out)], capsys)
    rows = read_csv(out)
    assert code == 0 and rows[0] == ["x", "re", "im", "error"] and len(rows) == 6
    assert run_cli(["eigfun", "--t", "0.9"], capsys)[0] == 2
