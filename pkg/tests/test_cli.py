import io
import json

import pytest

from rrverify import cli
from rrverify.identities import IdentityReport
from rrverify.qseries import QSeries


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_json():
    code, out, _ = run("verify", "--id", "bivariate_12", "--order", "24", "--format", "json")
    assert code == 0
    rep = IdentityReport.from_json(out)
    assert rep.ok and rep.order == 24


def test_count():
    assert run("count", "--a", "1", "--m", "2", "--n", "1")[:2] == (0, "2\n")
    code, out, _ = run("count", "--a", "2", "--m", "2", "--n", "1", "--omega", "1",
                       "--format", "json")
    assert json.loads(out)["count"] == 1


def test_list():
    code, out, _ = run("list")
    assert code == 0 and "ariki_mathas_enum" in out
    code, out, _ = run("list", "--format", "json")
    assert len(out.strip().splitlines()) >= 20


def test_table_formats():
    code, out, _ = run("table", "--a", "1", "--m", "2", "--max-n", "3", "--format", "csv")
    assert out.splitlines() == ["n,count", "0,1", "1,2", "2,2", "3,4"]
    code, out, _ = run("table", "--a", "1", "--m", "2", "--max-n", "0", "--format", "json")
    assert json.loads(out) == [{"n": 0, "count": 1}]
    code, out, _ = run("table", "--a", "2", "--m", "2", "--max-n", "1", "--by-omega",
                       "--format", "csv")
    assert out.splitlines()[-1] == "1,1,1"
    code, out, _ = run("table", "--a", "1", "--m", "2", "--max-n", "2")
    assert code == 0 and out.splitlines()[0].split() == ["n", "count"]


def test_exit_codes():
    assert run("bogus")[0] == 2
    assert run("verify")[0] == 2
    assert run("count", "--a", "1")[0] == 2
    assert run("verify", "--id", "missing")[0] == 3
    assert run("count", "--a", "1", "--m", "2", "--n", "31")[0] == 3
    assert run("count", "--a", "1", "--m", "2", "--n", "31", "--budget", "31")[0] == 0
    assert run("verify", "--id", "wellpoised", "--param", "alpha=99")[0] == 3
    assert run("table", "--a", "1", "--m", "2", "--max-n", "99")[0] == 3
    assert run("--help")[0] == 0


def test_budget_environment(monkeypatch):
    monkeypatch.setenv("RRVERIFY_BUDGET", "3")
    assert run("count", "--a", "1", "--m", "2", "--n", "4")[0] == 3


def test_verify_params_and_csv():
    code, out, _ = run("verify", "--id", "andrews", "--param", "a=2", "--param", "m=3",
                       "--format", "csv")
    assert code == 0
    header, row = out.splitlines()
    assert header.split(",")[:4] == ["id", "params", "order", "status"]
    assert row.startswith("andrews,a=2;m=3,40,MATCH")


def test_all_exit_code(monkeypatch):
    code, out, _ = run("all", "--format", "json", "--jobs", "2")
    lines = out.strip().splitlines()
    assert code == 0
    assert all(IdentityReport.from_json(line).ok for line in lines)
    code, _, _ = run("all", "--order", "45")
    assert code == 3


def test_all_reports_mismatch(monkeypatch):
    from rrverify import identities as R

    real = R.verify

    def broken(identity, params=None, order=None, perturb=False, oracle=False, budget=None):
        return real(identity, params, order, perturb=identity == "jtp", oracle=oracle,
                    budget=budget)

    monkeypatch.setattr(R, "verify", broken)
    code, out, _ = run("all")
    assert code == 1 and "MISMATCH" in out


def test_series_json_round_trip():
    code, out, _ = run("series", "--id", "jtp", "--param", "z=2", "--order", "8",
                       "--format", "json")
    assert code == 0
    s = QSeries.from_json(json.loads(out))
    assert s.order == 8 and not s.is_univariate()
    code, out, _ = run("series", "--id", "jtp", "--side", "rhs", "--order", "3",
                       "--format", "csv")
    assert out.splitlines()[0] == "q_exp,x_exp,coeff"


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "rrverify", "count", "--a", "2",
                           "--m", "2", "--n", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
