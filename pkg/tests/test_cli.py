import json
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from ewenspitman import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pmf_plain(capsys):
    code, out, _ = run(capsys, "pmf", "--lambda", "2,2,1", "--alpha", "1/2", "--theta", "1")
    assert code == 0
    assert out.split()[0] == "3/32"
    assert out.split()[1] == "0.093750000000"


def test_pmf_json_schema(capsys):
    code, out, _ = run(capsys, "pmf", "--lambda", "1", "--alpha", "1/4", "--theta", "3", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert set(rec) == {"query", "value", "decimal", "route", "verified"}
    assert rec["value"] == "1" and rec["decimal"] == "1.000000000000"


def test_pmf_verify_all_routes(capsys):
    code, out, _ = run(capsys, "pmf", "--lambda", "3,2,2,1", "--alpha", "1/3", "--theta", "2",
                       "--verify", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["verified"] is True and rec["route"] == "all"


def test_pmf_errors(capsys):
    code, _, err = run(capsys, "pmf", "--lambda", "2,2,1", "--alpha", "0/1", "--theta", "1", "--route", "newton")
    assert code == 2 and "AlphaZero" in err
    code, _, err = run(capsys, "pmf", "--lambda", "2,2,1", "--alpha", "1", "--theta", "1")
    assert code == 2 and "ParamRange" in err
    with pytest.raises(SystemExit) as info:
        cli.main(["pmf", "--lambda", "1,2"])
    assert info.value.code == 2
    assert "did you mean 2,1" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        cli.main(["pmf", "--lambda", "2,x"])


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "table", "marginal-length", "--n", "7", "--alpha", "2/7", "--theta", "5/3",
                       "--format", "json")
    rows = json.loads(out)
    from ewenspitman.ewens_pitman import EPParams, marginal_length

    p = EPParams(F(2, 7), F(5, 3))
    for row in rows:
        assert F(row["value"]) == marginal_length(p, 7, row["query"]["l"])


def test_table_marginal_sums_to_one(capsys):
    code, out, _ = run(capsys, "table", "marginal-length", "--n", "6", "--alpha", "1/2", "--theta", "1",
                       "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 6
    assert sum(F(r["value"]) for r in rows) == 1


def test_table_stirling_matches_bell(capsys):
    from ewenspitman.riordan import GStirlingParams, gstirling_bell

    code, out, _ = run(capsys, "table", "stirling", "--a", "-1", "--b", "-1/2", "--c", "0", "--n", "4",
                       "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 15
    p = GStirlingParams(-1, F(-1, 2), 0)
    for r in rows:
        assert F(r["value"]) == gstirling_bell(p, r["query"]["n"], r["query"]["l"])


def test_table_riordan_entry(capsys):
    code, out, _ = run(capsys, "table", "riordan-entry", "--d", "exp", "--h", "id", "--n", "5", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0].startswith("d,h,n,k,value")
    assert [line.split(",")[4] for line in lines[1:]] == ["1", "5", "10", "10", "5", "1"]


def test_table_ftra_normalization(capsys):
    code, out, _ = run(capsys, "table", "ftra", "--d", "one", "--h", "ep-h", "--series", "ep-c", "--n", "5",
                       "--alpha", "1/2", "--theta", "1", "--verify", "--format", "json")
    rows = json.loads(out)
    assert [r["value"] for r in rows] == ["1", "1", "2", "6", "24", "120"]
    assert all(r["verified"] for r in rows)


def test_table_other_kinds(capsys):
    code, out, _ = run(capsys, "table", "moment-length", "--n", "3", "--verify", "--format", "json")
    assert json.loads(out)[0]["value"] == "19/8"
    code, out, _ = run(capsys, "table", "moment-sizes", "--n", "2", "--orders", "1", "--format", "json")
    assert json.loads(out)[0]["value"] == "3/2"
    code, out, _ = run(capsys, "table", "cond-moment", "--mu", "1", "--m", "1", "--orders", "1",
                       "--verify", "--format", "json")
    assert json.loads(out)[0]["value"] == "3/4"
    code, out, _ = run(capsys, "table", "cond-moment", "--mu", "2,1", "--m", "3", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 6


def test_table_bound_violation(capsys):
    code, out, _ = run(capsys, "table", "moment-sizes", "--n", "13", "--orders", "1", "--route", "bruteforce",
                       "--format", "json")
    assert code == 0 and "error" in json.loads(out)[0]
    code, _, err = run(capsys, "table", "moment-sizes", "--n", "13", "--orders", "1", "--route", "bruteforce",
                       "--strict")
    assert code == 2
    code, out, _ = run(capsys, "table", "moment-sizes", "--n", "13", "--orders", "1", "--route", "bruteforce",
                       "--oracle-bound", "13", "--format", "json")
    assert "error" not in json.loads(out)[0]


def test_table_usage_errors(capsys):
    assert run(capsys, "table", "stirling", "--a", "-1")[0] == 2
    assert run(capsys, "table", "riordan-entry", "--d", "nope", "--h", "id", "--n", "3")[0] == 2


def test_output_is_deterministic(capsys):
    args = ["table", "cond-moment", "--mu", "3,1", "--m", "3", "--alpha", "1/4", "--format", "csv"]
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second


def test_decimal_string():
    assert cli.decimal_string(F(1, 3)) == "0.333333333333"
    assert cli.decimal_string(F(2, 3)) == "0.666666666667"
    assert cli.decimal_string(F(-1, 8)) == "-0.125000000000"
    assert cli.decimal_string(F(5, 10**13)) == "0.000000000000"  # ties go to even


def test_negative_value_joining():
    assert cli._join_negative_values(["--b", "-1/2", "--a", "-1"]) == ["--b=-1/2", "--a=-1"]


def test_verify_small_scale(capsys):
    start = time.perf_counter()
    code, out, _ = run(capsys, "verify", "--max-n", "4")
    assert code == 0 and time.perf_counter() - start < 5
    assert "all 14 checks passed" in out


def test_verify_fault_injection(monkeypatch, capsys):
    from ewenspitman import symfun
    from ewenspitman.symfun import FLambda

    real = symfun.altrep_f_lambda

    def flipped(lam, alpha):
        f = real(lam, alpha)
        coeffs = list(f.poly.coeffs)
        if coeffs:
            coeffs[-1] = -coeffs[-1]
        return FLambda(lam, f.alpha, type(f.poly)(coeffs))

    monkeypatch.setattr(symfun, "altrep_f_lambda", flipped)
    code, out, err = run(capsys, "verify", "--max-n", "4")
    assert code == 1
    assert "FAIL three-representations" in out
    assert "counterexample" in err and "lambda" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ewenspitman", "pmf", "--lambda", "2,2,1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("3/32")
