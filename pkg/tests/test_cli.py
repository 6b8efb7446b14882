import io
import json
import subprocess
import sys

import pytest

from zsinterval.cli import OutputRecord, run
from zsinterval.davenport import davenport_formula, davenport_oracle
from zsinterval.effective_bounds import jacobsthal
from zsinterval.rho_chi import chi, rho


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stream=buf)
    return code, buf.getvalue()


def records(*argv):
    code, out = call(*argv, "--format", "json")
    return code, [json.loads(line) for line in out.splitlines()]


def test_rho_record():
    code, recs = records("rho", "6", "10")
    assert code == 0 and len(recs) == 1
    w = rho((6, 10))
    assert recs[0]["results"] == {"t": w.t, "t_prime": w.t_prime, "t_second": w.t_second}
    assert recs[0]["results"]["t"] == 2
    code, text = call("rho", "6", "10")
    assert text == "rho: M=10 m=6 t=2 t_prime=1 t_second=1\n"


def test_davenport_record():
    code, recs = records("davenport", "4", "6", "--oracle")
    res = recs[0]["results"]
    assert code == 0
    assert (res["formula"], res["oracle"], res["agrees"]) == (9, 9, True)
    assert res["formula"] == davenport_formula((4, 6)) and res["oracle"] == davenport_oracle((4, 6))


def test_davenport_extremal_record():
    _, recs = records("davenport", "2", "2", "--extremal")
    assert recs[0]["results"]["extremal"] == ["-2,1^2", "-1^2,2"]


def test_davenport_refuses_oracle_above_desk_limit(capsys):
    code, recs = records("davenport", "10", "10", "--oracle")
    assert code == 0
    res = recs[0]["results"]
    assert res["oracle"] is None and res["formula"] == 19 and "oracle_refused" in res
    code, recs = records("davenport", "9", "9", "--oracle", "--desk-limit", "18")
    assert recs[0]["results"]["oracle"] == 17


def test_jacobsthal_record():
    code, recs = records("jacobsthal", "6", "30")
    assert code == 0
    assert [r["results"]["g"] for r in recs] == [4, 6]
    assert recs[0]["results"]["kanold_bound"] == jacobsthal(6).kanold_bound
    _, recs = records("jacobsthal", "1")
    assert recs[0]["results"]["stevens_bound"] == "inf"
    assert recs[0]["results"]["robin_omega_bound"] is None


def test_chi_record():
    _, recs = records("chi", "6", "10")
    assert recs[0]["results"]["chi"] == chi((6, 10)) == 14


def test_order_record():
    code, recs = records("order", "--lemma", "2", "--seq", "1,2,-3")
    res = recs[0]["results"]
    assert code == 0
    assert res["order"] == [1, -3, 2] and res["prefix_sums"] == [1, -2, 0]
    assert res["valid"] and res["case_label"] == "L2"
    _, recs = records("order", "--lemma", "4", "--seq", "3^2,-2^3", "--interval", "4", "4")
    assert recs[0]["results"]["case_label"] == "L4_ii"


def test_gate_record():
    _, recs = records("bounds-gate", "255", "8573136")
    res = recs[0]["results"]
    assert res["rho"] == 4 and res["gate"] is True and res["small_min_bound"] == 15


def test_verify_exits_zero_without_mismatches():
    code, recs = records("verify", "--m-max", "7", "--M-max", "7", "--jobs", "2")
    assert code == 0
    assert len(recs) == 50
    assert recs[-1]["results"] == {"mismatches": 0, "pairs": 49}
    assert [(r["inputs"]["m"], r["inputs"]["M"]) for r in recs[:-1]] == \
        [(m, M) for m in range(1, 8) for M in range(1, 8)]


def test_jobs_do_not_change_output():
    a = call("verify", "--m-max", "4", "--M-max", "5", "--jobs", "1", "--format", "json")
    b = call("verify", "--m-max", "4", "--M-max", "5", "--jobs", "3", "--format", "json")
    assert a == b


def test_search_records(tmp_path):
    code, recs = records("search", "--rho-at-least", "4", "--m-max", "319", "--min-partner",
                         "--tables-dir", str(tmp_path))
    assert code == 0
    assert [r["inputs"]["m"] for r in recs] == [255, 286]
    assert [r["results"]["M"] for r in recs] == [1_837_056, 4_962_971]
    assert sorted(p.name for p in tmp_path.iterdir()) == ["table_m255_r4.csv", "table_m286_r4.csv"]
    assert tmp_path.joinpath("table_m255_r4.csv").read_text().startswith("row,m,m-1,m-2,m-3\n")
    _, recs = records("search", "--rho-at-least", "3", "--m-max", "21")
    assert recs == [{"command": "search", "inputs": {"m_max": 21, "r": 3},
                     "provenance": ["record:prime-table"],
                     "results": {"count": 0, "exists": False}}]


def test_crossover_record():
    code, recs = records("crossover-check")
    assert code == 0 and recs[0]["results"]["passed"] is True
    assert recs[0]["results"]["constant_boundary"] == 319


def test_csv_output():
    code, out = call("jacobsthal", "6", "7", "--format", "csv")
    lines = out.splitlines()
    assert lines[0].startswith("command,in.n,out.g,")
    assert lines[1].startswith("jacobsthal,6,4,") and lines[2].startswith("jacobsthal,7,2,")


def test_record_serialisation_is_sorted():
    rec = OutputRecord("x", {"b": 1, "a": 2}, {"z": [1], "y": None}, ["p"])
    assert rec.to_json() == ('{"command": "x", "inputs": {"a": 2, "b": 1}, "provenance": ["p"], '
                             '"results": {"y": null, "z": [1]}}')


@pytest.mark.parametrize("argv", [[], ["rho", "6"], ["rho", "0", "3"], ["rho", "a", "3"],
                                  ["order", "--seq", "1,-1"], ["frobnicate"],
                                  ["order", "--lemma", "5", "--seq", "1,-1"]])
def test_usage_errors_exit_two(argv, capsys):
    code, _ = call(*argv)
    assert code == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["order", "--lemma", "2", "--seq", "0,1"],
                                  ["order", "--lemma", "2", "--seq", "1,-1"],
                                  ["order", "--lemma", "3", "--seq", "1,1,-1"]])
def test_domain_errors_exit_one(argv, capsys):
    code, out = call(*argv)
    assert code == 1 and out == ""
    assert capsys.readouterr().err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zsinterval", "jacobsthal", "6"],
                          capture_output=True, text=True, check=True)
    assert "g=4" in proc.stdout


def test_flags_before_or_after_subcommand():
    before = call("--format", "json", "--desk-limit", "18", "davenport", "9", "9", "--oracle")
    after = call("davenport", "9", "9", "--oracle", "--format", "json", "--desk-limit", "18")
    assert before == after
    assert json.loads(before[1])["results"]["oracle"] == 17
