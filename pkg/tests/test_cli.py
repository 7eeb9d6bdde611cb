import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from lcdbch.cli import ResultRecord, main


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("LCDBCH_CACHE_DIR", str(tmp_path))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_leaders(capsys):
    code, out, _ = run(capsys, "leaders", "--q", "3", "--m", "4", "--count", "4")
    assert code == 0
    assert [r["leader"] for r in records(out)] == [41, 16, 14, 13]
    _, out, _ = run(capsys, "leaders", "--q", "3", "--m", "6", "--lambda", "2", "--count", "3")
    assert [r["leader"] for r in records(out)] == [73, 71, 65]
    _, out, _ = run(capsys, "leaders", "--q", "3", "--m", "2", "--count", "1")
    assert [r["leader"] for r in records(out)] == [5]


def test_leaders_closed_carries_provenance(capsys):
    _, out, _ = run(capsys, "leaders", "--q", "3", "--m", "6", "--method", "closed")
    recs = records(out)
    assert [r["provenance"] for r in recs] == ["proven", "proven", "conjectural", "conjectural"]


def test_fast_method_uncovered(capsys):
    code, _, err = run(capsys, "leaders", "--q", "3", "--m", "6", "--lambda", "2", "--method", "fast")
    assert code == 2 and "brute" in err


def test_cache_is_byte_identical(capsys, cache_dir):
    argv = ("leaders", "--q", "5", "--m", "4", "--count", "4", "--no-timing")
    _, first, _ = run(capsys, *argv)
    assert (cache_dir / "leaders.csv").exists()
    _, second, _ = run(capsys, *argv)
    assert first == second
    lines = (cache_dir / "leaders.csv").read_text().splitlines()
    assert lines[0] == "q,m,lambda,rank,leader,coset_size,method" and len(lines) == 5


def test_dim(capsys):
    _, out, _ = run(capsys, "dim", "--q", "3", "--m", "12", "--delta", "103697")
    assert records(out)[0]["k"] == 9
    code, out, _ = run(capsys, "dim", "--q", "5", "--m", "4", "--lambda", "2", "--delta", "11",
                       "--mode", "both")
    assert code == 0 and records(out)[0]["k"] == 248 and records(out)[0]["provenance"] == "proven"
    _, out, _ = run(capsys, "dim", "--q", "3", "--m", "4", "--delta", "2")
    assert records(out)[0]["k"] == 81


def test_theorem_delta_flag(capsys):
    _, out, _ = run(capsys, "dim", "--q", "3", "--m", "4", "--delta", "16", "--theorem-delta")
    rec = records(out)[0]
    assert rec["delta"] == 17 and rec["k"] == 9


@pytest.mark.parametrize("argv", [
    ("dim", "--q", "3", "--m", "4", "--delta", "1"),
    ("dim", "--q", "3", "--m", "4", "--delta", "83"),
    ("dim", "--q", "3", "--m", "4", "--lambda", "4", "--delta", "5"),
    ("dim", "--q", "3", "--m", "4", "--delta", "5", "--mode", "closed"),
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_code(capsys):
    code, out, _ = run(capsys, "code", "--q", "5", "--m", "3", "--lambda", "3", "--delta", "8")
    rec = records(out)[0]
    assert code == 0
    assert (rec["n"], rec["k"], rec["d_exact"], rec["lcd"]) == (42, 11, 14, True)


def test_code_without_budget_reports_bound(capsys):
    _, out, _ = run(capsys, "code", "--q", "3", "--m", "4", "--delta", "15", "--samples", "500",
                    "--emit-generator")
    rec = records(out)[0]
    assert rec["k"] == 17 and rec["lcd"] and rec["d_lower"] == 28
    assert rec["d_exact"] is None and rec["d_upper"] >= 28


def test_code_desk_scale(capsys):
    code, out, err = run(capsys, "code", "--q", "3", "--m", "12", "--delta", "103697")
    rec = records(out)[0]
    assert code == 3
    assert rec["method"] == "params-only" and rec["d_lower"] == 207392 and rec["k"] == 9
    assert "skipped" in err


def test_formats(capsys):
    _, out, _ = run(capsys, "leaders", "--q", "3", "--m", "4", "--format", "csv", "--no-cache")
    assert out.splitlines()[0].startswith("q,m,n,lambda") and len(out.splitlines()) == 5
    _, out, _ = run(capsys, "leaders", "--q", "3", "--m", "4", "--format", "table", "--no-cache")
    assert "leader" in out.splitlines()[0]


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "examples")
    assert code == 0 and "13/13 checks passed" in out
    code, out, _ = run(capsys, "verify", "--suite", "conjecture", "--q", "3", "--m-max", "8")
    assert code == 0 and "FAIL" not in out


@given(st.integers(2, 13), st.integers(1, 6), st.sampled_from([1, 2]),
       st.one_of(st.none(), st.integers(0, 10 ** 6)), st.one_of(st.none(), st.booleans()),
       st.sampled_from([None, "proven", "conjectural", "brute-force"]))
def test_record_round_trip(q, m, lam, k, lcd, prov):
    rec = ResultRecord(q=q, m=m, n=(q ** m + 1) // lam, lam=lam, k=k, lcd=lcd, provenance=prov)
    text = rec.to_json()
    assert json.loads(text)["lambda"] == lam
    assert ResultRecord.from_json(text) == rec


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "lcdbch.cli", "leaders", "--q", "3", "--m", "4",
                          "--no-cache", "--format", "csv", "--no-timing"],
                         capture_output=True, text=True, check=True).stdout
    assert "41" in out


def test_delta_convention_flags(capsys):
    _, a, _ = run(capsys, "dim", "--q", "3", "--m", "4", "--delta", "17", "--delta-is-code-param", "--no-timing")
    _, b, _ = run(capsys, "dim", "--q", "3", "--m", "4", "--delta", "17", "--no-timing")
    assert a == b
    with pytest.raises(SystemExit):
        main(["dim", "--q", "3", "--m", "4", "--delta", "17", "--theorem-delta", "--delta-is-code-param"])
