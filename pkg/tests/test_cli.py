import csv
import io
import json
import subprocess
import sys

import pytest

from padbin.cli import run_to_string
from padbin.sweep import ordered_map, partition


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_verify_theorem0():
    code, out = run_to_string(["verify", "theorem0", "--n", "2", "--m", "7", "--p", "7"])
    (rec,) = records(out)
    assert code == 0
    assert rec["observed_order"] == 5 and rec["required_order"] == 5 and rec["pass"]
    assert rec["value"] == "33614" and rec["difference_oracle_agrees"]


def test_coeffs():
    code, out = run_to_string(["coeffs", "--n", "3"])
    (rec,) = records(out)
    assert code == 0
    assert rec["c"] == ["60", "-54", "20", "-3"] and rec["L"] == "12" and rec["pass"]


def test_wolstenholme_search():
    code, out = run_to_string(["wolstenholme", "--p-max", "100"])
    recs = records(out)
    assert code == 0
    assert [r["inputs"]["p"] for r in recs][:3] == [5, 7, 11]
    assert not any(r["pass"] for r in recs)
    assert all(r["observed_order"] == 3 for r in recs)


def test_wolstenholme_hit():
    code, out = run_to_string(["wolstenholme", "--p-min", "16800", "--p-max", "16850"])
    hits = [r["inputs"]["p"] for r in records(out) if r["pass"]]
    assert hits == [16843]


def test_verify_jacobsthal_and_corollary():
    code, out = run_to_string(["verify", "jacobsthal", "--a", "5", "--b", "1", "--p-min", "2", "--p-max", "30"])
    recs = records(out)
    assert code == 0 and recs[0]["inputs"]["p"] == 5 and recs[0]["required_order"] == 4
    code, out = run_to_string(["verify", "corollary", "--n", "2", "--p-min", "1", "--p-max", "20"])
    recs = records(out)
    assert code == 0
    assert recs[0]["inputs"]["p"] == 7 and recs[0]["quotient"] == "12"
    assert recs[0]["value"] == "201684"


def test_verify_theorem1():
    code, out = run_to_string(
        ["verify", "theorem1", "--a", "3", "--b", "1", "--alist", "1,2", "--p", "7", "--q-exp", "1"]
    )
    add, mult = records(out)
    assert code == 0
    assert add["observed_order"] == 5 and mult["observed_order"] == 5
    assert mult["inputs"]["k_work"] == 8 and mult["saturated"] is False


def test_verify_theorem1_bad_instance_is_usage_error():
    code, _ = run_to_string(
        ["verify", "theorem1", "--a", "3", "--b", "1", "--alist", "1,2", "--p", "5", "--q-exp", "1"]
    )
    assert code == 2


def test_sequence_formats():
    code, out = run_to_string(["sequence", "--n", "1", "--p-min", "5", "--p-max", "13", "--format", "bfile"])
    assert code == 0
    assert out.splitlines() == ["1 -2", "2 -10", "3 -530", "4 -4734"]
    code, out = run_to_string(["sequence", "--n", "1", "--p-min", "5", "--p-max", "13", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "n", "p", "quotient"] and rows[1] == ["1", "1", "5", "-2"]
    code, out = run_to_string(["sequence", "--n", "1", "--p-min", "5", "--p-max", "13"])
    assert [r["quotient"] for r in records(out)] == ["-2", "-10", "-530", "-4734"]


def test_mobius_command():
    code, out = run_to_string(["mobius", "--a", "2", "--b", "1", "--m-max", "6", "--signed", "--refined"])
    recs = records(out)
    assert code == 0 and len(recs) == 6
    assert recs[0]["observed_order"] == "inf"
    assert recs[3]["inputs"] == {"a": 2, "b": 1, "m": 4, "factor": 3}
    assert recs[3]["value"] == "64" and recs[3]["quotient"] == "3"


def test_mobius_failure_sets_exit_code(monkeypatch):
    import padbin.cli as cli

    monkeypatch.setattr(cli, "factor_M", lambda a, b: 1)
    code, out = run_to_string(["mobius", "--a", "2", "--b", "1", "--m-max", "8", "--refined"])
    recs = records(out)
    assert code == 1
    assert len(recs) == 8  # no early truncation
    code, out = run_to_string(["mobius", "--a", "2", "--b", "1", "--m-max", "8", "--refined", "--fail-fast"])
    recs = records(out)
    assert code == 1 and not recs[-1]["pass"] and all(r["pass"] for r in recs[:-1])


def test_oracle_symfunc():
    code, out = run_to_string(["oracle", "symfunc", "--b", "2", "--q-exp", "1", "--p", "5", "--alist", "2,3,4"])
    recs = records(out)
    assert code == 0 and all(r["pass"] for r in recs)
    assert {r["check"] for r in recs} == {"lemma1", "newton-girard", "eq16", "f-series"}


def test_oracle_symfunc_size_cap(monkeypatch):
    import padbin.symfunc as symfunc

    monkeypatch.setattr(symfunc, "MAX_BQ", 10)
    code, _ = run_to_string(["oracle", "symfunc", "--b", "3", "--q-exp", "1", "--p", "5"])
    assert code == 2


def test_csv_output():
    code, out = run_to_string(["verify", "jacobsthal", "--a", "2", "--b", "1", "--p-min", "5", "--p-max", "11", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:5] == ["check", "inputs", "observed_order", "required_order", "pass"]
    assert rows[1][1] == "a=2;b=1;p=5" and rows[1][4] == "True"


def test_usage_errors_exit_2():
    proc = subprocess.run(
        [sys.executable, "-m", "padbin", "verify", "theorem0", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2 and "usage" in proc.stderr and proc.stdout == ""
    proc = subprocess.run(
        [sys.executable, "-m", "padbin", "verify", "theorem0", "--n", "2", "--m", "7", "--p", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2 and "usage" in proc.stderr


@pytest.mark.parametrize(
    "argv",
    [
        ["wolstenholme", "--p-max", "800"],
        ["verify", "corollary", "--n", "3", "--p-min", "8", "--p-max", "120"],
        ["mobius", "--a", "5", "--b", "2", "--m-max", "40", "--signed"],
        ["sequence", "--n", "2", "--p-min", "7", "--p-max", "100", "--format", "bfile"],
    ],
)
def test_thread_count_does_not_change_output(argv):
    outs = {run_to_string(argv + ["--threads", str(t)])[1] for t in (1, 2, 3)}
    assert len(outs) == 1


def test_partition_is_contiguous_and_balanced():
    items = list(range(1, 101))
    chunks = partition(items, 4, weight=lambda x: x)
    assert [x for c in chunks for x in c] == items
    weights = [sum(c) for c in chunks]
    assert max(weights) < 1.2 * sum(items) / 4
    assert partition([], 3) == []
    assert partition([5], 3) == [[5]]


def test_ordered_map_preserves_order():
    assert ordered_map(abs, list(range(-20, 20)), threads=3) == [abs(x) for x in range(-20, 20)]
