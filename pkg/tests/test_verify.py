import json

import pytest

from heron_somos.heron import MainSequence
from heron_somos.somos import canonical_S
from heron_somos.verify import SUITES, run_verify


@pytest.fixture(scope="module")
def small_report():
    return run_verify("all", 40, 30)


def test_all_suites_pass(small_report):
    assert small_report["passed"]
    assert small_report["first_failure"] is None
    names = {c["name"] for c in small_report["checks"]}
    assert {"S recurrence", "heron identities", "periods", "intrinsic reduction"} <= names
    json.dumps(small_report)


def test_period_records_in_report(small_report):
    recs = {(r["seq"], r["p"]): r for r in small_report["periods"]}
    assert recs[("S", 23)]["period"] == 198
    assert recs[("S", 2)]["method"] == "brute"


def test_modp_suite_reaches_worked_examples():
    report = run_verify("modp", 50, 70)
    assert report["passed"]
    recs = {(r["seq"], r["p"]): r["period"] for r in report["periods"]}
    assert recs[("S", 23)] == 198 and recs[("T", 61)] == 132


def test_corrupted_term_is_located():
    ms = MainSequence(S=canonical_S().corrupted(7, 38, 120))
    heron = run_verify("heron", 20, 10, ms=ms)
    assert not heron["passed"]
    assert heron["first_failure"]["check"] == "heron identities"
    assert "Schubert surface residual" in heron["first_failure"]["at"]
    somos = run_verify("somos", 20, 10, ms=ms)
    assert somos["first_failure"]["check"] == "S recurrence"


def test_threads_do_not_change_the_report():
    one = run_verify("heron", 30, 10, threads=1)
    four = run_verify("heron", 30, 10, threads=4)
    assert one == four


@pytest.mark.parametrize("args", [("nope", 10, 10), ("all", 0, 10), ("all", 10, 1)])
def test_bad_arguments(args):
    with pytest.raises(ValueError):
        run_verify(*args)


def test_suite_names():
    assert SUITES == ("somos", "qrt", "heron", "modp")
