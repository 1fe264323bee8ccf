from hwcheck.suite import VACUOUS, run_verification_suite, seeded_corpus
from hwcheck.tracer import run_verification_suite as via_tracer


def strip(report):
    return [{k: v for k, v in c.items() if k != "seconds"} for c in report["checks"]]


def test_report_is_sorted_and_complete():
    rep = run_verification_suite({"checks": [12, 1, 4]})
    assert [c["id"] for c in rep["checks"]] == ["01", "04", "12"]
    assert rep["passed"] and rep["exit_status"] == 0


def test_depth_zero_is_vacuous_not_pass():
    rep = run_verification_suite({"depth": 0, "checks": [6, 7]})
    assert [c["status"] for c in rep["checks"]] == [VACUOUS, VACUOUS]
    assert rep["passed"]


def test_mutated_table_fails_axioms():
    rep = run_verification_suite({"mutate_table": True, "checks": [2]})
    assert not rep["passed"] and rep["exit_status"] == 1
    c = rep["checks"][0]
    assert c["status"] == "fail" and c["witness"]


def test_parallel_run_matches_sequential():
    cfg = {"checks": [1, 3, 9, 10, 11]}
    assert strip(run_verification_suite(cfg)) == strip(run_verification_suite(dict(cfg, jobs=3)))


def test_tracer_reexport():
    assert via_tracer({"checks": [1]})["passed"]


def test_corpus_is_seeded():
    a, b = seeded_corpus(50, 3), seeded_corpus(50, 3)
    assert a == b and len(a) == 50
    assert seeded_corpus(50, 4) != a


def test_unknown_check_id():
    import pytest

    with pytest.raises(ValueError):
        run_verification_suite({"checks": [13]})
