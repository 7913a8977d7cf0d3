import pytest

from fzforce.verify import (
    SUITES,
    SuiteReport,
    census_suite,
    duality_suite,
    extremal_suite,
    kernel_suite,
    line_digraph_sweep,
    run_suite,
    constructive_cycle_sweep,
    weak_path_sweep,
)
from fzforce.digraph import directed_cycle


def test_report_records_first_counterexample():
    rep = SuiteReport("x")
    rep.record(True)
    rep.record(False, directed_cycle(3), "first")
    rep.record(False, directed_cycle(4), "second")
    assert rep.checked == 3 and rep.mismatches == 2
    assert rep.counterexample == directed_cycle(3) and rep.detail == "first"
    assert not rep.ok


def test_small_suites():
    assert duality_suite(4).ok
    assert extremal_suite(4).ok
    assert weak_path_sweep(5).ok
    assert constructive_cycle_sweep(range(3, 7)).ok
    assert line_digraph_sweep(3).ok
    assert kernel_suite(num_digraphs=5, seeds=3).ok


def test_census3_counts():
    rep = census_suite(3, workers=1)
    assert rep.ok and rep.checked == 64
    assert rep.counts["F<Z"] == 7
    assert rep.summary() == "64 digraphs, 0 mismatches"


def test_parallel_census_matches_serial():
    serial = census_suite(4, workers=1)
    parallel = census_suite(4, workers=2)
    assert parallel.counts == serial.counts
    assert parallel.checked == serial.checked == 4096


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    assert {"duality", "formulas", "census3", "census4", "oriented5", "kernel", "extremal"} <= set(SUITES)
