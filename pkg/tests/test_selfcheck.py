"""Aggregated invariant suites."""

import pytest

from taufan.algebra import bundled_algebra
from taufan.selfcheck import FAIL, FINITE_NAMES, PASS, SKIP, Workspace, is_kronecker, selfcheck


@pytest.mark.parametrize("name", ["a2", "cycle3"])
def test_all_suites_pass_on_finite_examples(name):
    report = selfcheck(Workspace(bundled_algebra(name)))
    assert report.graph_status == "complete"
    assert {r.name for r in report.results} == {"ar-pairing", "sum-rule", *FINITE_NAMES}
    assert all(r.status == PASS for r in report.results), [r for r in report.results if r.status != PASS]


def test_kronecker_skips_finiteness_suites():
    report = selfcheck(Workspace(bundled_algebra("kronecker"), max_nodes=12), kronecker_depth=5)
    statuses = {r.name: r.status for r in report.results}
    assert statuses["kronecker-walls"] == PASS
    assert all(statuses[n] == SKIP for n in FINITE_NAMES)
    assert FAIL not in statuses.values()


def test_kronecker_detection(a2, kronecker):
    assert is_kronecker(kronecker) and not is_kronecker(a2)
