"""Shared fixtures and independent oracles built on sympy."""

from __future__ import annotations

import pytest
from sympy import GF as SympyGF
from sympy import QQ as SympyQQ
from sympy.polys.matrices import DomainMatrix

from taufan.algebra import bundled_algebra, parse_algebra
from taufan.catalog import enumerate_indecomposables
from taufan.tautheory import mutation_graph


def sympy_domain(field):
    return SympyQQ if not field.is_prime else SympyGF(field.p)


def oracle_rank(rows, ncols, field) -> int:
    """Rank computed by sympy, independent of the package's elimination code."""
    if not rows or ncols == 0:
        return 0
    dom = sympy_domain(field)
    data = [[dom(int(x)) if field.is_prime else dom(x.numerator, x.denominator) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), dom).rank()


def oracle_hom_dim(M, N) -> int:
    """dim Hom(M, N) from the commutativity equations f_t M_a = N_a f_s."""
    alg = M.algebra
    offsets, total = [], 0
    for i in range(alg.n):
        offsets.append(total)
        total += N.dims[i] * M.dims[i]

    def var(i, r, c):  # entry (r, c) of the N_i x M_i block
        return offsets[i] + r * M.dims[i] + c

    rows = []
    for a, Ma, Na in zip(alg.quiver.arrows, M.maps, N.maps):
        s, t = a.source - 1, a.target - 1
        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                row = [0] * total
                for k in range(M.dims[t]):
                    row[var(t, r, k)] += Ma[k, c]
                for k in range(N.dims[s]):
                    row[var(s, k, c)] -= Na[r, k]
                rows.append([M.field.coerce(x) for x in row])
    return total - oracle_rank(rows, total, M.field)


@pytest.fixture(scope="session")
def a2():
    return bundled_algebra("a2")


@pytest.fixture(scope="session")
def cycle3():
    return bundled_algebra("cycle3")


@pytest.fixture(scope="session")
def kronecker():
    return bundled_algebra("kronecker")


@pytest.fixture(scope="session")
def a2_rational():
    return parse_algebra("field q\nvertices 2\narrow a 1 2\n")


@pytest.fixture(scope="session")
def kronecker_rational():
    return parse_algebra("field q\nvertices 2\narrow a 1 2\narrow b 1 2\n")


@pytest.fixture(scope="session")
def a2_catalog(a2):
    return enumerate_indecomposables(a2)


@pytest.fixture(scope="session")
def cycle3_catalog(cycle3):
    return enumerate_indecomposables(cycle3)


@pytest.fixture(scope="session")
def kronecker_catalog(kronecker):
    return enumerate_indecomposables(kronecker)


@pytest.fixture(scope="session")
def a2_graph(a2, a2_catalog):
    return mutation_graph(a2, a2_catalog)


@pytest.fixture(scope="session")
def cycle3_graph(cycle3, cycle3_catalog):
    return mutation_graph(cycle3, cycle3_catalog)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool, elapsed: float, detail: str = "") -> None:
    """Stores one result line; printed again in the terminal summary."""
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} [{elapsed:.2f}s] {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
