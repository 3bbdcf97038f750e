"""Invariant suites over a whole algebra, aggregated into one report."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .algebra import BoundQuiverAlgebra
from .catalog import IndecomposableCatalog, enumerate_indecomposables
from .decompose import is_brick
from .gfan import (
    ar_pairing_check,
    brick_matrix_check,
    c_matrix,
    facet_bricks,
    fan_check,
    semibrick_split,
    sign_coherent,
    unimodular,
)
from .representation import sum_of
from .stability import (
    KRONECKER_FAMILIES,
    bkt_membership,
    chambers,
    interior_sample,
    is_semistable,
    kronecker_walls_match,
    label_edges,
    perpendicular_category,
    semistable_indecs,
    stable_count_check,
    stable_filtration,
    stable_implies_brick,
    sub_pairs,
    sum_rule_check,
    wide_closure_violations,
)
from .tautheory import (
    MAX_MODULE_DIM,
    MutationGraph,
    almost_completions,
    fac,
    hasse,
    is_tau_rigid_pair,
    mutation_graph,
    p_of_torsion_class,
    perpendicular_check,
)

PASS, FAIL, SKIP = "pass", "fail", "skip"
INFINITE_SUSPECTED = "τ-tilting infinite suspected"


@dataclass
class SuiteResult:
    name: str
    status: str
    detail: str = ""


@dataclass
class Workspace:
    """Lazily computed catalog and mutation graph of one algebra."""

    algebra: BoundQuiverAlgebra
    max_nodes: int = 512
    max_depth: int = 64
    dim_bound: tuple | None = None
    max_module_dim: int = MAX_MODULE_DIM

    @cached_property
    def catalog(self) -> IndecomposableCatalog:
        alg = self.algebra if self.algebra.field.is_prime else self.algebra.reduced_mod(2)
        return enumerate_indecomposables(alg, self.dim_bound)

    @cached_property
    def graph(self) -> MutationGraph:
        return mutation_graph(self.catalog.algebra, self.catalog, self.max_nodes, self.max_depth,
                              self.max_module_dim)


def is_kronecker(alg: BoundQuiverAlgebra) -> bool:
    arrows = alg.quiver.arrows
    return (alg.n == 2 and not alg.relations and len(arrows) == 2
            and all((a.source, a.target) == (1, 2) for a in arrows))


def _first(items) -> str:
    items = list(items)
    return "" if not items else f"first counterexample: {items[0]}"


def _sample_vectors(ws: Workspace) -> list:
    return [interior_sample(p) for p in sub_pairs(ws.graph)]


def suite_ar_pairing(ws: Workspace) -> SuiteResult:
    bad = ar_pairing_check(ws.catalog)
    return SuiteResult("ar-pairing", FAIL if bad else PASS, _first(bad))


def suite_fan(ws: Workspace) -> SuiteResult:
    rep = fan_check(ws.graph)
    return SuiteResult("fan", PASS if rep.ok else FAIL,
                       f"{rep.checked} node pairs" + (f"; {_first(rep.violations)}" if rep.violations else ""))


def suite_unimodular(ws: Workspace) -> SuiteResult:
    bad = [p.label() for p in ws.graph.pairs() if not unimodular(p)]
    return SuiteResult("unimodularity", FAIL if bad else PASS, _first(bad))


def suite_sign_coherence(ws: Workspace) -> SuiteResult:
    bad = [p.label() for p in ws.graph.pairs() if not sign_coherent(c_matrix(p))]
    return SuiteResult("sign-coherence", FAIL if bad else PASS, _first(bad))


def suite_semibrick(ws: Workspace) -> SuiteResult:
    bad = []
    for p in ws.graph.pairs():
        bricks = facet_bricks(p, ws.catalog)
        rep = brick_matrix_check(p, bricks)
        split = semibrick_split(p, bricks, rep.signs, ws.catalog)
        if not (rep.ok and split.filt_matches_fac):
            bad.append(p.label())
    return SuiteResult("semibrick", FAIL if bad else PASS, _first(bad))


def suite_semistable_equivalence(ws: Workspace) -> SuiteResult:
    bad = [p.label() for p in sub_pairs(ws.graph)
           if semistable_indecs(interior_sample(p), ws.catalog) != perpendicular_category(p, ws.catalog)]
    return SuiteResult("semistable-equivalence", FAIL if bad else PASS, _first(bad))


def suite_chamber_count(ws: Workspace) -> SuiteResult:
    chs = chambers(ws.graph)
    empty = all(not semistable_indecs(c.cone.interior_sample(), ws.catalog) for c in chs)
    ok = len(chs) == len(ws.graph.nodes) and empty
    return SuiteResult("chamber-count", PASS if ok else FAIL, f"{len(chs)} chambers, {len(ws.graph.nodes)} pairs")


def suite_stable_count(ws: Workspace) -> SuiteResult:
    bad = [p.label() for p in sub_pairs(ws.graph) if not stable_count_check(p, ws.catalog)]
    return SuiteResult("stable-count", FAIL if bad else PASS, _first(bad))


def suite_wide(ws: Workspace) -> SuiteResult:
    bad = [(v, b) for v in _sample_vectors(ws) for b in wide_closure_violations(v, ws.catalog)]
    return SuiteResult("wide-subcategory", FAIL if bad else PASS, _first(bad))


def suite_stable_brick(ws: Workspace) -> SuiteResult:
    bad = [v for v in _sample_vectors(ws) if not stable_implies_brick(v, ws.catalog)]
    return SuiteResult("stable-brick", FAIL if bad else PASS, _first(bad))


def suite_bkt(ws: Workspace) -> SuiteResult:
    bad = [(e.id, v) for v in _sample_vectors(ws) for e in ws.catalog
           if bkt_membership(e.module, v).semistable != is_semistable(e.module, v)]
    return SuiteResult("bkt-membership", FAIL if bad else PASS, _first(bad))


def suite_rudakov(ws: Workspace) -> SuiteResult:
    bad = []
    mods = list(ws.catalog.modules())
    mods += [sum_of([a, b]) for a, b in itertools.combinations_with_replacement(ws.catalog.modules(), 2)
             if sum(a.dims) + sum(b.dims) <= 4]
    for v in _sample_vectors(ws):
        for M in mods:
            if not is_semistable(M, v):
                continue
            ref = stable_filtration(M, v, 0).factor_dims()
            if any(stable_filtration(M, v, c).factor_dims() != ref for c in range(1, 4)):
                bad.append((M.dims, v))
    return SuiteResult("rudakov", FAIL if bad else PASS, _first(bad))


def suite_sum_rule(ws: Workspace) -> SuiteResult:
    mods = ws.catalog.modules()
    bad = [(a.name, b.name) for a, b in itertools.combinations_with_replacement(mods, 2)
           if sum(a.dims) + sum(b.dims) <= 6 and not sum_rule_check(a, b)]
    return SuiteResult("sum-rule", FAIL if bad else PASS, _first(bad))


def suite_skowronski(ws: Workspace) -> SuiteResult:
    bad = [p.label() for p in sub_pairs(ws.graph) if not is_tau_rigid_pair(p)]
    return SuiteResult("skowronski", FAIL if bad else PASS, _first(bad))


def suite_air(ws: Workspace) -> SuiteResult:
    classes = {}
    bad = []
    for p in ws.graph.pairs():
        cls = fac(list(p.T), ws.catalog) if p.T else None
        members = cls.members if cls else frozenset()
        if members in classes:
            bad.append(("not injective", p.label()))
        classes[members] = p
        if cls is not None and p_of_torsion_class(cls, ws.catalog).key != p.key:
            bad.append(("not inverse", p.label()))
        if not perpendicular_check(p, ws.catalog):
            bad.append(("perpendicular", p.label()))
    return SuiteResult("air-bijection", FAIL if bad else PASS, _first(bad))


def suite_two_completions(ws: Workspace) -> SuiteResult:
    bad = [k for k, v in almost_completions(ws.graph).items() if len(v) != 2]
    degrees = {ws.graph.degree(k) for k in ws.graph.nodes}
    ok = not bad and degrees == {ws.algebra.n}
    return SuiteResult("two-completions", PASS if ok else FAIL, _first(bad))


def suite_hasse(ws: Workspace) -> SuiteResult:
    h = hasse(ws.graph)
    ok = len(h.top()) == 1 and len(h.bottom()) == 1
    return SuiteResult("hasse", PASS if ok else FAIL, f"{len(h.covers)} covers")


def suite_edge_labels(ws: Workspace) -> SuiteResult:
    bad = label_edges(ws.graph, ws.catalog)
    return SuiteResult("edge-labels", FAIL if bad else PASS, _first(bad))


def suite_brick_finite(ws: Workspace) -> SuiteResult:
    bricks = {e.label_id for e in ws.graph.edges if e.label_id is not None}
    ok = bricks and all(is_brick(ws.catalog[b]) for b in bricks)
    return SuiteResult("brick-finiteness", PASS if ok else FAIL, f"{len(bricks)} bricks")


FINITE_SUITES: tuple[Callable[[Workspace], SuiteResult], ...] = (
    suite_fan, suite_unimodular, suite_sign_coherence, suite_semibrick,
    suite_semistable_equivalence, suite_chamber_count, suite_stable_count, suite_wide,
    suite_stable_brick, suite_bkt, suite_rudakov, suite_skowronski, suite_air,
    suite_two_completions, suite_hasse, suite_edge_labels, suite_brick_finite,
)
FINITE_NAMES = ("fan", "unimodularity", "sign-coherence", "semibrick", "semistable-equivalence",
                "chamber-count", "stable-count", "wide-subcategory", "stable-brick", "bkt-membership",
                "rudakov", "skowronski", "air-bijection", "two-completions", "hasse", "edge-labels",
                "brick-finiteness")


@dataclass
class SelfcheckReport:
    results: list = field(default_factory=list)
    graph_status: str = "complete"

    @property
    def failed(self) -> list:
        return [r for r in self.results if r.status == FAIL]

    @property
    def skipped(self) -> list:
        return [r for r in self.results if r.status == SKIP]


def selfcheck(ws: Workspace, kronecker_depth: int = 5) -> SelfcheckReport:
    """Runs every suite; finiteness suites are skipped when the mutation graph is capped."""
    report = SelfcheckReport()
    report.results.append(suite_ar_pairing(ws))
    report.results.append(suite_sum_rule(ws))
    report.graph_status = ws.graph.status
    if ws.graph.complete:
        for suite in FINITE_SUITES:
            report.results.append(suite(ws))
    else:
        for name in FINITE_NAMES:
            report.results.append(SuiteResult(name, SKIP, INFINITE_SUSPECTED))
    if is_kronecker(ws.algebra):
        bad = kronecker_walls_match(ws.catalog.algebra, kronecker_depth)
        report.results.append(SuiteResult("kronecker-walls", FAIL if bad else PASS,
                                          f"{len(KRONECKER_FAMILIES)} families to depth {kronecker_depth}"))
    return report
