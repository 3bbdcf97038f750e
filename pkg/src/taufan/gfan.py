"""g-vectors, G- and C-matrices, cones of τ-rigid pairs and fan checks.

All arithmetic here is exact over the rationals.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import IndecomposableCatalog
from .field import QQ
from .linalg import Mat
from .polyhedra import Cone
from .projectives import ar_translate
from .representation import Representation, hom_dim
from .tautheory import (
    InconsistencyError,
    MutationGraph,
    TauPair,
    fac,
    filt_fac,
    g_vector,
    mutate,
)

IntMatrix = tuple[tuple[int, ...], ...]


def g_vector_of_pair(pair: TauPair) -> list[tuple[int, ...]]:
    """Signed g-vectors (``+g`` for T, ``-e_i`` for P) in column order."""
    return [pair.signed_g[k] for k in pair.column_order()]


def _to_int(m: Mat) -> IntMatrix:
    out = []
    for row in m.rows:
        if any(Fraction(x).denominator != 1 for x in row):
            raise InconsistencyError("matrix is not integral")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def _from_columns(cols: Sequence[Sequence[int]], n: int) -> Mat:
    return Mat.from_columns(QQ, [[Fraction(x) for x in c] for c in cols], n)


def g_matrix(pair: TauPair) -> IntMatrix:
    """Columns are the signed g-vectors in column order.

    Raises:
        ValueError: the pair is not τ-tilting (fewer than ``n`` columns).
        InconsistencyError: the determinant is not ``±1``.
    """
    if pair.size != pair.n:
        raise ValueError("G-matrix needs a τ-tilting pair")
    G = _from_columns(g_vector_of_pair(pair), pair.n)
    if G.det() not in (1, -1):
        raise InconsistencyError(f"G-matrix of {pair.label()} is not unimodular")
    return _to_int(G)


def c_matrix(pair: TauPair) -> IntMatrix:
    """``(G^T)^{-1}``, whose columns are the signed c-vectors."""
    G = Mat.from_rows(QQ, [list(r) for r in g_matrix(pair)], pair.n)
    return _to_int(G.T.inverse())


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def format_matrix(m: IntMatrix) -> str:
    """Row-major bracketed integer form, e.g. ``[[1,0],[0,1]]``."""
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in m) + "]"


def sign_coherent(m: IntMatrix) -> bool:
    """Every column is entrywise ``>= 0`` or entrywise ``<= 0``."""
    return all(all(x >= 0 for x in col) or all(x <= 0 for x in col) for col in transpose(m))


def cone_of_pair(pair: TauPair) -> Cone:
    """Closed cone spanned by the signed g-vectors of a τ-rigid pair."""
    return Cone.from_generators(pair.n, list(pair.signed_g))


def common_sub_pair(a: TauPair, b: TauPair) -> TauPair:
    """Maximal common direct summand, matched by signed g-vector."""
    shared = Counter(a.signed_g) & Counter(b.signed_g)
    keep = []
    for k, g in enumerate(a.signed_g):
        if shared[g] > 0:
            keep.append(k)
            shared[g] -= 1
    return a.sub_pair(keep)


@dataclass
class FanReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def fan_check(graph: MutationGraph) -> FanReport:
    """Each pairwise cone intersection equals the cone of the common summand."""
    report = FanReport()
    pairs = graph.pairs()
    cones = [cone_of_pair(p) for p in pairs]
    for (i, a), (j, b) in itertools.combinations(enumerate(pairs), 2):
        meet = cones[i].intersect(cones[j])
        common = cone_of_pair(common_sub_pair(a, b))
        report.checked += 1
        if not meet.equals(common):
            report.violations.append((a.key, b.key))
    return report


def unimodular(pair: TauPair) -> bool:
    try:
        g_matrix(pair)
    except InconsistencyError:
        return False
    return True


def injective_keys(graph: MutationGraph) -> bool:
    """Distinct nodes carry distinct signed g-vector multisets and distinct torsion classes."""
    return len({p.key for p in graph.pairs()}) == len(graph.nodes)


# -- bricks, C-matrices and semibricks ---------------------------------------

def facet_bricks(pair: TauPair, catalog: IndecomposableCatalog | None = None) -> list[Representation]:
    """Brick labelling each facet of the chamber of ``pair``, in column order."""
    out = []
    for k in pair.column_order():
        res = mutate(pair, k, catalog)
        if res.label is None:
            raise InconsistencyError("mutation edge without a brick label")
        out.append(res.label)
    return out


@dataclass(frozen=True)
class BrickMatrixReport:
    product: IntMatrix
    signs: tuple[int, ...]
    diagonal: bool
    unit_signs: bool

    @property
    def ok(self) -> bool:
        return self.diagonal and self.unit_signs


def brick_matrix_check(pair: TauPair, bricks: Sequence[Representation]) -> BrickMatrixReport:
    """``G^T · (bdim B_1 | ... | bdim B_n)`` must be diagonal with entries ``±1``.

    Raises:
        InconsistencyError: the product is not diagonal.
    """
    n = pair.n
    G = Mat.from_rows(QQ, [list(r) for r in g_matrix(pair)], n)
    B = _from_columns([b.dims for b in bricks], n)
    prod = _to_int(G.T @ B)
    diagonal = all(prod[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    if not diagonal:
        raise InconsistencyError(f"G^T B is not diagonal for {pair.label()}")
    signs = tuple(prod[i][i] for i in range(n))
    return BrickMatrixReport(prod, signs, diagonal, all(s in (1, -1) for s in signs))


@dataclass(frozen=True)
class SemibrickSplit:
    positive: tuple[Representation, ...]
    negative: tuple[Representation, ...]
    filt_matches_fac: bool


def semibrick_split(pair: TauPair, bricks: Sequence[Representation], signs: Sequence[int],
                    catalog: IndecomposableCatalog) -> SemibrickSplit:
    """Splits the facet bricks by sign and checks both halves are semibricks.

    Also compares ``Filt(Fac C+)`` with ``Fac T`` on the catalog.

    Raises:
        InconsistencyError: two distinct bricks in one half have a nonzero map.
    """
    pos = tuple(b for b, s in zip(bricks, signs) if s > 0)
    neg = tuple(b for b, s in zip(bricks, signs) if s < 0)
    for half in (pos, neg):
        for x, y in itertools.permutations(half, 2):
            if hom_dim(x, y) != 0:
                raise InconsistencyError("facet bricks of one sign are not Hom-orthogonal")
    lhs = filt_fac(list(pos), catalog).members
    rhs = fac(list(pair.T), catalog).members if pair.T else frozenset()
    return SemibrickSplit(pos, neg, lhs == rhs)


# -- pairing with dimension vectors -------------------------------------------

def ar_pairing_holds(M: Representation, N: Representation) -> bool:
    """``<g^M, bdim N> = dim Hom(M, N) - dim Hom(N, τM)``."""
    lhs = sum(g * d for g, d in zip(g_vector(M), N.dims))
    tau = ar_translate(M)
    rhs = hom_dim(M, N) - (hom_dim(N, tau) if not tau.is_zero() else 0)
    return lhs == rhs


def ar_pairing_check(catalog: IndecomposableCatalog) -> list[tuple[str, str]]:
    """Ordered catalog pairs violating the pairing identity (empty when all hold)."""
    return [(a.id, b.id) for a in catalog for b in catalog if not ar_pairing_holds(a.module, b.module)]
