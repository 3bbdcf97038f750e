"""King stability, stability spaces, walls, chambers and brick labels."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import BoundQuiverAlgebra, symmetrizer
from .catalog import IndecomposableCatalog
from .decompose import is_brick, is_isomorphic
from .linalg import Mat
from .polyhedra import Cone, primitive, vec
from .projectives import ar_translate
from .representation import Representation, cokernel, hom_basis, hom_dim, kernel, quotient, subrepresentation
from .submodules import submodule_profile, submodules
from .tautheory import InconsistencyError, MutationGraph, TauPair
from .gfan import cone_of_pair


@functools.lru_cache(maxsize=None)
def _weights(alg: BoundQuiverAlgebra) -> tuple[Fraction, ...]:
    D = symmetrizer(alg)
    return tuple(Fraction(D[i, i]) for i in range(alg.n))


def pairing(v: Sequence, d: Sequence, alg: BoundQuiverAlgebra | None = None) -> Fraction:
    """``v^T D d`` with the algebra's diagonal symmetrizer (identity when absent).

    Raises:
        ValueError: the vectors have different lengths.
    """
    if len(v) != len(d):
        raise ValueError("stability vector and dimension vector differ in length")
    w = _weights(alg) if alg is not None else (Fraction(1),) * len(v)
    return sum((Fraction(x) * c * y for x, c, y in zip(v, w, d)), Fraction(0))


def _weighted(alg: BoundQuiverAlgebra, d: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(c * x for c, x in zip(_weights(alg), d))


def is_semistable(M: Representation, v: Sequence) -> bool:
    if M.is_zero():
        return True
    alg = M.algebra
    if pairing(v, M.dims, alg) != 0:
        return False
    return all(pairing(v, u, alg) <= 0 for u in submodule_profile(M).proper_nonzero())


def is_stable(M: Representation, v: Sequence) -> bool:
    if M.is_zero():
        return False
    alg = M.algebra
    if pairing(v, M.dims, alg) != 0:
        return False
    return all(pairing(v, u, alg) < 0 for u in submodule_profile(M).proper_nonzero())


# -- stability spaces and walls ----------------------------------------------

@dataclass(frozen=True)
class StabilitySpace:
    """``D(M)``: one equation ``<v, bdim M> = 0`` and halfspaces ``<v, u> <= 0``."""

    module_id: str
    equality: tuple[int, ...]
    halfspaces: tuple[tuple[int, ...], ...]
    cone: Cone

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def codim(self) -> int:
        return self.cone.codim

    def contains(self, v: Sequence, interior: bool = False) -> bool:
        return self.cone.contains(v, interior)


def space_from_vectors(alg: BoundQuiverAlgebra, module_id: str, dims: Sequence[int],
                       subs: Sequence[Sequence[int]]) -> StabilitySpace:
    """Builds ``D`` from a dimension vector and the proper nonzero submodule dimensions."""
    eq = _weighted(alg, dims)
    ineqs = [tuple(-x for x in _weighted(alg, u)) for u in subs]
    cone = Cone(alg.n, eqs=[eq], ineqs=ineqs)
    return StabilitySpace(module_id, tuple(dims), tuple(tuple(u) for u in subs), cone)


def stability_space(M: Representation, module_id: str | None = None) -> StabilitySpace:
    prof = submodule_profile(M)
    return space_from_vectors(M.algebra, module_id or M.name or str(M.dims), M.dims, prof.proper_nonzero())


def is_wall(M: Representation) -> bool:
    return stability_space(M).codim == 1


def sum_rule_check(M: Representation, N: Representation) -> bool:
    """``D(M ⊕ N) ⊆ D(M) ∩ D(N)``."""
    from .representation import sum_of

    both = stability_space(sum_of([M, N]))
    meet = stability_space(M).cone.intersect(stability_space(N).cone)
    return meet.contains_cone(both.cone)


@dataclass(frozen=True)
class Wall:
    brick_id: str
    space: StabilitySpace

    def report_line(self) -> str:
        d = ",".join(str(x) for x in self.space.equality)
        return f"WALL {self.brick_id} dim=({d}) eq=({d}) ineqs={len(self.space.halfspaces)}"


def walls(catalog: IndecomposableCatalog) -> list[Wall]:
    """Catalog indecomposables whose stability space has codimension one."""
    out = []
    for e in catalog:
        space = stability_space(e.module, e.id)
        if space.codim == 1:
            out.append(Wall(e.id, space))
    return out


# -- chambers ----------------------------------------------------------------------

@dataclass(frozen=True)
class Chamber:
    pair: TauPair
    cone: Cone

    def report_line(self) -> str:
        gens = ";".join("(" + ",".join(str(x) for x in primitive(g)) + ")" for g in self.cone.rays)
        return f"CHAMBER {self.pair.key_str()} generators={gens}"


def chambers(graph: MutationGraph) -> list[Chamber]:
    """One open chamber per τ-tilting node of the graph."""
    return [Chamber(p, cone_of_pair(p)) for p in graph.pairs()]


@dataclass(frozen=True)
class Location:
    chamber: Chamber | None
    walls: tuple[str, ...]
    complete: bool = True


def locate(v: Sequence, chamber_list: Sequence[Chamber], wall_list: Sequence[Wall],
           complete: bool = True) -> Location:
    """The chamber whose interior contains ``v``, or else the walls through ``v``."""
    for ch in chamber_list:
        if ch.cone.contains(v, interior=True):
            return Location(ch, (), complete)
    return Location(None, tuple(w.brick_id for w in wall_list if w.space.contains(v)), complete)


# -- semistable categories ------------------------------------------------------

def semistable_indecs(v: Sequence, catalog: IndecomposableCatalog) -> list[str]:
    return [e.id for e in catalog if is_semistable(e.module, v)]


def stable_indecs(v: Sequence, catalog: IndecomposableCatalog) -> list[str]:
    return [e.id for e in catalog if is_stable(e.module, v)]


def perpendicular_category(pair: TauPair, catalog: IndecomposableCatalog) -> list[str]:
    """Catalog modules ``X`` with ``Hom(T, X) = 0``, ``Hom(X, τT) = 0`` and ``Hom(P, X) = 0``."""
    taus = [ar_translate(t) for t in pair.T]
    out = []
    for e in catalog:
        X = e.module
        if any(X.dims[i - 1] for i in pair.P):
            continue
        if any(hom_dim(t, X) for t in pair.T):
            continue
        if any(hom_dim(X, t) for t in taus if not t.is_zero()):
            continue
        out.append(e.id)
    return out


def interior_sample(pair: TauPair) -> tuple[Fraction, ...]:
    """Average of the signed g-vectors: a point in the relative interior of the cone."""
    if pair.size == 0:
        return tuple(Fraction(0) for _ in range(pair.n))
    k = pair.size
    return tuple(sum((Fraction(g[i]) for g in pair.signed_g), Fraction(0)) / k for i in range(pair.n))


def stable_count_check(pair: TauPair, catalog: IndecomposableCatalog) -> bool:
    """Number of stables at an interior point equals ``n - |T| - |P|``."""
    return len(stable_indecs(interior_sample(pair), catalog)) == pair.n - pair.size


def sub_pairs(graph: MutationGraph) -> list[TauPair]:
    """Every τ-rigid pair occurring as a direct summand of a node, deduplicated by key."""
    seen = {}
    for p in graph.pairs():
        for r in range(p.size + 1):
            for keep in itertools.combinations(range(p.size), r):
                sub = p.sub_pair(keep)
                seen.setdefault(sub.key, sub)
    return list(seen.values())


# -- torsion pairs from a stability vector --------------------------------------------

@dataclass(frozen=True)
class BktMembership:
    """Membership of ``M`` in the torsion and torsion-free classes attached to ``v``."""

    module_id: str
    v: tuple
    torsion: bool
    torsion_closed: bool
    free: bool
    free_closed: bool

    @property
    def semistable(self) -> bool:
        return self.torsion_closed and self.free_closed


def bkt_membership(M: Representation, v: Sequence) -> BktMembership:
    alg = M.algebra
    prof = submodule_profile(M)
    quotients = prof.nonzero_quotients()
    subs = prof.nonzero_subs()
    qv = [pairing(v, q, alg) for q in quotients]
    sv = [pairing(v, s, alg) for s in subs]
    return BktMembership(M.name, tuple(v), all(x > 0 for x in qv), all(x >= 0 for x in qv),
                         all(x < 0 for x in sv), all(x <= 0 for x in sv))


# -- Rudakov filtrations -------------------------------------------------------------

@dataclass(frozen=True)
class StableFiltration:
    module_id: str
    chain: tuple[tuple[int, ...], ...]  # dimension vectors, 0 to M
    factors: tuple[Representation, ...]

    def factor_dims(self) -> list[tuple[int, ...]]:
        return sorted(f.dims for f in self.factors)


def _maximal_null_subs(M: Representation, v: Sequence) -> list:
    alg = M.algebra
    zero = tuple(0 for _ in M.dims)
    cands = [s for s in submodules(M)
             if tuple(b.ncols for b in s) not in (zero, M.dims)
             and pairing(v, [b.ncols for b in s], alg) == 0]

    def inside(a, b) -> bool:
        from .linalg import contains

        return all(contains(y, x) for x, y in zip(a, b))

    return [s for s in cands
            if not any(t is not s and inside(s, t) and not inside(t, s) for t in cands)]


def stable_filtration(M: Representation, v: Sequence, choice: int = 0) -> StableFiltration:
    """Filtration with ``v``-stable factors by repeatedly splitting off a maximal null submodule.

    ``choice`` selects among the inclusion-maximal candidates at every step,
    so different values exercise different filtrations.

    Raises:
        ValueError: ``M`` is not ``v``-semistable.
        InconsistencyError: a computed factor is not stable.
    """
    if not is_semistable(M, v):
        raise ValueError("stable filtrations exist only for semistable modules")
    factors: list[Representation] = []
    chain = [M.dims]
    cur = M
    while not cur.is_zero():
        cands = _maximal_null_subs(cur, v)
        if not cands:
            factors.append(cur)
            break
        pick = cands[choice % len(cands)]
        top, _ = quotient(cur, pick)
        factors.append(top)
        cur, _ = subrepresentation(cur, pick)
        chain.append(cur.dims)
    for f in factors:
        if not is_stable(f, v):
            raise InconsistencyError("filtration factor is not stable")
    chain.append(tuple(0 for _ in M.dims))
    return StableFiltration(M.name, tuple(reversed(chain)), tuple(reversed(factors)))


# -- property suites ---------------------------------------------------------------

def wide_closure_violations(v: Sequence, catalog: IndecomposableCatalog) -> list[tuple[str, str]]:
    """Pairs of semistables with a basis morphism whose kernel or cokernel is not semistable."""
    semi = [e for e in catalog if is_semistable(e.module, v)]
    bad = []
    for a in semi:
        for b in semi:
            for f in hom_basis(a.module, b.module).basis:
                K, _ = kernel(f)
                C, _ = cokernel(f)
                if not (is_semistable(K, v) and is_semistable(C, v)):
                    bad.append((a.id, b.id))
                    break
    return bad


def stable_implies_brick(v: Sequence, catalog: IndecomposableCatalog) -> bool:
    return all(is_brick(e.module) for e in catalog if is_stable(e.module, v))


# -- brick labels ------------------------------------------------------------------

def facet_brick_id(upper: TauPair, index: int, catalog: IndecomposableCatalog) -> str:
    """The unique stable catalog module at the interior of the facet without ``index``.

    Raises:
        InconsistencyError: the facet does not carry exactly one stable module.
    """
    facet = upper.without(index)
    found = stable_indecs(interior_sample(facet), catalog)
    if len(found) != 1:
        raise InconsistencyError(f"facet of {upper.label()} carries {len(found)} stable modules")
    return found[0]


def label_edges(graph: MutationGraph, catalog: IndecomposableCatalog) -> list:
    """Attaches facet-brick ids to the edges; returns edges whose constructive label disagrees."""
    mismatches = []
    for e in graph.edges:
        upper = graph.nodes[e.upper]
        e.label_id = facet_brick_id(upper, e.upper_index, catalog)
        if e.label is not None and not is_isomorphic(e.label, catalog[e.label_id]):
            mismatches.append(e)
    return mismatches


# -- Kronecker families ---------------------------------------------------------------

KRONECKER_FAMILIES = ("tau^-m(2)", "tau^-m(1/22)", "tau^m(1)", "tau^m(11/2)")


def kronecker_dims(family: str, m: int) -> tuple[int, int]:
    return {
        "tau^-m(2)": (2 * m, 2 * m + 1),
        "tau^-m(1/22)": (2 * m + 1, 2 * m + 2),
        "tau^m(1)": (2 * m + 1, 2 * m),
        "tau^m(11/2)": (2 * m + 2, 2 * m + 1),
    }[family]


def kronecker_ray(family: str, m: int) -> tuple[int, int]:
    """Closed-form direction of the wall of the ``m``-th member of ``family``."""
    return {
        "tau^-m(2)": (2 * m + 1, -2 * m),
        "tau^-m(1/22)": (2 * (m + 1), -(2 * m + 1)),
        "tau^m(1)": (2 * m, -(2 * m + 1)),
        "tau^m(11/2)": (2 * m + 1, -2 * (m + 1)),
    }[family]


def kronecker_space(alg: BoundQuiverAlgebra, family: str, m: int) -> StabilitySpace:
    """Stability space from the known submodule (or quotient) dimension vectors.

    A preprojective of dimension ``(k, k+1)`` has the smaller preprojectives as
    the binding submodules; a preinjective of dimension ``(k+1, k)`` has the
    smaller preinjectives as the binding quotients.
    """
    d = kronecker_dims(family, m)
    if d[1] > d[0]:
        k = d[0]
        subs = [(j, j + 1) for j in range(k)]
    else:
        k = d[1]
        subs = [(d[0] - j - 1, d[1] - j) for j in range(k)]
    return space_from_vectors(alg, f"{family}[m={m}]", d, subs)


def kronecker_walls_match(alg: BoundQuiverAlgebra, depth: int) -> list[tuple[str, int]]:
    """Family members (up to ``depth``) whose generated wall disagrees with the closed form."""
    bad = []
    for family in KRONECKER_FAMILIES:
        for m in range(depth + 1):
            space = kronecker_space(alg, family, m)
            ray = vec(kronecker_ray(family, m))
            cone = space.cone
            if cone.lineality:
                ok = cone.codim == 1 and cone.contains(ray) and not cone.rays
            else:
                ok = [tuple(r) for r in cone.rays] == [ray] and cone.codim == 1
            if not ok:
                bad.append((family, m))
    return bad


def kronecker_module(alg: BoundQuiverAlgebra, family_kind: str, k: int) -> Representation:
    """Explicit preprojective ``(k, k+1)`` (``"pre"``) or preinjective ``(k+1, k)`` (``"inj"``)."""
    F = alg.field
    eye = [[int(i == j) for j in range(k)] for i in range(k)]
    zero_row = [[0] * k]
    if family_kind == "pre":
        a = Mat.from_rows(F, eye + zero_row, k) if k else Mat.zeros(F, 1, 0)
        b = Mat.from_rows(F, zero_row + eye, k) if k else Mat.zeros(F, 1, 0)
        dims = (k, k + 1)
    else:
        a = Mat.from_rows(F, [r + [0] for r in eye], k + 1) if k else Mat.zeros(F, 0, 1)
        b = Mat.from_rows(F, [[0] + r for r in eye], k + 1) if k else Mat.zeros(F, 0, 1)
        dims = (k + 1, k)
    return Representation(alg, dims, [a, b])


LIMIT_RAY = (1, -1)
