"""τ-rigid and τ-tilting pairs, torsion classes, approximations and mutation.

Right mutation is computed through the duality ``(T, P) -> (Tr T_np ⊕ P*, T_pr*)``
between pairs over ``A`` and over the opposite algebra, which reverses the
order on torsion classes and so turns it into a left mutation there.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import BoundQuiverAlgebra
from .catalog import IndecomposableCatalog
from .decompose import decompose, endomorphism_radical
from .linalg import Mat, contains, span
from .projectives import ar_translate, min_presentation, projective, transpose
from .representation import (
    Morphism,
    Representation,
    cokernel,
    hom_basis,
    hom_dim,
    kernel,
    loewy_name,
    quotient,
    subrepresentation,
    zero_representation,
)


MAX_MODULE_DIM = 16


class InconsistencyError(ArithmeticError):
    """A computed object contradicts a theorem the engine relies on."""


class MutationError(RuntimeError):
    """Mutation could not be completed by any available method."""


def g_vector(M: Representation) -> tuple[int, ...]:
    """``a - b`` from the minimal projective presentation of ``M``."""
    if M.is_zero():
        return tuple(0 for _ in range(M.n))
    pres = min_presentation(M)
    return tuple(x - y for x, y in zip(pres.a, pres.b))


def projective_vertex(M: Representation) -> int | None:
    """Vertex ``i`` when ``M`` is isomorphic to ``P(i)``, else ``None``."""
    if M.is_zero():
        return None
    pres = min_presentation(M)
    if not pres.p1 and len(pres.p0) == 1:
        return pres.p0[0]
    return None


# -- pairs -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TauPair:
    """A pair ``(T, P)``: module summands ``T`` and projective vertices ``P``.

    ``slots`` (aligned with ``T`` then ``P``) records which mutation position
    each summand occupies; the initial pair puts ``P(i)`` in slot ``i``.
    """

    algebra: BoundQuiverAlgebra
    T: tuple[Representation, ...]
    P: tuple[int, ...] = ()
    slots: tuple[int, ...] | None = None

    @functools.cached_property
    def signed_g(self) -> tuple[tuple[int, ...], ...]:
        gs = [g_vector(t) for t in self.T]
        gs += [tuple(-int(v == i) for v in range(1, self.algebra.n + 1)) for i in self.P]
        return tuple(gs)

    @functools.cached_property
    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.signed_g))

    @property
    def size(self) -> int:
        return len(self.T) + len(self.P)

    @property
    def n(self) -> int:
        return self.algebra.n

    def summand(self, idx: int):
        """``('T', module)`` or ``('P', vertex)`` for position ``idx``."""
        if idx < len(self.T):
            return "T", self.T[idx]
        return "P", self.P[idx - len(self.T)]

    def without(self, idx: int) -> "TauPair":
        T = tuple(t for k, t in enumerate(self.T) if k != idx)
        P = tuple(p for k, p in enumerate(self.P) if k + len(self.T) != idx)
        slots = None
        if self.slots is not None:
            slots = tuple(s for k, s in enumerate(self.slots) if k != idx)
        return TauPair(self.algebra, T, P, slots)

    def sub_pair(self, keep: Iterable[int]) -> "TauPair":
        keep = sorted(set(keep))
        nT = len(self.T)
        T = tuple(self.T[k] for k in keep if k < nT)
        P = tuple(self.P[k - nT] for k in keep if k >= nT)
        slots = tuple(self.slots[k] for k in keep) if self.slots is not None else None
        return TauPair(self.algebra, T, P, slots)

    def column_order(self) -> list[int]:
        """T summands by slot (or given order), then P summands by vertex."""
        nT = len(self.T)
        t_idx = list(range(nT))
        if self.slots is not None:
            t_idx.sort(key=lambda k: self.slots[k])
        p_idx = sorted(range(nT, self.size), key=lambda k: self.P[k - nT])
        return t_idx + p_idx

    def t_module(self) -> Representation:
        from .representation import sum_of

        return sum_of(list(self.T), self.algebra)

    def names(self, catalog: IndecomposableCatalog | None = None) -> tuple[list[str], list[str]]:
        def name(M):
            cid = catalog.find(M) if catalog is not None else None
            return cid or loewy_name(M)

        return ([name(t) for t in self.T],
                [name(projective(self.algebra, i)) for i in self.P])

    def label(self, catalog: IndecomposableCatalog | None = None, ordered: bool = True) -> str:
        """``(T: a,b | P: c)`` with summands in column order."""
        tn, pn = self.names(catalog)
        if ordered:
            order = self.column_order()
            nT = len(self.T)
            tn = [tn[k] for k in order if k < nT]
            pn = [pn[k - nT] for k in order if k >= nT]
        return f"(T: {','.join(tn) or '0'} | P: {','.join(pn) or '0'})"

    def key_str(self) -> str:
        return ";".join(",".join(str(x) for x in g) for g in self.key)


def initial_pair(alg: BoundQuiverAlgebra) -> TauPair:
    return TauPair(alg, tuple(projective(alg, i) for i in range(1, alg.n + 1)), (),
                   tuple(range(1, alg.n + 1)))


def final_pair(alg: BoundQuiverAlgebra) -> TauPair:
    return TauPair(alg, (), tuple(range(1, alg.n + 1)), tuple(range(1, alg.n + 1)))


# -- rigidity ---------------------------------------------------------------

def _as_list(T) -> list[Representation]:
    if isinstance(T, Representation):
        return [T]
    return list(T)


def is_tau_rigid(T) -> bool:
    """``Hom(T, τT) = 0`` for a module or a list of summands."""
    mods = _as_list(T)
    taus = [ar_translate(m) for m in mods]
    return all(hom_dim(x, t) == 0 for x in mods for t in taus if not t.is_zero())


def is_tau_rigid_pair(pair: TauPair) -> bool:
    """Rigidity of ``T`` plus ``Hom(P, T) = 0``; checks the summand-count bound.

    Raises:
        InconsistencyError: a rigid pair with more than ``n`` summands.
    """
    ok = is_tau_rigid(pair.T) and all(t.dims[i - 1] == 0 for i in pair.P for t in pair.T)
    ok = ok and len(set(pair.P)) == len(pair.P) and _pairwise_distinct(pair.T)
    if ok and pair.size > pair.n:
        raise InconsistencyError(f"τ-rigid pair with {pair.size} > {pair.n} summands")
    return ok


def _pairwise_distinct(mods: Sequence[Representation]) -> bool:
    gs = [g_vector(m) for m in mods]
    return len(set(gs)) == len(gs)


def is_tau_tilting_pair(pair: TauPair) -> bool:
    return is_tau_rigid_pair(pair) and pair.size == pair.n


# -- traces and torsion classes -------------------------------------------------

def trace_subspaces(U: Sequence[Representation], X: Representation):
    """Sum of the images of all maps from summands of ``U`` into ``X``."""
    F = X.field
    vecs = [[] for _ in range(X.n)]
    for u in U:
        for f in hom_basis(u, X).basis:
            for v in range(X.n):
                vecs[v].extend(f.comps[v].columns())
    return tuple(span(F, X.dims[v], vecs[v]) for v in range(X.n))


def reject_subspaces(X: Representation, V: Sequence[Representation]):
    """Intersection of the kernels of all maps from ``X`` to summands of ``V``."""
    F = X.field
    rows = [[] for _ in range(X.n)]
    for w in V:
        for f in hom_basis(X, w).basis:
            for v in range(X.n):
                rows[v].extend(f.comps[v].rows)
    out = []
    for v in range(X.n):
        if rows[v]:
            out.append(Mat.from_rows(F, rows[v], X.dims[v]).nullspace())
        else:
            out.append(Mat.identity(F, X.dims[v]))
    return tuple(out)


def in_fac(X: Representation, U: Sequence[Representation]) -> bool:
    """``X`` is a quotient of a direct sum of copies of summands of ``U``."""
    if X.is_zero():
        return True
    tr = trace_subspaces(U, X)
    return all(t.ncols == d for t, d in zip(tr, X.dims))


def in_sub(X: Representation, V: Sequence[Representation]) -> bool:
    if X.is_zero():
        return True
    rej = reject_subspaces(X, V)
    return all(r.ncols == 0 for r in rej)


def in_filt_fac(X: Representation, U: Sequence[Representation]) -> bool:
    """Membership in ``Filt(Fac U)`` by repeatedly dividing out the trace of ``U``."""
    cur = X
    while not cur.is_zero():
        tr = trace_subspaces(U, cur)
        if all(t.ncols == 0 for t in tr):
            return False
        cur, _ = quotient(cur, tr)
    return True


def in_filt_sub(X: Representation, V: Sequence[Representation]) -> bool:
    """Membership in ``Filt(Sub V)`` by repeatedly passing to the reject of ``V``."""
    cur = X
    while not cur.is_zero():
        rej = reject_subspaces(cur, V)
        if all(r.ncols == d for r, d in zip(rej, cur.dims)):
            return False
        cur, _ = subrepresentation(cur, rej)
    return True


@dataclass(frozen=True)
class TorsionClass:
    """Catalog ids of the indecomposables in a torsion class (0 implicit)."""

    algebra: BoundQuiverAlgebra
    members: frozenset
    generator: TauPair | None = None

    def __contains__(self, cid: str) -> bool:
        return cid in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_ids(self, catalog: IndecomposableCatalog) -> list[str]:
        return [c for c in catalog.ids if c in self.members]


def fac(T, catalog: IndecomposableCatalog, generator: TauPair | None = None) -> TorsionClass:
    """``Fac T`` restricted to the catalog.

    Raises:
        ValueError: ``T`` is not τ-rigid (``Fac T`` need not be a torsion class).
    """
    mods = _as_list(T)
    if not is_tau_rigid(mods):
        raise ValueError("Fac T is only guaranteed to be a torsion class for τ-rigid T")
    members = frozenset(e.id for e in catalog if in_fac(e.module, mods))
    return TorsionClass(catalog.algebra, members, generator)


def filt_fac(M, catalog: IndecomposableCatalog) -> TorsionClass:
    """Smallest torsion class containing ``M``, on the catalog."""
    mods = [m for m in _as_list(M) if not m.is_zero()]
    members = frozenset(e.id for e in catalog if mods and in_filt_fac(e.module, mods))
    return TorsionClass(catalog.algebra, members)


def filt_sub(M, catalog: IndecomposableCatalog) -> frozenset:
    """Smallest torsion-free class containing ``M``, on the catalog."""
    mods = [m for m in _as_list(M) if not m.is_zero()]
    return frozenset(e.id for e in catalog if mods and in_filt_sub(e.module, mods))


def is_closed_torsion_class(cls: TorsionClass, catalog: IndecomposableCatalog) -> bool:
    """Quotient and extension closure checked within the catalog."""
    mods = [catalog[c] for c in cls.members]
    if not mods:
        return True
    closure = frozenset(e.id for e in catalog if in_filt_fac(e.module, mods))
    return closure == cls.members


@dataclass(frozen=True)
class TorsionDecomposition:
    torsion: Representation
    inclusion: Morphism
    free: Representation
    projection: Morphism


def torsion_submodule(T, M: Representation) -> TorsionDecomposition:
    """Canonical sequence ``0 -> tM -> M -> M/tM -> 0`` for the class ``Fac T``."""
    tr = trace_subspaces(_as_list(T), M)
    tM, inc = subrepresentation(M, tr)
    fM, proj = quotient(M, tr)
    return TorsionDecomposition(tM, inc, fM, proj)


# -- Ext and Ext-projectives -----------------------------------------------------

def ext1_dim(X: Representation, Y: Representation) -> int:
    """``dim Ext^1(X, Y) = dim Hom(ΩX, Y) - dim Hom(P_0, Y) + dim Hom(X, Y)``."""
    if X.is_zero():
        return 0
    pres = min_presentation(X)
    omega, _ = kernel(pres.cover)
    P0 = pres.cover.source
    return hom_dim(omega, Y) - hom_dim(P0, Y) + hom_dim(X, Y)


def ext_projectives(cls: TorsionClass, catalog: IndecomposableCatalog) -> list[str]:
    mods = {c: catalog[c] for c in cls.members}
    return [c for c in catalog.ids if c in mods
            and all(ext1_dim(mods[c], y) == 0 for y in mods.values())]


def p_of_torsion_class(cls: TorsionClass, catalog: IndecomposableCatalog) -> TauPair:
    """The pair ``(P(𝒯), e A)`` with ``e`` the vertices on which the class vanishes."""
    alg = catalog.algebra
    T = tuple(catalog[c] for c in ext_projectives(cls, catalog))
    mods = [catalog[c] for c in cls.members]
    P = tuple(i for i in range(1, alg.n + 1) if all(m.dims[i - 1] == 0 for m in mods))
    return TauPair(alg, T, P)


def perpendicular_check(pair: TauPair, catalog: IndecomposableCatalog) -> bool:
    """``Fac T ⊆ ⊥τT ∩ P⊥``, with equality when the pair is τ-tilting."""
    lhs = fac(pair.T, catalog).members if pair.T else frozenset()
    taus = [ar_translate(t) for t in pair.T]
    rhs = frozenset(e.id for e in catalog
                    if all(hom_dim(e.module, t) == 0 for t in taus)
                    and all(e.module.dims[i - 1] == 0 for i in pair.P))
    if not lhs <= rhs:
        return False
    return lhs == rhs if pair.size == pair.n else True


# -- approximations ------------------------------------------------------------------

@dataclass(frozen=True)
class Approximation:
    """Left ``add U``-approximation ``X -> ⊕ targets`` given by ``components``."""

    source: Representation
    targets: tuple[Representation, ...]
    components: tuple[Morphism, ...]

    def morphism(self) -> Morphism:
        from .representation import direct_sum

        X = self.source
        F = X.field
        if not self.targets:
            return Morphism.zero(X, zero_representation(X.algebra))
        S = direct_sum(list(self.targets))[0] if len(self.targets) > 1 else self.targets[0]
        comps = []
        for v in range(X.n):
            rows = [r for f in self.components for r in f.comps[v].rows]
            comps.append(Mat._raw(F, S.dims[v], X.dims[v], rows))
        return Morphism(X, S, tuple(comps))


def _factors(g: Morphism, components: Sequence[Morphism]) -> bool:
    """``g`` lies in ``{sum h_k o phi_k}`` over all maps ``h_k`` out of each target."""
    target = g.target
    gens = []
    for phi in components:
        for h in hom_basis(phi.target, target).basis:
            gens.append((h @ phi).vector())
    if not gens:
        return g.is_zero()
    F = g.source.field
    length = len(g.vector())
    if length == 0:
        return True
    base = span(F, length, gens)
    return contains(base, Mat.from_columns(F, [g.vector()], length))


def left_approximation(X: Representation, U: Sequence[Representation]) -> Approximation:
    """Minimal left ``add U``-approximation of ``X``.

    Starts from every hom-basis component and deletes components while every
    map to a summand of ``U`` still factors; the surviving set is irredundant.
    """
    U = [u for u in _as_list(U) if not u.is_zero()]
    comps = [f for u in U for f in hom_basis(X, u).basis]
    maps_to_cover = [f for u in U for f in hom_basis(X, u).basis]
    k = 0
    while k < len(comps):
        trial = comps[:k] + comps[k + 1:]
        if all(_factors(g, trial) for g in maps_to_cover):
            comps = trial
        else:
            k += 1
    return Approximation(X, tuple(f.target for f in comps), tuple(comps))


def brick_label(X: Representation, U: Sequence[Representation]) -> Representation:
    """``X`` modulo the images of all radical maps from ``U ⊕ X`` into ``X``.

    For a left mutation of ``U ⊕ X`` at ``X`` this is the brick labelling the edge.
    """
    F = X.field
    vecs = [[] for _ in range(X.n)]
    for u in U:
        for f in hom_basis(u, X).basis:
            for v in range(X.n):
                vecs[v].extend(f.comps[v].columns())
    for f in endomorphism_radical(hom_basis(X, X)):
        for v in range(X.n):
            vecs[v].extend(f.comps[v].columns())
    subs = tuple(span(F, X.dims[v], vecs[v]) for v in range(X.n))
    B, _ = quotient(X, subs)
    return B.with_name(loewy_name(B))


# -- mutation ----------------------------------------------------------------------

@dataclass(frozen=True)
class MutationResult:
    pair: TauPair
    direction: str  # "left" (Fac decreases) or "right"
    method: str
    new_index: int  # position of the exchanged summand in ``pair``
    label: Representation | None


def _dagger(pair: TauPair) -> tuple[TauPair, list[int]]:
    """Dual pair over the opposite algebra and the position map old -> new."""
    alg = pair.algebra
    op = alg.opposite()
    T_np, T_pr, pos = [], [], {}
    for k, t in enumerate(pair.T):
        v = projective_vertex(t)
        if v is None:
            T_np.append((k, transpose(t)))
        else:
            T_pr.append((k, v))
    newT = [m for _, m in T_np] + [projective(op, i) for i in pair.P]
    newP = [v for _, v in T_pr]
    nT = len(newT)
    for j, (k, _) in enumerate(T_np):
        pos[k] = j
    for j, i in enumerate(pair.P):
        pos[len(pair.T) + j] = len(T_np) + j
    for j, (k, _) in enumerate(T_pr):
        pos[k] = nT + j
    return TauPair(op, tuple(newT), tuple(newP)), [pos[k] for k in range(pair.size)]


def _left_exchange(pair: TauPair, idx: int) -> TauPair | None:
    """Left mutation at a ``T`` summand not in ``Fac`` of the others."""
    _, X = pair.summand(idx)
    rest = pair.without(idx)
    U = list(rest.T)
    approx = left_approximation(X, U)
    Y, _ = cokernel(approx.morphism())
    new = []
    if not Y.is_zero():
        ug = {g_vector(u) for u in U}
        for s in decompose(Y).summands:
            if g_vector(s) not in ug and all(g_vector(s) != g_vector(n) for n in new):
                new.append(s)
    if len(new) == 1:
        Z = new[0].with_name(loewy_name(new[0]))
        return TauPair(pair.algebra, rest.T + (Z,), rest.P)
    if new:
        return None
    candidates = [i for i in range(1, pair.n + 1)
                  if i not in rest.P and all(u.dims[i - 1] == 0 for u in U)]
    candidates = [i for i in candidates if X.dims[i - 1] != 0] or candidates
    if len(candidates) == 1:
        return TauPair(pair.algebra, rest.T, rest.P + (candidates[0],))
    return None


def _exchanged(old: TauPair, idx: int, new: TauPair) -> tuple[TauPair, int]:
    """Rebuilds ``new`` keeping the old representatives; returns it and the new position."""
    rest = old.without(idx)
    keep = set(rest.signed_g)
    fresh = [k for k, g in enumerate(new.signed_g) if g not in keep]
    if len(fresh) != 1 or new.size != old.size:
        raise InconsistencyError("mutation result does not share n-1 summands")
    kind, obj = new.summand(fresh[0])
    slot = old.slots[idx] if old.slots is not None else None
    rest_slots = rest.slots
    if kind == "T":
        T = rest.T + (obj.with_name(loewy_name(obj)),)
        P = rest.P
        slots = None if slot is None else rest_slots[:len(rest.T)] + (slot,) + rest_slots[len(rest.T):]
        pos = len(rest.T)
    else:
        T = rest.T
        P = rest.P + (obj,)
        slots = None if slot is None else rest_slots + (slot,)
        pos = len(T) + len(P) - 1
    return TauPair(old.algebra, T, P, slots), pos


def _right_exchange(pair: TauPair, idx: int) -> TauPair | None:
    dual, pos = _dagger(pair)
    res = _left_exchange(dual, pos[idx])
    if res is None:
        return None
    back, _ = _dagger(res)
    return back


def _verify(old: TauPair, new: TauPair) -> bool:
    return new.key != old.key and is_tau_tilting_pair(new)


def _fallback(pair: TauPair, idx: int, catalog: IndecomposableCatalog) -> TauPair | None:
    rest = pair.without(idx)
    old_key = pair.key
    found = []
    for e in catalog:
        cand = TauPair(pair.algebra, rest.T + (e.module,), rest.P)
        if cand.key != old_key and is_tau_tilting_pair(cand):
            found.append(cand)
    for i in range(1, pair.n + 1):
        if i in rest.P:
            continue
        cand = TauPair(pair.algebra, rest.T, rest.P + (i,))
        if cand.key != old_key and is_tau_tilting_pair(cand):
            found.append(cand)
    keys = {c.key for c in found}
    return found[0] if len(keys) == 1 else None


def fac_contained(small: TauPair, big: TauPair) -> bool:
    """``Fac small.T ⊆ Fac big.T``."""
    return all(in_fac(t, list(big.T)) for t in small.T)


def mutate(pair: TauPair, idx: int, catalog: IndecomposableCatalog | None = None) -> MutationResult:
    """The other completion of ``pair`` with summand ``idx`` removed.

    Raises:
        ValueError: the input is not τ-tilting.
        MutationError: no construction (nor the catalog search) succeeded.
    """
    if not is_tau_tilting_pair(pair):
        raise ValueError("mutation needs a τ-tilting pair")
    kind, X = pair.summand(idx)
    rest = pair.without(idx)
    left = kind == "T" and not in_fac(X, list(rest.T))
    raw = _left_exchange(pair, idx) if left else _right_exchange(pair, idx)
    method = "left-exchange" if left else "dual-exchange"
    new = None
    if raw is not None:
        try:
            cand, pos = _exchanged(pair, idx, raw)
            if _verify(pair, cand):
                new = cand
        except InconsistencyError:
            new = None
    if new is None and catalog is not None:
        raw = _fallback(pair, idx, catalog)
        if raw is not None:
            new, pos = _exchanged(pair, idx, raw)
            method = "catalog-search"
    if new is None:
        raise MutationError(f"could not mutate {pair.label()} at position {idx}")
    if left != fac_contained(new, pair):
        raise InconsistencyError("mutation direction disagrees with Fac inclusion")
    if left:
        label = brick_label(X, list(rest.T)) if kind == "T" else None
    else:
        nk, nobj = new.summand(pos)
        label = brick_label(nobj, list(rest.T)) if nk == "T" else None
    return MutationResult(new, "left" if left else "right", method, pos, label)


# -- mutation graph and Hasse poset ---------------------------------------------------

@dataclass
class Edge:
    upper: tuple  # key of the pair with the larger torsion class
    lower: tuple
    upper_index: int
    lower_index: int
    label: Representation | None = None
    label_id: str | None = None


@dataclass
class MutationGraph:
    algebra: BoundQuiverAlgebra
    nodes: dict = field(default_factory=dict)  # key -> TauPair, insertion ordered
    edges: list = field(default_factory=list)
    status: str = "complete"  # or "cap-nodes" / "cap-depth" / "cap-dim"
    depth: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def infinite_suspect(self) -> bool:
        return not self.complete

    def pairs(self) -> list[TauPair]:
        return list(self.nodes.values())

    def node_index(self, key) -> int:
        return list(self.nodes).index(key)

    def degree(self, key) -> int:
        return sum(1 for e in self.edges if key in (e.upper, e.lower))


def mutation_graph(alg: BoundQuiverAlgebra, catalog: IndecomposableCatalog | None = None,
                   max_nodes: int = 512, max_depth: int = 64,
                   max_module_dim: int | None = MAX_MODULE_DIM) -> MutationGraph:
    """Breadth-first mutation from ``(A, 0)``; caps give a flagged partial graph.

    ``max_module_dim`` bounds the total dimension of any summand that may join
    the graph; hom spaces grow quadratically, so τ-tilting infinite algebras
    need this budget as much as the node and depth caps.
    """
    root = initial_pair(alg)
    graph = MutationGraph(alg)
    graph.nodes[root.key] = root
    graph.depth[root.key] = 0
    seen_edges = set()
    queue = deque([root])
    while queue:
        pair = queue.popleft()
        d = graph.depth[pair.key]
        for idx in range(pair.size):
            res = mutate(pair, idx, catalog)
            new = res.pair
            if new.key not in graph.nodes:
                if len(graph.nodes) >= max_nodes:
                    graph.status = "cap-nodes"
                    continue
                if d + 1 > max_depth:
                    graph.status = "cap-depth" if graph.status == "complete" else graph.status
                    continue
                if max_module_dim is not None and any(t.dim > max_module_dim for t in new.T):
                    graph.status = "cap-dim" if graph.status == "complete" else graph.status
                    continue
                graph.nodes[new.key] = new
                graph.depth[new.key] = d + 1
                queue.append(new)
            ekey = frozenset((pair.key, new.key))
            if ekey in seen_edges:
                continue
            seen_edges.add(ekey)
            new_stored = graph.nodes[new.key]
            new_pos = _position_of(new_stored, new.signed_g[res.new_index])
            if res.direction == "left":
                graph.edges.append(Edge(pair.key, new.key, idx, new_pos, res.label))
            else:
                graph.edges.append(Edge(new.key, pair.key, new_pos, idx, res.label))
    return graph


def _position_of(pair: TauPair, g: tuple) -> int:
    return list(pair.signed_g).index(g)


@dataclass
class HassePoset:
    nodes: list
    covers: list  # (upper key, lower key)

    def top(self) -> list:
        lowers = {l for _, l in self.covers}
        return [p.key for p in self.nodes if p.key not in lowers]

    def bottom(self) -> list:
        uppers = {u for u, _ in self.covers}
        return [p.key for p in self.nodes if p.key not in uppers]


def hasse(graph: MutationGraph) -> HassePoset:
    """Mutation edges oriented from the larger to the smaller torsion class.

    Raises:
        InconsistencyError: an edge joins pairs with incomparable torsion classes.
    """
    covers = []
    for e in graph.edges:
        up, lo = graph.nodes[e.upper], graph.nodes[e.lower]
        if not fac_contained(lo, up) or fac_contained(up, lo):
            raise InconsistencyError("mutation edge between incomparable torsion classes")
        covers.append((e.upper, e.lower))
    return HassePoset(graph.pairs(), covers)


def almost_completions(graph: MutationGraph) -> dict:
    """For every almost complete sub-pair, the keys of the nodes containing it."""
    out: dict = {}
    for pair in graph.pairs():
        for idx in range(pair.size):
            sub = pair.without(idx)
            out.setdefault(sub.key, set()).add(pair.key)
    return out
