"""Brute-force catalog of indecomposable modules up to a dimension bound."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import BoundQuiverAlgebra
from .decompose import fingerprint, is_indecomposable, is_isomorphic
from .linalg import Mat
from .projectives import injective, projective
from .representation import Representation, RepresentationError, loewy_name
from .submodules import MAX_PRIME, MAX_TOTAL_DIM, BudgetExceeded, UnsupportedField

MAX_MAP_TUPLES = 1 << 16


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    module: Representation


class IndecomposableCatalog:
    """Pairwise non-isomorphic indecomposables, each with a canonical id.

    Ids are Loewy-layer names (``1/2``, ``11/2``); when several classes share
    a name they are told apart by a ``#k`` suffix in enumeration order.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, entries: Sequence[CatalogEntry], dim_bound: tuple[int, ...]):
        self.algebra = algebra
        self.entries = tuple(entries)
        self.dim_bound = dim_bound
        self._by_id = {e.id: e.module for e in self.entries}
        self._lookup: dict[Representation, str] = {e.module: e.id for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    def __getitem__(self, cid: str) -> Representation:
        return self._by_id[cid]

    def modules(self) -> list[Representation]:
        return [e.module for e in self.entries]

    def find(self, M: Representation) -> str | None:
        """Id of the entry isomorphic to the indecomposable ``M``, if any."""
        hit = self._lookup.get(M)
        if hit is not None:
            return hit
        fp = fingerprint(M)
        for e in self.entries:
            if e.module.dims == M.dims and fingerprint(e.module) == fp and is_isomorphic(e.module, M):
                self._lookup[M] = e.id
                return e.id
        return None

    def covers(self, dims: Sequence[int]) -> bool:
        return all(d <= b for d, b in zip(dims, self.dim_bound))


def default_bound(alg: BoundQuiverAlgebra) -> tuple[int, ...]:
    """Per-vertex maximum dimension over all indecomposable projectives and injectives."""
    mods = [projective(alg, i) for i in range(1, alg.n + 1)] + [injective(alg, i) for i in range(1, alg.n + 1)]
    return tuple(max(m.dims[v] for m in mods) for v in range(alg.n))


def _connected_support(alg: BoundQuiverAlgebra, dims: Sequence[int]) -> bool:
    support = {v + 1 for v, d in enumerate(dims) if d}
    if not support:
        return False
    start = next(iter(support))
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for a in alg.quiver.arrows:
            for x, y in ((a.source, a.target), (a.target, a.source)):
                if x == v and y in support and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen == support


def _map_tuples(alg: BoundQuiverAlgebra, dims: Sequence[int]) -> Iterator[list[Mat]]:
    F = alg.field
    shapes = [(dims[a.target - 1], dims[a.source - 1]) for a in alg.quiver.arrows]
    sizes = [r * c for r, c in shapes]
    for values in itertools.product(range(F.p), repeat=sum(sizes)):
        maps, pos = [], 0
        for (r, c), s in zip(shapes, sizes):
            chunk = values[pos:pos + s]
            maps.append(Mat._raw(F, r, c, [chunk[i * c:(i + 1) * c] for i in range(r)]))
            pos += s
        yield maps


def enumerate_indecomposables(alg: BoundQuiverAlgebra, dim_bound: Sequence[int] | None = None,
                              max_total: int = MAX_TOTAL_DIM, max_prime: int = MAX_PRIME,
                              max_tuples: int = MAX_MAP_TUPLES) -> IndecomposableCatalog:
    """Enumerates indecomposables with ``dims <= dim_bound`` vertexwise.

    Raises:
        UnsupportedField: the algebra is over the rationals.
        BudgetExceeded: a dimension vector needs more than ``max_tuples`` map
            tuples, or the field/total-dimension caps are exceeded.
    """
    F = alg.field
    if not F.is_prime:
        raise UnsupportedField("catalog enumeration needs a prime field; use reduced_mod(p)")
    if F.p > max_prime:
        raise BudgetExceeded(f"field size {F.p} exceeds the cap {max_prime}")
    bound = tuple(dim_bound) if dim_bound is not None else default_bound(alg)
    if len(bound) != alg.n:
        raise ValueError("dimension bound has the wrong length")
    vectors = [d for d in itertools.product(*(range(b + 1) for b in bound))
               if any(d) and sum(d) <= max_total]
    if sum(bound) > max_total:
        raise BudgetExceeded(f"bound {bound} exceeds the total-dimension cap {max_total}")
    vectors.sort(key=lambda d: (sum(d), tuple(-x for x in d)))
    classes: list[Representation] = []
    for dims in vectors:
        if not _connected_support(alg, dims):
            continue
        entries = sum(dims[a.target - 1] * dims[a.source - 1] for a in alg.quiver.arrows)
        if F.p**entries > max_tuples:
            raise BudgetExceeded(f"dims {dims} need {F.p}^{entries} map tuples")
        found: list[Representation] = []
        for maps in _map_tuples(alg, dims):
            try:
                M = Representation(alg, dims, maps)
            except RepresentationError:
                continue
            if not is_indecomposable(M):
                continue
            fp = fingerprint(M)
            if any(fingerprint(X) == fp and is_isomorphic(X, M) for X in found):
                continue
            found.append(M)
        classes.extend(found)
    names = [loewy_name(M) for M in classes]
    counts: dict[str, int] = {}
    seen: dict[str, int] = {}
    for nm in names:
        counts[nm] = counts.get(nm, 0) + 1
    entries = []
    for M, nm in zip(classes, names):
        if counts[nm] > 1:
            seen[nm] = seen.get(nm, 0) + 1
            nm = f"{nm}#{seen[nm]}"
        entries.append(CatalogEntry(nm, M.with_name(nm)))
    return IndecomposableCatalog(alg, entries, bound)
