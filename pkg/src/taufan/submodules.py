"""Exhaustive enumeration of subrepresentations over small prime fields."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import GF, Field, PrimeField
from .linalg import Mat, contains
from .representation import Representation

MAX_TOTAL_DIM = 6
MAX_PRIME = 5


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed a configured budget."""


class UnsupportedField(ValueError):
    """Enumeration requested over the rationals."""


@functools.lru_cache(maxsize=None)
def all_subspaces(field: PrimeField, d: int) -> tuple[Mat, ...]:
    """Every subspace of F_p^d, as column-basis matrices (from RREF row spaces)."""
    out = []
    p = field.p
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * d for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), x in zip(free, values):
                    rows[r][c] = x
                out.append(Mat._raw(field, d, k, [tuple(rows[r][i] for r in range(k)) for i in range(d)]))
    return tuple(out)


def _check_budget(dims: Sequence[int], field: Field, max_total: int, max_prime: int) -> None:
    if not field.is_prime:
        raise UnsupportedField("submodule enumeration needs a prime field")
    if field.p > max_prime:
        raise BudgetExceeded(f"field size {field.p} exceeds the cap {max_prime}")
    if sum(dims) > max_total:
        raise BudgetExceeded(f"total dimension {sum(dims)} exceeds the cap {max_total}")


def _enumerate(field: PrimeField, dims: Sequence[int], arrows, maps: Sequence[Mat]):
    """Backtracking over vertices; yields tuples of subspaces stable under every arrow."""
    n = len(dims)
    checks: list[list[tuple[int, int, Mat]]] = [[] for _ in range(n)]
    for (s, t), m in zip(arrows, maps):
        checks[max(s, t)].append((s, t, m))
    choice: list[Mat | None] = [None] * n

    def rec(v: int):
        if v == n:
            yield tuple(choice)
            return
        for U in all_subspaces(field, dims[v]):
            choice[v] = U
            ok = True
            for s, t, m in checks[v]:
                src = choice[s]
                if src.ncols and not contains(choice[t], m @ src):
                    ok = False
                    break
            if ok:
                yield from rec(v + 1)
        choice[v] = None

    yield from rec(0)


def submodules(M: Representation, max_total: int = MAX_TOTAL_DIM,
               max_prime: int = MAX_PRIME) -> list[tuple[Mat, ...]]:
    """All subrepresentations of ``M`` as per-vertex subspace tuples.

    Raises:
        UnsupportedField: ``M`` is defined over the rationals.
        BudgetExceeded: the dimension or field size exceeds the caps.
    """
    _check_budget(M.dims, M.field, max_total, max_prime)
    arrows = [(a.source - 1, a.target - 1) for a in M.algebra.quiver.arrows]
    return list(_enumerate(M.field, M.dims, arrows, M.maps))


@dataclass(frozen=True)
class SubmoduleProfile:
    """Dimension vectors of all subrepresentations (0 and M included).

    ``agreement`` is False when reductions modulo different primes disagreed.
    """

    module: Representation
    sub_dim_vectors: frozenset
    agreement: bool = True
    primes: tuple[int, ...] = ()

    def proper_nonzero(self) -> list[tuple[int, ...]]:
        zero = tuple(0 for _ in self.module.dims)
        return sorted(u for u in self.sub_dim_vectors if u != zero and u != self.module.dims)

    def nonzero_quotients(self) -> list[tuple[int, ...]]:
        dims = self.module.dims
        out = {tuple(d - x for d, x in zip(dims, u)) for u in self.sub_dim_vectors if u != dims}
        return sorted(out)

    def nonzero_subs(self) -> list[tuple[int, ...]]:
        zero = tuple(0 for _ in self.module.dims)
        return sorted(u for u in self.sub_dim_vectors if u != zero)


RATIONAL_PRIMES = (2, 3, 5)


def _reduce_matrix(m: Mat, F: PrimeField) -> Mat:
    return Mat._raw(F, m.nrows, m.ncols, [[F.coerce(Fraction(x)) for x in r] for r in m.rows])


def _path_matrices(M: Representation) -> list[Mat]:
    """Arrow matrices and the products along composable pairs of arrows."""
    arrows = M.algebra.quiver.arrows
    mats = list(M.maps)
    for (a, ma), (b, mb) in itertools.product(zip(arrows, M.maps), repeat=2):
        if a.target == b.source:
            mats.append(mb @ ma)
    return mats


def _good_reduction(M: Representation, p: int) -> bool:
    """``p`` avoids every denominator and preserves the rank of every short path."""
    mats = _path_matrices(M)
    if not all(Fraction(x).denominator % p for m in mats for r in m.rows for x in r):
        return False
    F = GF(p)
    return all(_reduce_matrix(m, F).rank() == m.rank() for m in mats)


@functools.lru_cache(maxsize=100_000)
def _profile_cached(M: Representation, primes: tuple[int, ...], max_total: int,
                    max_prime: int) -> SubmoduleProfile:
    if M.field.is_prime:
        subs = submodules(M, max_total, max_prime)
        return SubmoduleProfile(M, frozenset(tuple(b.ncols for b in s) for s in subs), True, (M.field.p,))
    usable = tuple(p for p in primes if _good_reduction(M, p))
    if not usable:
        raise BudgetExceeded(f"no prime in {primes} reduces {M.name or M.dims} faithfully")
    arrows = [(a.source - 1, a.target - 1) for a in M.algebra.quiver.arrows]
    results = []
    for p in usable:
        F = GF(p)
        _check_budget(M.dims, F, max_total, max_prime)
        maps = [_reduce_matrix(m, F) for m in M.maps]
        results.append(frozenset(tuple(b.ncols for b in s) for s in _enumerate(F, M.dims, arrows, maps)))
    meet = frozenset.intersection(*results)
    return SubmoduleProfile(M, meet, all(r == results[0] for r in results), usable)


def submodule_profile(M: Representation, primes: Sequence[int] = RATIONAL_PRIMES,
                      max_total: int = MAX_TOTAL_DIM, max_prime: int = MAX_PRIME) -> SubmoduleProfile:
    """Set of dimension vectors of subrepresentations.

    Over a prime field the enumeration is direct and exact. Over the
    rationals every subrepresentation reduces to one of the same dimension
    vector modulo any prime avoiding the denominators, so the rational set is
    contained in the intersection of the sets found modulo each usable prime
    in ``primes``. Primes that lower the rank of an arrow or of a path of
    length two are not used. The intersection is returned; ``agreement`` is
    False when the primes disagreed, which signals that it may over-count.

    Raises:
        BudgetExceeded: no prime in ``primes`` is usable, or a size cap is hit.
    """
    return _profile_cached(M, tuple(primes), max_total, max_prime)
