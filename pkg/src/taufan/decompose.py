"""Krull–Schmidt decomposition by Fitting splitting, isomorphism and brick tests."""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import sympy

from .linalg import Mat, hstack, span
from .representation import (
    HomBasis,
    Morphism,
    Representation,
    direct_sum,
    hom_basis,
    hom_dim,
    subrepresentation,
)
from .projectives import simple

DEFAULT_SEARCH_CAP = 5**6
_SEED = 20240917


class InconclusiveError(RuntimeError):
    """A search hit its cap before reaching a certified answer."""


def _endo_combinations(E: HomBasis, cap: int) -> Iterator[Morphism]:
    """Basis elements, then further combinations (exhaustive over F_p, seeded over Q)."""
    F = E.source.field
    d = E.dim
    yield from E.basis
    if d < 2:
        return
    if F.is_prime:
        if F.p**d > cap:
            raise InconclusiveError(f"endomorphism search needs {F.p}^{d} > {cap} combinations")
        for coeffs in itertools.product(range(F.p), repeat=d):
            if sum(1 for c in coeffs if c) >= 2:
                yield E.combination(coeffs)
    else:
        for i, j in itertools.combinations(range(d), 2):
            yield E.basis[i] + E.basis[j]
            yield E.basis[i] @ E.basis[j]
        rng = random.Random(_SEED)
        for _ in range(min(cap, 64)):
            yield E.combination([rng.randint(-3, 3) for _ in range(d)])


def _fitting_split(f: Morphism):
    """``(im f^N, ker f^N)`` when both are nonzero, else ``None``."""
    M = f.source
    g = f.power(max(M.dim, 1))
    im = tuple(c.column_space() for c in g.comps)
    ker = tuple(c.nullspace() for c in g.comps)
    if all(b.ncols == 0 for b in im) or all(b.ncols == 0 for b in ker):
        return None
    return im, ker


def _charpoly_split(f: Morphism):
    """Over Q: split along the primary decomposition of the minimal polynomial."""
    M = f.source
    big = _block(f)
    mat = sympy.Matrix(big.to_lists())
    lam = sympy.Symbol("x")
    factors = sympy.factor_list(mat.charpoly(lam).as_expr(), lam)[1]
    if len(factors) < 2:
        return None
    base, mult = factors[0]
    q = sympy.Poly(base**mult, lam)
    # evaluate q(f) vertexwise; its kernel/image split M
    comps = []
    for c in f.comps:
        acc = Mat.zeros(M.field, c.nrows, c.ncols)
        for k, coeff in enumerate(reversed(q.all_coeffs())):
            acc = acc + c.power(k).scale(Fraction(int(coeff.p), int(coeff.q)))
        comps.append(acc)
    return _fitting_split(Morphism(M, M, tuple(comps)))


def _block(f: Morphism) -> Mat:
    from .linalg import block_diag

    return block_diag(f.source.field, list(f.comps))


def _split(M: Representation, cap: int):
    E = hom_basis(M, M)
    if E.dim <= 1:
        return None
    for f in _endo_combinations(E, cap):
        parts = _fitting_split(f)
        if parts is None and not M.field.is_prime:
            parts = _charpoly_split(f)
        if parts is not None:
            return parts
    if not M.field.is_prime and not _certified_local_q(E):
        raise InconclusiveError("could not split or certify a local endomorphism ring over Q")
    return None


def _certified_local_q(E: HomBasis) -> bool:
    """End(M) local over Q: E/rad is one-dimensional or a field (trace-form radical)."""
    rad = endomorphism_radical(E)
    quotient_dim = E.dim - len(rad)
    if quotient_dim == 1:
        return True
    # E/rad commutative and generated by one element of full degree => a field
    rng = random.Random(_SEED)
    for _ in range(8):
        x = E.combination([rng.randint(-3, 3) for _ in range(E.dim)])
        mat = sympy.Matrix(_block(x).to_lists())
        minpoly = sympy.Poly(mat.charpoly(sympy.Symbol("x")).as_expr(), sympy.Symbol("x"))
        facs = sympy.factor_list(minpoly.as_expr())[1]
        if len(facs) == 1 and sympy.degree(facs[0][0]) == quotient_dim:
            return True
    return False


def endomorphism_radical(E: HomBasis) -> list[Morphism]:
    """Basis of the Jacobson radical of a local endomorphism ring.

    Over Q this is the radical of the trace form; over F_p the span of the
    nilpotent elements (exhaustive, so only for small rings).
    """
    M = E.source
    F = M.field
    if E.dim == 0:
        return []
    if F.is_prime:
        if E.dim == 1:
            f = E.basis[0]
            return [f] if f.power(max(M.dim, 1)).is_zero() else []
        if F.p**E.dim > DEFAULT_SEARCH_CAP:
            raise InconclusiveError("radical search too large")
        nil = []
        for coeffs in itertools.product(range(F.p), repeat=E.dim):
            if any(coeffs):
                f = E.combination(coeffs)
                if f.power(max(M.dim, 1)).is_zero():
                    nil.append(f.vector())
        if not nil:
            return []
        basis = span(F, len(nil[0]), nil).columns()
        return [_vector_to_morphism(M, v) for v in basis]
    n = E.dim
    gram = [[_trace(E.basis[i] @ E.basis[j]) for j in range(n)] for i in range(n)]
    ns = Mat.from_rows(F, gram, n).nullspace()
    return [E.combination(col) for col in ns.columns()]


def _trace(f: Morphism):
    F = f.source.field
    return F.norm(sum(c[i, i] for c in f.comps for i in range(c.nrows)))


def _vector_to_morphism(M: Representation, vec) -> Morphism:
    comps, pos = [], 0
    for d in M.dims:
        comps.append(Mat._raw(M.field, d, d, [vec[pos + r * d: pos + (r + 1) * d] for r in range(d)]))
        pos += d * d
    return Morphism(M, M, tuple(comps))


@dataclass(frozen=True)
class Decomposition:
    """Indecomposable summands with the isomorphism ``⊕ summands -> M``."""

    module: Representation
    summands: tuple[Representation, ...]
    witness: Morphism

    def grouped(self) -> list[tuple[Representation, int]]:
        groups: list[list] = []
        for s in self.summands:
            for g in groups:
                if is_isomorphic(g[0], s):
                    g[1] += 1
                    break
            else:
                groups.append([s, 1])
        return [(g[0], g[1]) for g in groups]


def _decompose_rec(M: Representation, cap: int) -> list[tuple[Representation, Morphism]]:
    """Pairs (summand, inclusion into M)."""
    parts = _split(M, cap)
    if parts is None:
        return [(M, Morphism.identity(M))]
    out = []
    for subs in parts:
        S, inc = subrepresentation(M, subs)
        for T, j in _decompose_rec(S, cap):
            out.append((T, inc @ j))
    return out


@functools.lru_cache(maxsize=20_000)
def decompose(M: Representation, cap: int = DEFAULT_SEARCH_CAP) -> Decomposition:
    """Splits ``M`` into indecomposables and returns a checked witness.

    Raises:
        InconclusiveError: the endomorphism search exceeded ``cap``.
    """
    if M.is_zero():
        return Decomposition(M, (), Morphism.identity(M))
    pieces = _decompose_rec(M, cap)
    summands = tuple(p[0] for p in pieces)
    S, _, projs = direct_sum(list(summands)) if len(summands) > 1 else (summands[0], None, None)
    if len(summands) == 1:
        witness = pieces[0][1]
    else:
        witness = Morphism(S, M, tuple(
            hstack(M.field, M.dims[v], [p[1].comps[v] for p in pieces]) for v in range(M.n)))
    if not (witness.is_isomorphism() and witness.residual_zero()):
        raise ArithmeticError("decomposition witness is not an isomorphism")
    return Decomposition(M, summands, witness)


def is_indecomposable(M: Representation, cap: int = DEFAULT_SEARCH_CAP) -> bool:
    return not M.is_zero() and len(decompose(M, cap).summands) == 1


def fingerprint(M: Representation) -> tuple:
    alg = M.algebra
    return (M.dims, hom_dim(M, M),
            tuple(hom_dim(simple(alg, i), M) for i in range(1, alg.n + 1)),
            tuple(hom_dim(M, simple(alg, i)) for i in range(1, alg.n + 1)))


def _find_iso(M: Representation, N: Representation, cap: int) -> Morphism | None:
    H = hom_basis(M, N)
    if H.dim == 0:
        return None
    F = M.field
    candidates: Iterator[Morphism]
    if F.is_prime and F.p**H.dim <= cap:
        candidates = (H.combination(c) for c in itertools.product(range(F.p), repeat=H.dim) if any(c))
    else:
        rng = random.Random(_SEED)
        basis_first = list(H.basis)
        randoms = (H.combination([rng.randint(-3, 3) if not F.is_prime else rng.randrange(F.p)
                                  for _ in range(H.dim)]) for _ in range(256))
        candidates = itertools.chain(basis_first, randoms)
    for f in candidates:
        if f.is_isomorphism():
            return f
    return None


def isomorphism(M: Representation, N: Representation, cap: int = DEFAULT_SEARCH_CAP) -> Morphism | None:
    """An explicit isomorphism ``M -> N``, or ``None`` when none exists.

    Raises:
        InconclusiveError: neither an isomorphism nor a proof of absence was found.
    """
    if M.dims != N.dims:
        return None
    if M == N:
        return Morphism.identity(M)
    if fingerprint(M) != fingerprint(N):
        return None
    f = _find_iso(M, N, cap)
    if f is not None:
        return f
    F = M.field
    exhaustive = F.is_prime and F.p ** hom_dim(M, N) <= cap
    if exhaustive:
        return None
    # Fall back to summand matching, exact for indecomposables.
    dm, dn = decompose(M, cap), decompose(N, cap)
    if len(dm.summands) == 1 and len(dn.summands) == 1:
        if _indecomposables_isomorphic(M, N):
            raise InconclusiveError("isomorphic indecomposables but no witness found")
        return None
    if len(dm.summands) != len(dn.summands):
        return None
    remaining = list(range(len(dn.summands)))
    for s in dm.summands:
        hit = next((k for k in remaining if _indecomposables_isomorphic(s, dn.summands[k])), None)
        if hit is None:
            return None
        remaining.remove(hit)
    raise InconclusiveError("summands match but no global witness was assembled")


def _indecomposables_isomorphic(X: Representation, Y: Representation) -> bool:
    """Exact test for indecomposables: some ``g o f`` is invertible (End local)."""
    if X.dims != Y.dims:
        return False
    for f in hom_basis(X, Y).basis:
        for g in hom_basis(Y, X).basis:
            if (g @ f).is_isomorphism():
                return True
    return False


def is_isomorphic(M: Representation, N: Representation, cap: int = DEFAULT_SEARCH_CAP) -> bool:
    return isomorphism(M, N, cap) is not None


def is_brick(M: Representation, cap: int = DEFAULT_SEARCH_CAP) -> bool:
    """True iff ``End(M)`` is a division ring."""
    if M.is_zero():
        return False
    E = hom_basis(M, M)
    if E.dim == 1:
        return True
    F = M.field
    if F.is_prime:
        if F.p**E.dim > cap:
            raise InconclusiveError("brick test exceeds the search cap")
        return all(E.combination(c).is_isomorphism()
                   for c in itertools.product(range(F.p), repeat=E.dim) if any(c))
    return not endomorphism_radical(E) and _certified_local_q(E) and is_indecomposable(M, cap)
