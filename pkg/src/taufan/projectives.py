"""Simple, projective and injective modules; presentations, τ and the transpose.

``P(i)`` has basis the residue paths starting at ``i`` (arrows act by right
concatenation); ``I(i)`` is dual to the residue paths ending at ``i``. A map
``P(j) -> P(i)`` is left multiplication by an element of ``e_i A e_j``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from .algebra import BoundQuiverAlgebra
from .linalg import Mat, complement, contains
from .representation import (
    Morphism,
    Representation,
    cokernel,
    direct_sum,
    kernel,
    radical_subspaces,
    zero_representation,
)


def _check_vertex(alg: BoundQuiverAlgebra, i: int) -> None:
    if not 1 <= i <= alg.n:
        raise IndexError(f"vertex {i} out of range 1..{alg.n}")


@functools.lru_cache(maxsize=None)
def simple(alg: BoundQuiverAlgebra, i: int) -> Representation:
    _check_vertex(alg, i)
    F = alg.field
    dims = [1 if v == i else 0 for v in range(1, alg.n + 1)]
    maps = [Mat.zeros(F, dims[a.target - 1], dims[a.source - 1]) for a in alg.quiver.arrows]
    return Representation(alg, dims, maps, str(i))


@functools.lru_cache(maxsize=None)
def projective(alg: BoundQuiverAlgebra, i: int) -> Representation:
    _check_vertex(alg, i)
    F = alg.field
    bases = {v: alg.paths_between(i, v) for v in range(1, alg.n + 1)}
    maps = []
    for a in alg.quiver.arrows:
        src, tgt = bases[a.source], bases[a.target]
        pos = {k: r for r, k in enumerate(tgt)}
        cols = []
        for k in src:
            p = alg.path_basis[k]
            col = [F.zero] * len(tgt)
            for idx, c in alg.reduce_path(p.source, p.arrows + (a.label,)).items():
                col[pos[idx]] = c
            cols.append(col)
        maps.append(Mat.from_columns(F, cols, len(tgt)))
    from .representation import loewy_name

    rep = Representation(alg, [len(bases[v]) for v in range(1, alg.n + 1)], maps)
    return rep.with_name(loewy_name(rep))


@functools.lru_cache(maxsize=None)
def injective(alg: BoundQuiverAlgebra, i: int) -> Representation:
    """``I(i)``: at vertex v, the dual of the paths ``v -> i``."""
    _check_vertex(alg, i)
    F = alg.field
    bases = {v: alg.paths_between(v, i) for v in range(1, alg.n + 1)}
    maps = []
    for a in alg.quiver.arrows:
        s, t = a.source, a.target
        # entry [q, p] = coefficient of p in a*q, for q: t -> i and p: s -> i
        rows = []
        arrow_el = alg.reduce_path(s, (a.label,))
        for q in bases[t]:
            prod = alg.multiply(arrow_el, {q: F.one})
            rows.append([prod.get(p, F.zero) for p in bases[s]])
        maps.append(Mat(F, len(bases[t]), len(bases[s]), rows))
    from .representation import loewy_name

    rep = Representation(alg, [len(bases[v]) for v in range(1, alg.n + 1)], maps)
    return rep.with_name(loewy_name(rep))


def projective_sum(alg: BoundQuiverAlgebra, vertices: Sequence[int]) -> Representation:
    if not vertices:
        return zero_representation(alg)
    if len(vertices) == 1:
        return projective(alg, vertices[0])
    return direct_sum([projective(alg, v) for v in vertices])[0]


def injective_sum(alg: BoundQuiverAlgebra, vertices: Sequence[int]) -> Representation:
    if not vertices:
        return zero_representation(alg)
    if len(vertices) == 1:
        return injective(alg, vertices[0])
    return direct_sum([injective(alg, v) for v in vertices])[0]


def _block_offsets(alg: BoundQuiverAlgebra, vertices: Sequence[int], paths_of) -> list[list[int]]:
    """Per vertex v, the starting offset of each summand's block in the sum at v."""
    offs = []
    for v in range(1, alg.n + 1):
        row, acc = [], 0
        for g in vertices:
            row.append(acc)
            acc += len(paths_of(g, v))
        offs.append(row)
    return offs


def projective_map(alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int],
                   elements: Sequence[Sequence[dict]]) -> Morphism:
    """Morphism ``⊕P(src) -> ⊕P(tgt)``; ``elements[t][s]`` lies in ``e_tgt[t] A e_src[s]``.

    The generator of ``P(src[s])`` goes to ``sum_t elements[t][s]``.
    """
    F = alg.field
    S, T = projective_sum(alg, src), projective_sum(alg, tgt)
    t_off = _block_offsets(alg, tgt, alg.paths_between)
    comps = []
    for v in range(1, alg.n + 1):
        cols = []
        for s, j in enumerate(src):
            for y in alg.paths_between(j, v):
                col = [F.zero] * T.dims[v - 1]
                for t, i in enumerate(tgt):
                    x = elements[t][s]
                    if not x:
                        continue
                    prod = alg.multiply(x, {y: F.one})
                    pos = {k: r for r, k in enumerate(alg.paths_between(i, v))}
                    for k, c in prod.items():
                        r = t_off[v - 1][t] + pos[k]
                        col[r] = F.norm(col[r] + c)
                cols.append(col)
        comps.append(Mat.from_columns(F, cols, T.dims[v - 1]))
    return Morphism(S, T, tuple(comps))


def nakayama_map(alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int],
                 elements: Sequence[Sequence[dict]]) -> Morphism:
    """The Nakayama image ``⊕I(src) -> ⊕I(tgt)`` of :func:`projective_map`."""
    F = alg.field
    S, T = injective_sum(alg, src), injective_sum(alg, tgt)
    comps = []
    for v in range(1, alg.n + 1):
        rows = []
        for t, i in enumerate(tgt):
            for q in alg.paths_between(v, i):
                row = []
                for s, j in enumerate(src):
                    prod = alg.multiply({q: F.one}, elements[t][s]) if elements[t][s] else {}
                    row.extend(prod.get(r, F.zero) for r in alg.paths_between(v, j))
                rows.append(row)
        comps.append(Mat(F, T.dims[v - 1], S.dims[v - 1], rows))
    return Morphism(S, T, tuple(comps))


@dataclass(frozen=True)
class Generators:
    """Top generators of a module: vertex and vector for each."""

    vertices: tuple[int, ...]
    vectors: tuple[tuple, ...]


def top_generators(M: Representation) -> Generators:
    rad = radical_subspaces(M)
    verts, vecs = [], []
    for v in range(M.n):
        for col in complement(rad[v]).columns():
            verts.append(v + 1)
            vecs.append(col)
    return Generators(tuple(verts), tuple(vecs))


def projective_cover(M: Representation) -> tuple[tuple[int, ...], Morphism]:
    """Projective cover ``⊕P(i) -> M`` built from a top complement."""
    alg, F = M.algebra, M.field
    gens = top_generators(M)
    P0 = projective_sum(alg, gens.vertices)
    comps = []
    for v in range(1, alg.n + 1):
        cols = []
        for i, m in zip(gens.vertices, gens.vectors):
            for k in alg.paths_between(i, v):
                p = alg.path_basis[k]
                if p.arrows:
                    cols.append(M.path_matrix(p.arrows).apply(m))
                else:
                    cols.append(m)
        comps.append(Mat.from_columns(F, cols, M.dims[v - 1]))
    return gens.vertices, Morphism(P0, M, tuple(comps))


def _element_blocks(alg: BoundQuiverAlgebra, gens: Sequence[int], vertex: int, vec: Sequence) -> list[dict]:
    """Splits a vector of ``(⊕P(gens))_vertex`` into elements of ``e_g A e_vertex``."""
    out = []
    pos = 0
    for g in gens:
        paths = alg.paths_between(g, vertex)
        el = {k: vec[pos + r] for r, k in enumerate(paths) if vec[pos + r] != 0}
        out.append(el)
        pos += len(paths)
    return out


@dataclass(frozen=True)
class Presentation:
    """Minimal projective presentation ``P_{-1} -> P_0 -> M -> 0``.

    Attributes:
        module: the presented module.
        p0: vertices of the summands of ``P_0``.
        p1: vertices of the summands of ``P_{-1}``.
        elements: ``elements[t][s]`` in ``e_{p0[t]} A e_{p1[s]}`` defines the map.
        map: the morphism ``P_{-1} -> P_0``.
        cover: the projective cover ``P_0 -> M``.
    """

    module: Representation
    p0: tuple[int, ...]
    p1: tuple[int, ...]
    elements: tuple[tuple[dict, ...], ...]
    map: Morphism
    cover: Morphism

    def _count(self, verts) -> tuple[int, ...]:
        return tuple(sum(1 for v in verts if v == i) for i in range(1, self.module.n + 1))

    @property
    def a(self) -> tuple[int, ...]:
        return self._count(self.p0)

    @property
    def b(self) -> tuple[int, ...]:
        return self._count(self.p1)


@functools.lru_cache(maxsize=50_000)
def min_presentation(M: Representation) -> Presentation:
    """Minimal projective presentation, certified exact and minimal."""
    alg = M.algebra
    p0, cover = projective_cover(M)
    K, inc = kernel(cover)
    gens = top_generators(K)
    elements_cols = []
    for j, k in zip(gens.vertices, gens.vectors):
        vec = inc.comps[j - 1].apply(k)
        elements_cols.append(_element_blocks(alg, p0, j, vec))
    p1 = gens.vertices
    elements = tuple(tuple(elements_cols[s][t] for s in range(len(p1))) for t in range(len(p0)))
    fmap = projective_map(alg, p1, p0, elements)
    pres = Presentation(M, tuple(p0), tuple(p1), elements, fmap, cover)
    _certify(pres, K, inc)
    return pres


def _certify(pres: Presentation, K: Representation, inc: Morphism) -> None:
    # exactness: image of P_{-1} equals ker(cover); minimality: ker ⊆ rad P_0
    if not (pres.cover @ pres.map).is_zero():
        raise ArithmeticError("presentation is not a complex")
    P0 = pres.cover.source
    rad = radical_subspaces(P0)
    for v in range(P0.n):
        im = pres.map.comps[v].column_space()
        kv = inc.comps[v]
        if im.ncols != kv.ncols or not contains(kv, im):
            raise ArithmeticError("presentation is not exact")
        if not contains(rad[v], kv):
            raise ArithmeticError("projective cover is not minimal")
    if not pres.cover.is_surjective():
        raise ArithmeticError("cover is not surjective")


def is_projective(M: Representation) -> bool:
    return not M.is_zero() and not min_presentation(M).p1


@functools.lru_cache(maxsize=50_000)
def ar_translate(M: Representation) -> Representation:
    """``τM = ker(ν P_{-1} -> ν P_0)`` from the minimal presentation."""
    alg = M.algebra
    if M.is_zero():
        return zero_representation(alg)
    pres = min_presentation(M)
    if not pres.p1:
        return zero_representation(alg)
    nu = nakayama_map(alg, pres.p1, pres.p0, pres.elements)
    tau, _ = kernel(nu)
    from .representation import loewy_name

    return tau.with_name(loewy_name(tau))


@functools.lru_cache(maxsize=50_000)
def transpose(M: Representation) -> Representation:
    """Auslander–Bridger transpose ``Tr M``, a module over the opposite algebra."""
    alg = M.algebra
    op = alg.opposite()
    if M.is_zero():
        return zero_representation(op)
    pres = min_presentation(M)
    if not pres.p1:
        return zero_representation(op)
    # dual map ⊕P^op(p0) -> ⊕P^op(p1): elements transpose and pass to A^op
    dual = tuple(tuple(alg.to_opposite(pres.elements[t][s]) for t in range(len(pres.p0)))
                 for s in range(len(pres.p1)))
    f = projective_map(op, pres.p0, pres.p1, dual)
    tr, _ = cokernel(f)
    from .representation import loewy_name

    return tr.with_name(loewy_name(tr))
