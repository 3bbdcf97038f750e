"""Quiver representations (right modules), morphisms and the basic abelian operations.

For an arrow ``a: s -> t`` the map ``M_a`` is a ``dims[t] x dims[s]`` matrix
acting on column vectors. Subrepresentations are tuples of per-vertex basis
matrices (see ``linalg``).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Sequence

from .algebra import BoundQuiverAlgebra
from .linalg import Mat, block_diag, complement, contains, coordinates, hstack, span

Subspaces = tuple  # tuple[Mat, ...], one basis matrix per vertex


class RepresentationError(ValueError):
    """Raised for representations that violate shapes or relations."""


class Representation:
    """A finite-dimensional representation of a bound quiver algebra.

    Args:
        algebra: the ambient algebra.
        dims: dimension at each vertex (vertex ``i`` at position ``i-1``).
        maps: one matrix per arrow, in the quiver's arrow order.
        name: optional display name; not part of equality.
        check: verify shapes and relations.
    """

    __slots__ = ("algebra", "dims", "maps", "name", "_key", "_hash")

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int], maps: Sequence[Mat],
                 name: str = "", check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        self.name = name
        self._key = (self.dims, tuple(m.rows for m in self.maps))
        self._hash = None
        if check:
            self._validate()

    def _validate(self) -> None:
        alg = self.algebra
        if len(self.dims) != alg.n or any(d < 0 for d in self.dims):
            raise RepresentationError(f"bad dimension vector {self.dims}")
        if len(self.maps) != len(alg.quiver.arrows):
            raise RepresentationError("one matrix per arrow is required")
        for a, m in zip(alg.quiver.arrows, self.maps):
            if m.shape != (self.dims[a.target - 1], self.dims[a.source - 1]):
                raise RepresentationError(f"map {a.label} has shape {m.shape}")
        for rel in alg.relations:
            total = Mat.zeros(alg.field, self.dims[_rel_target(alg, rel) - 1],
                              self.dims[_rel_source(alg, rel) - 1])
            for c, path in rel.terms:
                total = total + self.path_matrix(path).scale(c)
            if not total.is_zero():
                raise RepresentationError("relation does not vanish on the representation")

    # -- data ---------------------------------------------------------------
    @property
    def field(self):
        return self.algebra.field

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def map(self, label: str) -> Mat:
        return self.maps[self.algebra.arrow_index(label)]

    def path_matrix(self, arrows: Sequence[str]) -> Mat:
        """Action of a nontrivial path (first arrow applied first)."""
        out = None
        for label in arrows:
            m = self.map(label)
            out = m if out is None else m @ out
        return out

    def element_matrix(self, x: dict, source: int, target: int) -> Mat:
        """Action of an element of ``e_source A e_target`` as a linear map."""
        alg = self.algebra
        out = Mat.zeros(alg.field, self.dims[target - 1], self.dims[source - 1])
        for i, c in x.items():
            p = alg.path_basis[i]
            m = Mat.identity(alg.field, self.dims[source - 1]) if not p.arrows else self.path_matrix(p.arrows)
            out = out + m.scale(c)
        return out

    def with_name(self, name: str) -> "Representation":
        r = Representation(self.algebra, self.dims, self.maps, name, check=False)
        return r

    def full_subspaces(self) -> Subspaces:
        return tuple(Mat.identity(self.field, d) for d in self.dims)

    def zero_subspaces(self) -> Subspaces:
        return tuple(Mat.zeros(self.field, d, 0) for d in self.dims)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation) and self.algebra is other.algebra
                and self._key == other._key)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.algebra), self._key))
        return self._hash

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Rep{label} dims={self.dims}>"

    def describe(self) -> str:
        """Module-file text for this representation."""
        lines = [f"module {self.name or 'M'}", "dim " + " ".join(map(str, self.dims))]
        for a, m in zip(self.algebra.quiver.arrows, self.maps):
            if m.nrows and m.ncols and not m.is_zero():
                body = ",".join("[" + ",".join(self.field.to_str(x) for x in r) + "]" for r in m.rows)
                lines.append(f"map {a.label} [{body}]")
        return "\n".join(lines) + "\n"


def _rel_source(alg: BoundQuiverAlgebra, rel) -> int:
    return alg.quiver.arrow(rel.terms[0][1][0]).source


def _rel_target(alg: BoundQuiverAlgebra, rel) -> int:
    return alg.quiver.arrow(rel.terms[0][1][-1]).target


def zero_representation(alg: BoundQuiverAlgebra) -> Representation:
    F = alg.field
    return Representation(alg, [0] * alg.n,
                          [Mat.zeros(F, 0, 0) for _ in alg.quiver.arrows], "0", check=False)


@dataclass(frozen=True, eq=False)
class Morphism:
    """A family of linear maps ``comps[i]: M_i -> N_i`` commuting with the arrows."""

    source: Representation
    target: Representation
    comps: tuple[Mat, ...]

    @classmethod
    def zero(cls, M: Representation, N: Representation) -> "Morphism":
        F = M.field
        return cls(M, N, tuple(Mat.zeros(F, n, m) for m, n in zip(M.dims, N.dims)))

    @classmethod
    def identity(cls, M: Representation) -> "Morphism":
        return cls(M, M, tuple(Mat.identity(M.field, d) for d in M.dims))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self o other``."""
        return Morphism(other.source, self.target, tuple(a @ b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, tuple(a.scale(c) for a in self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def rank(self) -> int:
        return sum(c.rank() for c in self.comps)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, tuple(c.inverse() for c in self.comps))

    def vector(self) -> tuple:
        return tuple(x for c in self.comps for r in c.rows for x in r)

    def residual_zero(self) -> bool:
        """True when every intertwining equation holds exactly."""
        alg = self.source.algebra
        for a, ms, ns in zip(alg.quiver.arrows, self.source.maps, self.target.maps):
            lhs = ns @ self.comps[a.source - 1]
            rhs = self.comps[a.target - 1] @ ms
            if lhs != rhs:
                return False
        return True

    def power(self, k: int) -> "Morphism":
        return Morphism(self.source, self.target, tuple(c.power(k) for c in self.comps))


@dataclass(frozen=True)
class HomBasis:
    source: Representation
    target: Representation
    basis: tuple[Morphism, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combination(self, coeffs: Sequence) -> Morphism:
        f = Morphism.zero(self.source, self.target)
        for c, b in zip(coeffs, self.basis):
            if c != 0:
                f = f + b.scale(c)
        return f


@functools.lru_cache(maxsize=200_000)
def hom_basis(M: Representation, N: Representation) -> HomBasis:
    """Basis of ``Hom(M, N)`` by solving the intertwining equations exactly."""
    if M.algebra is not N.algebra:
        raise RepresentationError("modules over different algebras")
    alg, F = M.algebra, M.field
    offsets = []
    total = 0
    for m, n in zip(M.dims, N.dims):
        offsets.append(total)
        total += m * n

    def var(v: int, r: int, c: int) -> int:
        return offsets[v] + r * M.dims[v] + c

    rows = []
    for a, ma, na in zip(alg.quiver.arrows, M.maps, N.maps):
        s, t = a.source - 1, a.target - 1
        # (N_a phi_s - phi_t M_a)[i, j] = 0
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row = [F.zero] * total
                for k in range(N.dims[s]):
                    coef = na[i, k]
                    if coef != 0:
                        idx = var(s, k, j)
                        row[idx] = F.norm(row[idx] + coef)
                for k in range(M.dims[t]):
                    coef = ma[k, j]
                    if coef != 0:
                        idx = var(t, i, k)
                        row[idx] = F.norm(row[idx] - coef)
                if any(x != 0 for x in row):
                    rows.append(row)
    if rows:
        ns = Mat.from_rows(F, rows, total).nullspace()
        vectors = ns.columns()
    else:
        vectors = [tuple(F.one if k == j else F.zero for k in range(total)) for j in range(total)]
    basis = []
    for vec in vectors:
        comps = []
        for v in range(alg.n):
            m, n = M.dims[v], N.dims[v]
            comps.append(Mat._raw(F, n, m, [vec[offsets[v] + r * m: offsets[v] + (r + 1) * m]
                                            for r in range(n)]))
        basis.append(Morphism(M, N, tuple(comps)))
    return HomBasis(M, N, tuple(basis))


def hom_dim(M: Representation, N: Representation) -> int:
    return hom_basis(M, N).dim


# -- sub and quotient objects ------------------------------------------------

def is_subrepresentation(M: Representation, subs: Subspaces) -> bool:
    alg = M.algebra
    for a, m in zip(alg.quiver.arrows, M.maps):
        s, t = subs[a.source - 1], subs[a.target - 1]
        if s.ncols and not contains(t, m @ s):
            return False
    return True


def subrepresentation(M: Representation, subs: Subspaces, name: str = "") -> tuple[Representation, Morphism]:
    """The subrepresentation spanned by ``subs`` and its inclusion into ``M``."""
    alg, F = M.algebra, M.field
    maps = []
    for a, m in zip(alg.quiver.arrows, M.maps):
        s, t = subs[a.source - 1], subs[a.target - 1]
        if s.ncols == 0 or t.ncols == 0:
            if s.ncols and not (m @ s).is_zero():
                raise RepresentationError("subspaces are not arrow-stable")
            maps.append(Mat.zeros(F, t.ncols, s.ncols))
        else:
            maps.append(coordinates(t, m @ s))
    sub = Representation(alg, [b.ncols for b in subs], maps, name, check=False)
    return sub, Morphism(sub, M, tuple(subs))


def quotient(M: Representation, subs: Subspaces, name: str = "") -> tuple[Representation, Morphism]:
    """``M / subs`` together with the projection ``M -> M/subs``."""
    alg, F = M.algebra, M.field
    comps, comp_bases = [], []
    for v, b in enumerate(subs):
        c = complement(b)
        comp_bases.append(c)
        full = hstack(F, M.dims[v], [b, c])
        inv = full.inverse() if M.dims[v] else Mat.zeros(F, 0, 0)
        # coordinates along the complement give the projection
        comps.append(inv.submatrix(range(b.ncols, M.dims[v]), range(M.dims[v])))
    maps = []
    for a, m in zip(alg.quiver.arrows, M.maps):
        s, t = a.source - 1, a.target - 1
        maps.append(comps[t] @ m @ comp_bases[s])
    Q = Representation(alg, [c.ncols for c in comp_bases], maps, name, check=False)
    return Q, Morphism(M, Q, tuple(comps))


def kernel(f: Morphism) -> tuple[Representation, Morphism]:
    return subrepresentation(f.source, tuple(c.nullspace() for c in f.comps))


def image_subspaces(f: Morphism) -> Subspaces:
    return tuple(c.column_space() for c in f.comps)


def image(f: Morphism) -> tuple[Representation, Morphism]:
    return subrepresentation(f.target, image_subspaces(f))


def cokernel(f: Morphism) -> tuple[Representation, Morphism]:
    return quotient(f.target, image_subspaces(f))


def direct_sum(reps: Sequence[Representation], name: str = "") -> tuple[Representation, list[Morphism], list[Morphism]]:
    """Direct sum with its canonical inclusions and projections."""
    if not reps:
        raise RepresentationError("direct sum of nothing; use zero_representation")
    alg, F = reps[0].algebra, reps[0].field
    dims = [sum(r.dims[v] for r in reps) for v in range(alg.n)]
    maps = [block_diag(F, [r.maps[k] for r in reps]) for k in range(len(alg.quiver.arrows))]
    S = Representation(alg, dims, maps, name, check=False)
    incs, projs = [], []
    offs = [0] * alg.n
    for r in reps:
        inc, proj = [], []
        for v in range(alg.n):
            e = [[F.one if i == offs[v] + j else F.zero for j in range(r.dims[v])] for i in range(dims[v])]
            m = Mat._raw(F, dims[v], r.dims[v], e)
            inc.append(m)
            proj.append(m.T)
            offs[v] += r.dims[v]
        incs.append(Morphism(r, S, tuple(inc)))
        projs.append(Morphism(S, r, tuple(proj)))
    return S, incs, projs


def sum_of(reps: Sequence[Representation], alg: BoundQuiverAlgebra | None = None) -> Representation:
    """Direct sum as a bare representation (zero module for an empty list)."""
    reps = [r for r in reps]
    if not reps:
        return zero_representation(alg)
    if len(reps) == 1:
        return reps[0]
    return direct_sum(reps)[0]


def transport(M: Representation, basis_change: Sequence[Mat], name: str = "") -> Representation:
    """Conjugates ``M`` by invertible per-vertex matrices ``g_v`` (new = g M g^-1)."""
    alg = M.algebra
    maps = []
    for a, m in zip(alg.quiver.arrows, M.maps):
        maps.append(basis_change[a.target - 1] @ m @ basis_change[a.source - 1].inverse())
    return Representation(alg, M.dims, maps, name or M.name)


# -- radical layers and naming --------------------------------------------------

def radical_subspaces(M: Representation) -> Subspaces:
    """Radical of ``M``: the sum of images of all arrow actions."""
    alg, F = M.algebra, M.field
    vecs: list[list] = [[] for _ in range(alg.n)]
    for a, m in zip(alg.quiver.arrows, M.maps):
        vecs[a.target - 1].extend(m.columns())
    return tuple(span(F, M.dims[v], vecs[v]) for v in range(alg.n))


def top_dims(M: Representation) -> tuple[int, ...]:
    rad = radical_subspaces(M)
    return tuple(d - r.ncols for d, r in zip(M.dims, rad))


def socle_subspaces(M: Representation) -> Subspaces:
    """Vectors killed by every arrow."""
    alg, F = M.algebra, M.field
    out = []
    for v in range(alg.n):
        outs = [m for a, m in zip(alg.quiver.arrows, M.maps) if a.source - 1 == v]
        if not outs or M.dims[v] == 0:
            out.append(Mat.identity(F, M.dims[v]))
            continue
        stacked = Mat.from_rows(F, [r for m in outs for r in m.rows], M.dims[v])
        out.append(stacked.nullspace())
    return tuple(out)


def loewy_layers(M: Representation) -> list[tuple[int, ...]]:
    """Dimension vectors of the radical layers ``rad^k M / rad^{k+1} M``."""
    layers = []
    current = M
    while not current.is_zero():
        rad = radical_subspaces(current)
        layers.append(tuple(d - r.ncols for d, r in zip(current.dims, rad)))
        current, _ = subrepresentation(current, rad)
    return layers


def loewy_name(M: Representation) -> str:
    """Layered name such as ``1/2`` or ``11/2``: each layer lists its simples."""
    if M.is_zero():
        return "0"
    parts = []
    for layer in loewy_layers(M):
        parts.append("".join(str(v + 1) * c for v, c in enumerate(layer)))
    return "/".join(parts)


# -- module file format -----------------------------------------------------------

class ModuleSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _parse_matrix(text: str, field, line: int) -> list[list]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ModuleSyntaxError("matrix must be written as [[..],[..]]", line)
    rows = re.findall(r"\[([^\[\]]*)\]", text[1:-1])
    out = []
    for r in rows:
        entries = [e for e in (x.strip() for x in r.split(",")) if e]
        try:
            out.append([field.parse(e) for e in entries])
        except ValueError as exc:
            raise ModuleSyntaxError(str(exc), line) from None
    return out


def parse_modules(alg: BoundQuiverAlgebra, text: str) -> list[Representation]:
    """Parses one or more ``module``/``dim``/``map`` blocks."""
    blocks: list[dict] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, _, rest = line.partition(" ")
        if kw == "module":
            blocks.append({"name": rest.strip(), "dims": None, "maps": {}, "line": lineno})
            continue
        if not blocks:
            blocks.append({"name": "M", "dims": None, "maps": {}, "line": lineno})
        cur = blocks[-1]
        if kw == "dim":
            try:
                cur["dims"] = [int(x) for x in rest.split()]
            except ValueError:
                raise ModuleSyntaxError("dimensions must be integers", lineno) from None
            if len(cur["dims"]) != alg.n:
                raise ModuleSyntaxError(f"expected {alg.n} dimensions", lineno)
        elif kw == "map":
            label, _, mat = rest.strip().partition(" ")
            if label not in {a.label for a in alg.quiver.arrows}:
                raise ModuleSyntaxError(f"unknown arrow {label!r}", lineno)
            cur["maps"][label] = (_parse_matrix(mat, alg.field, lineno), lineno)
        else:
            raise ModuleSyntaxError(f"unknown keyword {kw!r}", lineno)
    out = []
    for b in blocks:
        if b["dims"] is None:
            raise ModuleSyntaxError("missing 'dim' line", b["line"])
        dims = b["dims"]
        maps = []
        for a in alg.quiver.arrows:
            shape = (dims[a.target - 1], dims[a.source - 1])
            if a.label in b["maps"]:
                rows, ln = b["maps"][a.label]
                if shape[0] == 0 or shape[1] == 0:
                    rows = [[] for _ in range(shape[0])] if not any(rows) else rows
                if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
                    raise ModuleSyntaxError(f"map {a.label} must be {shape[0]}x{shape[1]}", ln)
                maps.append(Mat(alg.field, shape[0], shape[1], rows))
            else:
                maps.append(Mat.zeros(alg.field, *shape))
        try:
            out.append(Representation(alg, dims, maps, b["name"]))
        except RepresentationError as exc:
            raise ModuleSyntaxError(str(exc), b["line"]) from None
    return out
