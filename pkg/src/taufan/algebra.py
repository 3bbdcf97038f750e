"""Bound quiver algebras KQ/I: parsing, ideal reduction and the path basis.

Paths compose left to right: ``a*b`` means first ``a``, then ``b``. A path
is identified by its source vertex and its arrow-label tuple; the trivial
path at vertex ``i`` has an empty tuple and prints as ``e<i>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import Field, FieldError, GF, field_from_token
from .linalg import Mat, _rref_rows

PathKey = tuple  # (source, arrow labels)
Element = dict  # basis index -> nonzero coefficient


class AlgebraSyntaxError(ValueError):
    """A malformed algebra file, located by 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class AlgebraError(ValueError):
    """A well-formed but mathematically unacceptable algebra description."""


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """Vertices ``1..vertex_count`` and labelled arrows (loops and multi-arrows allowed)."""

    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise AlgebraError("a quiver needs at least one vertex")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("arrow labels must be unique")
        for a in self.arrows:
            if not (1 <= a.source <= self.vertex_count and 1 <= a.target <= self.vertex_count):
                raise AlgebraError(f"arrow {a.label} has an endpoint out of range")

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def arrows_from(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple(Arrow(a.label, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def key(self) -> PathKey:
        return (self.source, self.arrows)

    def __str__(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each of length at least two."""

    terms: tuple[tuple[object, tuple[str, ...]], ...]

    def paths(self) -> list[tuple[str, ...]]:
        return [p for _, p in self.terms]


def _path_sort_key(p: Path) -> tuple:
    return (p.length, p.arrows, p.source)


class BoundQuiverAlgebra:
    """The algebra ``KQ/I`` with a computed basis of residue paths.

    Use :func:`parse_algebra` or :meth:`build` rather than the constructor.

    Attributes:
        quiver: the underlying quiver.
        relations: generators of the ideal.
        field: coefficient field.
        nil_bound: every path of at least this length is zero.
        path_basis: residue paths forming a basis, length-lex ordered.
    """

    def __init__(self, quiver: Quiver, relations: tuple[Relation, ...], field: Field,
                 nil_bound: int, basis: list[Path], normal_forms: dict, declared_bound: bool):
        self.quiver = quiver
        self.relations = relations
        self.field = field
        self.nil_bound = nil_bound
        self.path_basis: tuple[Path, ...] = tuple(basis)
        self.index: dict[PathKey, int] = {p.key: i for i, p in enumerate(basis)}
        self._normal = normal_forms
        self._declared_bound = declared_bound
        self._opposite: BoundQuiverAlgebra | None = None
        self._between: dict[tuple[int, int], list[int]] = {}
        for i, p in enumerate(basis):
            self._between.setdefault((p.source, p.target), []).append(i)
        self._cache: dict = {}

    # -- construction -------------------------------------------------------
    @classmethod
    def build(cls, quiver: Quiver, relations: Sequence[Relation], field: Field,
              nil_bound: int | None = None) -> "BoundQuiverAlgebra":
        """Validates relations and computes the path basis by truncated reduction."""
        rels = tuple(_normalise_relation(quiver, r, field) for r in relations)
        rels = tuple(r for r in rels if r.terms)
        declared = nil_bound is not None
        longest = max((len(p) for r in rels for p in r.paths()), default=0)
        limit = nil_bound if declared else max(len(quiver.arrows) * quiver.vertex_count, longest) + 1
        for length in range(1, limit + 1):
            result = _reduce_at(quiver, rels, field, length)
            if result is not None:
                basis, normal = result
                return cls(quiver, rels, field, length, basis, normal, declared)
        raise AlgebraError(
            f"unbounded: some path of length {limit} survives the relations "
            "(the ideal is not admissible or the nil bound is too small)")

    # -- basic data ---------------------------------------------------------
    @property
    def n(self) -> int:
        return self.quiver.vertex_count

    @property
    def dimension(self) -> int:
        return len(self.path_basis)

    def paths_between(self, i: int, j: int) -> list[int]:
        """Basis indices of residue paths from ``i`` to ``j``."""
        return self._between.get((i, j), [])

    def trivial(self, v: int) -> int:
        return self.index[(v, ())]

    def arrow_index(self, label: str) -> int:
        return [a.label for a in self.quiver.arrows].index(label)

    # -- multiplication -----------------------------------------------------
    def reduce_path(self, source: int, arrows: tuple[str, ...]) -> Element:
        """Expresses a path (source, arrows) in the basis."""
        if len(arrows) >= self.nil_bound:
            return {}
        nf = self._normal.get((source, arrows))
        if nf is None:
            raise KeyError(f"unknown path {arrows} from {source}")
        return dict(nf)

    def multiply(self, x: Element, y: Element) -> Element:
        """Product ``x*y`` of two elements (x first, then y)."""
        F = self.field
        out: dict[int, object] = {}
        for i, cx in x.items():
            p = self.path_basis[i]
            for j, cy in y.items():
                q = self.path_basis[j]
                if p.target != q.source:
                    continue
                for k, ck in self.reduce_path(p.source, p.arrows + q.arrows).items():
                    out[k] = F.norm(out.get(k, F.zero) + cx * cy * ck)
        return {k: c for k, c in out.items() if c != 0}

    def element(self, path: Path | str) -> Element:
        if isinstance(path, str):
            path = self.parse_path(path)
        return self.reduce_path(path.source, path.arrows)

    def parse_path(self, text: str) -> Path:
        text = text.strip()
        m = re.fullmatch(r"e(\d+)", text)
        if m:
            v = int(m.group(1))
            return Path(v, v, ())
        labels = tuple(t.strip() for t in text.split("*"))
        arrows = [self.quiver.arrow(l) for l in labels]
        return Path(arrows[0].source, arrows[-1].target, labels)

    def element_str(self, x: Element) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = x[i]
            p = str(self.path_basis[i])
            parts.append(p if c == 1 else f"{self.field.to_str(c)}*{p}")
        return " + ".join(parts)

    # -- derived algebras ---------------------------------------------------
    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra on the reversed quiver (cached, and involutive)."""
        if self._opposite is None:
            rels = [Relation(tuple((c, tuple(reversed(p))) for c, p in r.terms)) for r in self.relations]
            op = BoundQuiverAlgebra.build(self.quiver.opposite(), rels, self.field, self.nil_bound)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_opposite(self, x: Element) -> Element:
        """Image of an element under the anti-isomorphism A -> A^op."""
        op = self.opposite()
        F = self.field
        out: dict[int, object] = {}
        for i, c in x.items():
            p = self.path_basis[i]
            for k, ck in op.reduce_path(p.target, tuple(reversed(p.arrows))).items():
                out[k] = F.norm(out.get(k, F.zero) + c * ck)
        return {k: c for k, c in out.items() if c != 0}

    def reduced_mod(self, p: int) -> "BoundQuiverAlgebra":
        """The same quiver and relations over F_p (rational coefficients reduced)."""
        key = ("mod", p)
        if key not in self._cache:
            F = GF(p)
            rels = [Relation(tuple((F.coerce(Fraction(c)), path) for c, path in r.terms))
                    for r in self.relations]
            self._cache[key] = BoundQuiverAlgebra.build(self.quiver, rels, F, self.nil_bound)
        return self._cache[key]

    def serialize(self) -> str:
        """Canonical text form; parsing it returns an equal algebra."""
        lines = [f"field {self.field.name}", f"vertices {self.n}"]
        for a in self.quiver.arrows:
            lines.append(f"arrow {a.label} {a.source} {a.target}")
        for r in self.relations:
            terms = []
            for k, (c, path) in enumerate(r.terms):
                c = Fraction(c)
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                body = "*".join(path) if mag == 1 else f"{mag}*" + "*".join(path)
                if k == 0:
                    terms.append(("-" if c < 0 else "") + body)
                else:
                    terms.append(f"{sign} {body}")
            lines.append("relation " + " ".join(terms))
        lines.append(f"nilbound {self.nil_bound}")
        return "\n".join(lines) + "\n"

    def structurally_equal(self, other: "BoundQuiverAlgebra") -> bool:
        return (
            self.quiver == other.quiver
            and self.field.name == other.field.name
            and self.nil_bound == other.nil_bound
            and [p.key for p in self.path_basis] == [p.key for p in other.path_basis]
            and self.relations == other.relations
        )

    def __repr__(self) -> str:
        return (f"<BoundQuiverAlgebra n={self.n} arrows={len(self.quiver.arrows)} "
                f"dim={self.dimension} over {self.field.name}>")


def _normalise_relation(quiver: Quiver, rel: Relation, field: Field) -> Relation:
    """Checks admissibility and parallelism; merges repeated paths."""
    merged: dict[tuple[str, ...], object] = {}
    ends = set()
    for c, path in rel.terms:
        if len(path) < 2:
            raise AlgebraError(f"relation term {'*'.join(path)} has length < 2 (not admissible)")
        arrows = [quiver.arrow(l) for l in path]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise AlgebraError(f"path {'*'.join(path)} is not composable")
        ends.add((arrows[0].source, arrows[-1].target))
        try:
            c = field.coerce(c)
        except FieldError as exc:
            raise AlgebraError(str(exc)) from None
        merged[path] = field.norm(merged.get(path, field.zero) + c)
    if len(ends) > 1:
        raise AlgebraError("paths in one relation must share source and target")
    return Relation(tuple((c, p) for p, c in merged.items() if c != 0))


def _paths_up_to(quiver: Quiver, length: int) -> list[Path]:
    paths = [Path(v, v, ()) for v in range(1, quiver.vertex_count + 1)]
    frontier = [Path(a.source, a.target, (a.label,)) for a in quiver.arrows]
    for _ in range(length):
        paths.extend(frontier)
        nxt = []
        for p in frontier:
            for a in quiver.arrows_from(p.target):
                nxt.append(Path(p.source, a.target, p.arrows + (a.label,)))
        frontier = nxt
    return sorted(paths, key=_path_sort_key)


def _reduce_at(quiver: Quiver, rels: tuple[Relation, ...], field: Field, length: int):
    """Reduction modulo the ideal truncated at paths of length ``length``.

    Returns ``(basis, normal_forms)`` when every path of length ``length``
    lies in the truncated ideal, otherwise ``None``.
    """
    paths = _paths_up_to(quiver, length)
    by_block: dict[tuple[int, int], list[Path]] = {}
    for p in paths:
        by_block.setdefault((p.source, p.target), []).append(p)
    norm = field.norm

    # Ideal spanning vectors u*r*w, truncated above ``length``.
    gens: dict[tuple[int, int], list[dict]] = {}
    for rel in rels:
        first = quiver.arrow(rel.terms[0][1][0])
        last = quiver.arrow(rel.terms[0][1][-1])
        s, t = first.source, last.target
        lefts = [p for p in paths if p.target == s and p.length <= length - 2]
        rights = [p for p in paths if p.source == t and p.length <= length - 2]
        for u in lefts:
            for w in rights:
                vec = {}
                for c, body in rel.terms:
                    full = u.arrows + body + w.arrows
                    if len(full) <= length:
                        vec[full] = norm(vec.get(full, field.zero) + c)
                vec = {k: c for k, c in vec.items() if c != 0}
                if vec:
                    gens.setdefault((u.source, w.target), []).append(vec)

    basis: list[Path] = []
    normal: dict[PathKey, dict] = {}
    for block, bpaths in sorted(by_block.items()):
        # Columns ordered from the largest path down, so pivots land on the
        # largest paths and the leftover (standard) paths form the basis.
        cols = sorted(bpaths, key=_path_sort_key, reverse=True)
        col_of = {p.arrows: j for j, p in enumerate(cols)}
        rows = []
        for vec in gens.get(block, []):
            row = [field.zero] * len(cols)
            for arrows, c in vec.items():
                row[col_of[arrows]] = c
            rows.append(row)
        red, piv = _rref_rows(field, rows, len(cols))
        pivset = set(piv)
        pivot_row = {pc: r for r, pc in zip(red, piv)}
        std = [p for j, p in enumerate(cols) if j not in pivset]
        if any(p.length == length for p in std):
            return None
        for j, p in enumerate(cols):
            if j in pivset:
                r = pivot_row[j]
                if p.length == length and any(r[k] != 0 for k in range(len(cols)) if k not in pivset):
                    return None
                normal[p.key] = {cols[k].key: norm(-r[k]) for k in range(len(cols))
                                 if k not in pivset and r[k] != 0}
            else:
                normal[p.key] = {p.key: field.one}
        basis.extend(std)
    basis.sort(key=_path_sort_key)
    index = {p.key: i for i, p in enumerate(basis)}
    normal = {k: {index[b]: c for b, c in nf.items()} for k, nf in normal.items()}
    return basis, normal


# -- parsing ----------------------------------------------------------------

_LABEL = r"[A-Za-z_][A-Za-z0-9_]*"
_TERM = re.compile(rf"\s*([+-])?\s*((?:\d+(?:/\d+)?\s*\*\s*)?{_LABEL}(?:\s*\*\s*{_LABEL})*)\s*")


def _parse_relation(text: str, field: Field, line: int, offset: int) -> Relation:
    terms = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (terms and m.group(1) is None):
            raise AlgebraSyntaxError("malformed relation term", line, offset + pos + 1)
        sign = -1 if m.group(1) == "-" else 1
        parts = [p.strip() for p in m.group(2).split("*")]
        coeff = Fraction(1)
        if re.fullmatch(r"\d+(/\d+)?", parts[0]):
            coeff = Fraction(parts.pop(0))
            if coeff == 0:
                raise AlgebraSyntaxError("zero coefficient", line, offset + pos + 1)
        try:
            c = field.coerce(sign * coeff)
        except FieldError as exc:
            raise AlgebraSyntaxError(str(exc), line, offset + pos + 1) from None
        if c == 0:
            raise AlgebraSyntaxError(f"coefficient vanishes in {field.name}", line, offset + pos + 1)
        terms.append((c, tuple(parts)))
        pos = m.end()
    if not terms:
        raise AlgebraSyntaxError("empty relation", line, offset + 1)
    return Relation(tuple(terms))


def parse_algebra(text: str) -> BoundQuiverAlgebra:
    """Parses the line-oriented algebra format.

    Args:
        text: file contents with ``field``, ``vertices``, ``arrow``,
            ``relation`` and optional ``nilbound`` lines; ``#`` starts a comment.

    Returns:
        The validated algebra with its path basis computed.

    Raises:
        AlgebraSyntaxError: malformed input, with line and column.
        AlgebraError: non-admissible relations or an unbounded algebra.
    """
    field: Field = GF(2)
    n = None
    arrows: list[Arrow] = []
    raw_relations: list[tuple[str, int, int]] = []
    nil_bound = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        words = line.split()
        kw = words[0]
        if kw == "field":
            if len(words) != 2:
                raise AlgebraSyntaxError("expected 'field q' or 'field f<p>'", lineno, indent + 1)
            try:
                field = field_from_token(words[1])
            except FieldError as exc:
                raise AlgebraSyntaxError(str(exc), lineno, line.index(words[1]) + 1) from None
        elif kw == "vertices":
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise AlgebraSyntaxError("expected 'vertices <n>' with n >= 1", lineno, indent + 1)
            n = int(words[1])
        elif kw == "arrow":
            if len(words) != 4 or not re.fullmatch(_LABEL, words[1]) \
                    or not words[2].isdigit() or not words[3].isdigit():
                raise AlgebraSyntaxError("expected 'arrow <label> <src> <tgt>'", lineno, indent + 1)
            arrows.append(Arrow(words[1], int(words[2]), int(words[3])))
        elif kw == "relation":
            start = line.index("relation") + len("relation")
            raw_relations.append((line[start:], lineno, start))
        elif kw == "nilbound":
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise AlgebraSyntaxError("expected 'nilbound <N>'", lineno, indent + 1)
            nil_bound = int(words[1])
        else:
            raise AlgebraSyntaxError(f"unknown keyword {kw!r}", lineno, indent + 1)
    if n is None:
        raise AlgebraSyntaxError("missing 'vertices' line", 1, 1)
    quiver = Quiver(n, tuple(arrows))
    labels = {a.label for a in arrows}
    relations = []
    for body, lineno, offset in raw_relations:
        rel = _parse_relation(body, field, lineno, offset)
        for _, path in rel.terms:
            for label in path:
                if label not in labels:
                    col = offset + body.index(label) + 1
                    raise AlgebraSyntaxError(f"unknown arrow {label!r}", lineno, col)
        relations.append(rel)
    return BoundQuiverAlgebra.build(quiver, relations, field, nil_bound)


def load_algebra(path: str) -> BoundQuiverAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def path_basis(alg: BoundQuiverAlgebra) -> list[Path]:
    """The stored basis of residue paths, trivial paths first, then length-lex."""
    return list(alg.path_basis)


def symmetrizer(alg: BoundQuiverAlgebra) -> Mat:
    """Diagonal matrix of ``dim End(S(i))``, computed from the simples."""
    from .representation import hom_dim
    from .projectives import simple

    from .field import QQ
    diag = [hom_dim(simple(alg, i), simple(alg, i)) for i in range(1, alg.n + 1)]
    return Mat.from_rows(QQ, [[diag[i] if i == j else 0 for j in range(alg.n)] for i in range(alg.n)])


def bundled_algebra(name: str) -> BoundQuiverAlgebra:
    """Loads one of the packaged example algebras (``a2``, ``cycle3``, ``kronecker``)."""
    from importlib import resources

    text = resources.files("taufan.data").joinpath(f"{name}.alg").read_text(encoding="utf-8")
    return parse_algebra(text)
