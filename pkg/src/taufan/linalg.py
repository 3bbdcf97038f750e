"""Dense exact matrices over a ``Field`` and the subspace helpers built on them.

Subspaces of F^d are stored as ``d x k`` matrices whose columns form a basis.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import Field


def _rref_rows(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of ``rows`` (mutated copy) and pivot columns."""
    rows = [list(r) for r in rows]
    norm, inv = field.norm, field.inv
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r]
        s = inv(piv[c])
        if s != 1:
            piv = rows[r] = [norm(x * s) for x in piv]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [norm(a - f * b) for a, b in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class Mat:
    """An immutable ``nrows x ncols`` matrix with entries in ``field``."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Iterable[Sequence]):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        if len(self.rows) != nrows or any(len(r) != ncols for r in self.rows):
            raise ValueError(f"shape mismatch for {nrows}x{ncols} matrix")
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, nrows: int, ncols: int, rows) -> "Mat":
        # Trusted constructor: entries are already canonical.
        m = object.__new__(cls)
        m.field, m.nrows, m.ncols = field, nrows, ncols
        m.rows = tuple(tuple(r) for r in rows)
        m._hash = None
        return m

    # -- constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return cls._raw(field, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls._raw(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Mat":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Mat":
        cols = list(cols)
        return cls(field, nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    # -- basic access -------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = ",".join("[" + ",".join(self.field.to_str(x) for x in r) + "]" for r in self.rows)
        return f"Mat({self.nrows}x{self.ncols}: [{body}])"

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    # -- arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "Mat":
        if self.nrows == 0:
            return Mat._raw(self.field, self.ncols, 0, [() for _ in range(self.ncols)])
        return Mat._raw(self.field, self.ncols, self.nrows, list(zip(*self.rows)))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        norm = self.field.norm
        cols = other.T.rows
        out = [[norm(sum(a * b for a, b in zip(r, c))) for c in cols] for r in self.rows]
        return Mat._raw(self.field, self.nrows, other.ncols, out)

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        norm = self.field.norm
        return Mat._raw(self.field, self.nrows, self.ncols,
                        [[norm(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        norm = self.field.norm
        return Mat._raw(self.field, self.nrows, self.ncols,
                        [[norm(a - b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        norm = self.field.norm
        return Mat._raw(self.field, self.nrows, self.ncols, [[norm(c * a) for a in r] for r in self.rows])

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        norm = self.field.norm
        return tuple(norm(sum(a * b for a, b in zip(r, v))) for r in self.rows)

    def power(self, k: int) -> "Mat":
        result = Mat.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def _same_shape(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- elimination --------------------------------------------------------
    def rref(self) -> tuple["Mat", list[int]]:
        rows, piv = _rref_rows(self.field, list(self.rows), self.ncols)
        return Mat._raw(self.field, len(rows), self.ncols, rows), piv

    def rank(self) -> int:
        return len(_rref_rows(self.field, list(self.rows), self.ncols)[1])

    def nullspace(self) -> "Mat":
        """Basis of ``{x : self @ x = 0}`` as the columns of a matrix."""
        rows, piv = _rref_rows(self.field, list(self.rows), self.ncols)
        free = [c for c in range(self.ncols) if c not in set(piv)]
        z, o = self.field.zero, self.field.one
        norm = self.field.norm
        basis = []
        for f in free:
            v = [z] * self.ncols
            v[f] = o
            for r, pc in zip(rows, piv):
                v[pc] = norm(-r[f])
            basis.append(v)
        return Mat.from_columns(self.field, basis, self.ncols)

    def column_space(self) -> "Mat":
        """Basis of the column space: the pivot columns of ``self``."""
        _, piv = self.rref()
        return Mat._raw(self.field, self.nrows, len(piv), [[r[j] for j in piv] for r in self.rows])

    def solve(self, rhs: "Mat") -> "Mat | None":
        """One solution ``X`` of ``self @ X = rhs``, or ``None`` if inconsistent."""
        n, k = self.ncols, rhs.ncols
        aug = [list(a) + list(b) for a, b in zip(self.rows, rhs.rows)]
        rows, piv = _rref_rows(self.field, aug, n + k)
        if any(p >= n for p in piv):
            return None
        z = self.field.zero
        out = [[z] * k for _ in range(n)]
        for r, pc in zip(rows, piv):
            out[pc] = list(r[n:])
        return Mat._raw(self.field, n, k, out)

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(Mat.identity(self.field, self.nrows))
        if x is None or self.rank() < self.nrows:
            raise ZeroDivisionError("matrix is singular")
        return x

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        field = self.field
        norm, inv = field.norm, field.inv
        rows = [list(r) for r in self.rows]
        n = self.nrows
        d = field.one
        for c in range(n):
            pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if pr is None:
                return field.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                d = norm(-d)
            d = norm(d * rows[c][c])
            s = inv(rows[c][c])
            for i in range(c + 1, n):
                f = norm(rows[i][c] * s)
                if f != 0:
                    rows[i] = [norm(a - f * b) for a, b in zip(rows[i], rows[c])]
        return d

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        return Mat._raw(self.field, len(row_idx), len(col_idx),
                        [[self.rows[i][j] for j in col_idx] for i in row_idx])


def hstack(field: Field, nrows: int, mats: Sequence[Mat]) -> Mat:
    """Concatenates matrices side by side (``nrows`` fixes the empty case)."""
    rows = [[] for _ in range(nrows)]
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(m.rows):
            rows[i].extend(r)
    return Mat._raw(field, nrows, sum(m.ncols for m in mats), rows)


def vstack(field: Field, ncols: int, mats: Sequence[Mat]) -> Mat:
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(m.rows)
    return Mat._raw(field, len(rows), ncols, rows)


def block_diag(field: Field, mats: Sequence[Mat]) -> Mat:
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    z = field.zero
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append([z] * off + list(r) + [z] * (nc - off - m.ncols))
        off += m.ncols
    return Mat._raw(field, nr, nc, rows)


# -- subspace helpers -------------------------------------------------------

def span(field: Field, dim: int, vectors: Sequence[Sequence]) -> Mat:
    """Basis (as columns) of the span of ``vectors`` in F^dim."""
    if not vectors:
        return Mat.zeros(field, dim, 0)
    rows, _ = _rref_rows(field, [list(v) for v in vectors], dim)
    if not rows:
        return Mat.zeros(field, dim, 0)
    return Mat._raw(field, dim, len(rows), list(zip(*rows)))


def canonical_basis(sub: Mat) -> Mat:
    """Canonical representative (RREF of the transposed basis) of a subspace."""
    return span(sub.field, sub.nrows, sub.columns())


def subspace_sum(a: Mat, b: Mat) -> Mat:
    return span(a.field, a.nrows, a.columns() + b.columns())


def contains(big: Mat, small: Mat) -> bool:
    """True when the column space of ``small`` lies inside that of ``big``."""
    if small.ncols == 0:
        return True
    if big.ncols == 0:
        return small.is_zero()
    return hstack(big.field, big.nrows, [big, small]).rank() == big.rank()


def coordinates(basis: Mat, vectors: Mat) -> Mat:
    """Coordinates of ``vectors`` columns in ``basis``; raises if outside."""
    x = basis.solve(vectors)
    if x is None:
        raise ValueError("vectors not in the span of the basis")
    return x


def intersection(a: Mat, b: Mat) -> Mat:
    """Basis of the intersection of two column spaces."""
    field, d = a.field, a.nrows
    if a.ncols == 0 or b.ncols == 0:
        return Mat.zeros(field, d, 0)
    ns = hstack(field, d, [a, -b]).nullspace()
    if ns.ncols == 0:
        return Mat.zeros(field, d, 0)
    top = ns.submatrix(range(a.ncols), range(ns.ncols))
    return (a @ top).column_space()


def complement(sub: Mat) -> Mat:
    """Standard basis vectors extending ``sub`` to the whole space (deterministic)."""
    field, d = sub.field, sub.nrows
    chosen = []
    current = sub.column_space() if sub.ncols else sub
    r = current.ncols
    for i in range(d):
        e = [field.zero] * d
        e[i] = field.one
        trial = hstack(field, d, [current, Mat.from_columns(field, [e], d)])
        if trial.rank() > r:
            current, r = trial, r + 1
            chosen.append(e)
    return Mat.from_columns(field, chosen, d)
