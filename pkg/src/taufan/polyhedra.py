"""Exact rational polyhedral cones.

A cone is stored by its H-representation ``{v : a.v = 0 for a in eqs,
b.v >= 0 for b in ineqs}``. Extreme rays and the lineality space are
recovered by enumerating tight constraint sets, which is plenty at n <= 4.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .field import QQ
from .linalg import Mat

Vector = tuple  # of Fraction


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(x) for x in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest integer vector on the ray through ``v`` (zero stays zero)."""
    v = vec(v)
    den = math.lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) if any(ints) else 1
    return tuple(i // g for i in ints)


def _nullspace(rows: Sequence[Sequence], n: int) -> list[Vector]:
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    return [tuple(c) for c in Mat.from_rows(QQ, [list(r) for r in rows], n).nullspace().columns()]


def _rank(rows: Sequence[Sequence], n: int) -> int:
    if not rows:
        return 0
    return Mat.from_rows(QQ, [list(r) for r in rows], n).rank()


class Cone:
    """A polyhedral cone in Q^n given by equations and inequalities."""

    def __init__(self, ambient: int, eqs: Iterable[Sequence] = (), ineqs: Iterable[Sequence] = ()):
        self.ambient = ambient
        self.eqs = tuple(vec(a) for a in eqs)
        self.ineqs = tuple(vec(b) for b in ineqs)
        for a in self.eqs + self.ineqs:
            if len(a) != ambient:
                raise ValueError("constraint has the wrong length")
        self._vrep = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_generators(cls, ambient: int, gens: Sequence[Sequence]) -> "Cone":
        """Cone of nonnegative combinations of linearly independent generators."""
        gens = [vec(g) for g in gens]
        if not gens:
            return cls(ambient, eqs=[tuple(Fraction(int(i == j)) for j in range(ambient)) for i in range(ambient)])
        G = Mat.from_columns(QQ, gens, ambient)
        if G.rank() != len(gens):
            raise ValueError("generators are not linearly independent")
        eqs = _nullspace([g for g in gens], ambient)
        # left inverse restricted to span(G): solve (G^T G) L = G^T
        gram = G.T @ G
        left = gram.inverse() @ G.T
        return cls(ambient, eqs=eqs, ineqs=[tuple(r) for r in left.rows])

    @classmethod
    def whole(cls, ambient: int) -> "Cone":
        return cls(ambient)

    # -- V-representation -----------------------------------------------------
    def _compute_vrep(self):
        n = self.ambient
        lineality = _nullspace(list(self.eqs) + list(self.ineqs), n)
        # pointed part lives in the orthogonal complement of the lineality space
        base = list(self.eqs) + list(lineality)
        rank_base = _rank(base, n)
        target = n - 1
        rays: dict[tuple, Vector] = {}
        need = target - rank_base
        if need >= 0:
            for subset in itertools.combinations(self.ineqs, need):
                rows = base + list(subset)
                if _rank(rows, n) != target:
                    continue
                ns = _nullspace(rows, n)
                if len(ns) != 1:
                    continue
                d = ns[0]
                for cand in (d, tuple(-x for x in d)):
                    if all(dot(b, cand) >= 0 for b in self.ineqs):
                        key = primitive(cand)
                        if any(key):
                            rays[key] = vec(key)
        self._vrep = (sorted(rays.values()), [vec(primitive(l)) for l in lineality])

    @property
    def rays(self) -> list[Vector]:
        """Extreme rays of the pointed part (primitive integer directions)."""
        if self._vrep is None:
            self._compute_vrep()
        return self._vrep[0]

    @property
    def lineality(self) -> list[Vector]:
        if self._vrep is None:
            self._compute_vrep()
        return self._vrep[1]

    def generators(self) -> list[Vector]:
        """Rays plus both signs of a lineality basis: a conic generating set."""
        return list(self.rays) + [l for l in self.lineality] + [tuple(-x for x in l) for l in self.lineality]

    @property
    def dim(self) -> int:
        return _rank(self.generators(), self.ambient)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    # -- membership -----------------------------------------------------------
    def contains(self, v: Sequence, interior: bool = False) -> bool:
        """Membership; ``interior`` asks for the relative interior."""
        v = vec(v)
        if any(dot(a, v) != 0 for a in self.eqs):
            return False
        if not interior:
            return all(dot(b, v) >= 0 for b in self.ineqs)
        gens = self.generators()
        for b in self.ineqs:
            implicit = all(dot(b, g) == 0 for g in gens)
            val = dot(b, v)
            if implicit and val != 0:
                return False
            if not implicit and val <= 0:
                return False
        return True

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators())

    def equals(self, other: "Cone") -> bool:
        return self.ambient == other.ambient and self.contains_cone(other) and other.contains_cone(self)

    def intersect(self, other: "Cone") -> "Cone":
        return Cone(self.ambient, self.eqs + other.eqs, self.ineqs + other.ineqs)

    def interior_sample(self) -> Vector:
        """Average of the generators of the pointed part (interior for simplicial cones)."""
        gens = self.rays
        if not gens:
            return tuple(Fraction(0) for _ in range(self.ambient))
        k = len(gens)
        return tuple(sum((g[i] for g in gens), Fraction(0)) / k for i in range(self.ambient))

    def __repr__(self) -> str:
        return f"Cone(ambient={self.ambient}, rays={[primitive(r) for r in self.rays]}, lineality={len(self.lineality)})"
