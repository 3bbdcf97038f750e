"""Exact rational polyhedral cones."""

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Matrix

from taufan.polyhedra import Cone, primitive

small = st.integers(-3, 3)


@st.composite
def independent_generators(draw, ambient=3):
    k = draw(st.integers(1, ambient))
    gens = [tuple(draw(small) for _ in range(ambient)) for _ in range(k)]
    assume(Matrix(gens).rank() == k)
    return gens


def oracle_in_cone(gens, v) -> bool:
    """Solve for coefficients with sympy and test nonnegativity."""
    G = Matrix(gens).T
    if G.rank() != G.row_join(Matrix(v)).rank():
        return False
    sol, _ = G.gauss_jordan_solve(Matrix(v))
    return all(x >= 0 for x in sol)


def test_primitive():
    assert primitive((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert primitive((0, 0)) == (0, 0)


def test_coordinate_ray_and_line():
    ray = Cone(2, eqs=[(1, 1)], ineqs=[(1, 0)])
    assert ray.rays == [(1, -1)] and ray.dim == 1 and not ray.lineality
    line = Cone(2, eqs=[(1, 0)])
    assert line.dim == 1 and not line.rays and len(line.lineality) == 1
    assert Cone.whole(2).dim == 2 and Cone.from_generators(2, []).is_zero()


@settings(max_examples=80, deadline=None)
@given(independent_generators(), st.lists(small, min_size=3, max_size=3))
def test_membership_matches_oracle(gens, v):
    cone = Cone.from_generators(3, gens)
    assert cone.contains(v) == oracle_in_cone(gens, v)


@settings(max_examples=60, deadline=None)
@given(independent_generators())
def test_rays_and_interior(gens):
    cone = Cone.from_generators(3, gens)
    assert sorted(cone.rays) == sorted(tuple(Fraction(x) for x in primitive(g)) for g in gens)
    assert cone.dim == len(gens)
    assert cone.contains(cone.interior_sample(), interior=True)
    if len(gens) > 1:  # a lone ray is its own relative interior
        assert not any(cone.contains(g, interior=True) for g in gens)


@settings(max_examples=60, deadline=None)
@given(independent_generators(), independent_generators(), st.lists(small, min_size=3, max_size=3))
def test_intersection_is_conjunction(a, b, v):
    A, B = Cone.from_generators(3, a), Cone.from_generators(3, b)
    assert A.intersect(B).contains(v) == (A.contains(v) and B.contains(v))
    assert A.contains_cone(A.intersect(B))


def test_equality_ignores_representation():
    one = Cone(2, ineqs=[(1, 0), (0, 1)])
    two = Cone.from_generators(2, [(2, 0), (0, 5)])
    assert one.equals(two)
    assert not one.equals(Cone(2, ineqs=[(1, 0)]))
