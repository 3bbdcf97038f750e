"""King semistability, stability spaces, walls, chambers and the property suites."""

import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import nonzero_representations
from taufan.algebra import bundled_algebra, parse_algebra
from taufan.decompose import decompose, is_brick
from taufan.linalg import Mat
from taufan.polyhedra import Cone
from taufan.representation import Representation, direct_sum, sum_of
from taufan.stability import (
    KRONECKER_FAMILIES,
    bkt_membership,
    chambers,
    interior_sample,
    is_semistable,
    is_stable,
    kronecker_module,
    kronecker_ray,
    kronecker_space,
    kronecker_walls_match,
    label_edges,
    locate,
    pairing,
    perpendicular_category,
    semistable_indecs,
    stability_space,
    stable_count_check,
    stable_filtration,
    sub_pairs,
    sum_rule_check,
    walls,
)
from taufan.submodules import BudgetExceeded, submodule_profile, submodules

A2_Q = parse_algebra("field q\nvertices 2\narrow a 1 2\n")
KRONECKER_Q = parse_algebra("field q\nvertices 2\narrow a 1 2\narrow b 1 2\n")
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
vectors2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


def brute_force_semistable(M, v) -> bool:
    """Direct definition over F_2: test every tuple of vertex subspaces closed under the arrows."""
    F = M.field
    vertex_subspaces = []
    for d in M.dims:
        vectors = list(itertools.product(range(F.p), repeat=d))
        spaces = set()
        for r in range(d + 1):
            for basis in itertools.combinations(vectors, r):
                span = {tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) % F.p for i in range(d))
                        for coeffs in itertools.product(range(F.p), repeat=r)}
                spaces.add(frozenset(span))
        vertex_subspaces.append(list(spaces))
    total = pairing(v, M.dims)
    if total != 0:
        return False
    for choice in itertools.product(*vertex_subspaces):
        closed = all(
            tuple(sum(m[r, c] * x[c] for c in range(m.ncols)) % F.p for r in range(m.nrows)) in choice[a.target - 1]
            for a, m in zip(M.algebra.quiver.arrows, M.maps) for x in choice[a.source - 1])
        if closed:
            dims = [len(s).bit_length() - 1 for s in choice]  # |U| = 2^dim over F_2
            if pairing(v, dims) > 0:
                return False
    return True


def a2_rational_subdims(M):
    """Exact submodule dimension vectors of an A2 representation over Q from the rank of its map."""
    d1, d2 = M.dims
    rank = M.maps[0].rank()
    return {(u1, u2) for u1 in range(d1 + 1) for u2 in range(d2 + 1) if u2 >= max(0, u1 - (d1 - rank))}


# -- semistability oracles -----------------------------------------------------------

@SETTINGS
@given(st.data(), vectors2)
def test_semistable_matches_brute_force_f2(data, v):
    alg = bundled_algebra(data.draw(st.sampled_from(["a2", "kronecker"])))
    M = data.draw(nonzero_representations(alg, max_dim=2))
    assert is_semistable(M, v) == brute_force_semistable(M, v)


@SETTINGS
@given(st.data())
def test_rational_a2_submodules_exact(data):
    M = data.draw(nonzero_representations(A2_Q, max_dim=3, entries=(-6, 6)))
    try:
        profile = submodule_profile(M)
    except BudgetExceeded:
        # every small prime lowers the rank; refusing is the correct outcome
        assert all(M.maps[0].rank() != _rank_mod(M.maps[0], p) for p in (2, 3, 5))
        return
    assert set(profile.sub_dim_vectors) == a2_rational_subdims(M)


def _rank_mod(m, p):
    from taufan.field import GF
    F = GF(p)
    return Mat(F, m.nrows, m.ncols, [[F.coerce(x) for x in r] for r in m.rows]).rank()


def test_rational_reduction_refused_when_every_prime_is_bad():
    F = A2_Q.field
    M = Representation(A2_Q, [1, 1], [Mat(F, 1, 1, [[30]])])
    with pytest.raises(BudgetExceeded):
        submodule_profile(M)


def test_rational_profile_avoids_spurious_reduction():
    F = KRONECKER_Q.field
    # [DERIVED] b has no rational eigenvector, so no (1,1) submodule exists over Q
    M = Representation(KRONECKER_Q, [2, 2], [Mat.identity(F, 2), Mat(F, 2, 2, [[0, -1], [1, 0]])])
    assert (1, 1) not in submodule_profile(M).sub_dim_vectors
    assert is_stable(M, (1, -1))


def test_submodule_budget():
    M = kronecker_module(bundled_algebra("kronecker"), "pre", 3)
    with pytest.raises(BudgetExceeded):
        submodules(M)


# -- property suites on random modules over F_2 and Q ------------------------------

@SETTINGS
@given(st.data(), vectors2)
def test_stable_implies_brick(data, v):
    alg = data.draw(st.sampled_from([bundled_algebra("a2"), bundled_algebra("kronecker"), A2_Q, KRONECKER_Q]))
    M = data.draw(nonzero_representations(alg, max_dim=2))
    if is_stable(M, v):
        assert is_brick(M)


@SETTINGS
@given(st.data(), vectors2)
def test_semistable_iff_closed_torsion_and_free(data, v):
    alg = data.draw(st.sampled_from([bundled_algebra("a2"), bundled_algebra("kronecker"), A2_Q, KRONECKER_Q]))
    M = data.draw(nonzero_representations(alg, max_dim=2))
    assert bkt_membership(M, v).semistable == is_semistable(M, v)


@SETTINGS
@given(st.data(), vectors2)
def test_direct_sum_stability_space(data, v):
    alg = data.draw(st.sampled_from([bundled_algebra("a2"), bundled_algebra("kronecker"), A2_Q]))
    M = data.draw(nonzero_representations(alg, max_dim=1))
    N = data.draw(nonzero_representations(alg, max_dim=2))
    assert sum_rule_check(M, N)
    S = sum_of([M, N])
    assert is_semistable(S, v) == (is_semistable(M, v) and is_semistable(N, v))


@SETTINGS
@given(st.data(), vectors2)
def test_semistable_iff_summands_semistable(data, v):
    alg = data.draw(st.sampled_from([bundled_algebra("kronecker"), KRONECKER_Q]))
    M = data.draw(nonzero_representations(alg, max_dim=2))
    parts = decompose(M).summands
    assert is_semistable(M, v) == all(is_semistable(P, v) for P in parts)


@SETTINGS
@given(st.data(), vectors2)
def test_rudakov_factors_independent_of_choice(data, v):
    alg = bundled_algebra(data.draw(st.sampled_from(["a2", "kronecker"])))
    M = data.draw(nonzero_representations(alg, max_dim=2))
    if not is_semistable(M, v):
        return
    reference = Counter(stable_filtration(M, v, 0).factor_dims())
    for choice in range(1, 4):
        filt = stable_filtration(M, v, choice)
        assert Counter(filt.factor_dims()) == reference
        assert all(is_stable(f, v) for f in filt.factors)
    assert sum(Counter(d for d in reference.elements()).values()) >= 1


def test_rudakov_on_semisimple(a2_catalog):
    S, _, _ = direct_sum([a2_catalog["1"], a2_catalog["1"]])
    assert stable_filtration(S, (0, 0), 0).factor_dims() == [(1, 0), (1, 0)]


# -- walls and chambers -----------------------------------------------------------

def test_a2_walls(a2_catalog):
    # [PAPER] the two coordinate lines and the ray {(x, -x) : x >= 0}
    found = {w.brick_id: w.space.cone for w in walls(a2_catalog)}
    assert set(found) == {"1", "2", "1/2"}
    assert found["1"].equals(Cone(2, eqs=[(1, 0)]))
    assert found["2"].equals(Cone(2, eqs=[(0, 1)]))
    assert found["1/2"].equals(Cone.from_generators(2, [(1, -1)]))


def test_cycle3_walls(cycle3_catalog):
    ws = walls(cycle3_catalog)
    assert len(ws) == 6 and all(w.space.codim == 1 for w in ws)


def test_stability_space_membership_matches_direct_test(cycle3_catalog):
    grid = list(itertools.product(range(-2, 3), repeat=3))
    for M in cycle3_catalog.modules():
        space = stability_space(M)
        for v in grid:
            assert space.contains(v) == is_semistable(M, v)


@pytest.mark.parametrize("name, count", [("a2", 5), ("cycle3", 14)])
def test_chamber_count_and_emptiness(request, name, count):
    graph = request.getfixturevalue(f"{name}_graph")
    catalog = request.getfixturevalue(f"{name}_catalog")
    chs = chambers(graph)
    assert len(chs) == count
    for ch in chs:
        assert semistable_indecs(ch.cone.interior_sample(), catalog) == []


def test_locate(a2_graph, a2_catalog):
    chs, ws = chambers(a2_graph), walls(a2_catalog)
    hit = locate((1, 1), chs, ws)
    assert hit.chamber.pair.key == ((0, 1), (1, 0))
    on_wall = locate((1, -1), chs, ws)
    assert on_wall.chamber is None and on_wall.walls == ("1/2",)


@pytest.mark.parametrize("name", ["a2", "cycle3"])
def test_semistable_equivalence_and_stable_count(request, name):
    graph = request.getfixturevalue(f"{name}_graph")
    catalog = request.getfixturevalue(f"{name}_catalog")
    for pair in sub_pairs(graph):
        v = interior_sample(pair)
        assert semistable_indecs(v, catalog) == perpendicular_category(pair, catalog)
        assert stable_count_check(pair, catalog)


def test_edge_labels_agree(a2_graph, cycle3_graph, a2_catalog, cycle3_catalog):
    assert label_edges(a2_graph, a2_catalog) == []
    assert label_edges(cycle3_graph, cycle3_catalog) == []
    assert all(e.label_id is not None for e in cycle3_graph.edges)


# -- Kronecker closed forms ------------------------------------------------------------

def test_kronecker_rays_match_closed_forms(kronecker):
    assert kronecker_walls_match(kronecker, 5) == []
    # [PAPER] spot values of the four closed-form directions at m = 2
    assert [kronecker_ray(f, 2) for f in KRONECKER_FAMILIES] == [(5, -4), (6, -5), (4, -5), (5, -6)]


@pytest.mark.parametrize("k", [0, 1, 2])
def test_explicit_kronecker_modules_have_formula_walls(kronecker, k):
    pre, inj = kronecker_module(kronecker, "pre", k), kronecker_module(kronecker, "inj", k)
    pre_family = ("tau^-m(2)", "tau^-m(1/22)")[k % 2]
    inj_family = ("tau^m(1)", "tau^m(11/2)")[k % 2]
    assert stability_space(pre).cone.equals(kronecker_space(kronecker, pre_family, k // 2).cone)
    assert stability_space(inj).cone.equals(kronecker_space(kronecker, inj_family, k // 2).cone)


def test_kronecker_limit_direction():
    # [DERIVED] normalized rays converge to (1, -1)
    far = kronecker_ray("tau^-m(2)", 1000)
    assert abs(Fraction(far[0], -far[1]) - 1) < Fraction(1, 1000)
