"""g-vector fan, G- and C-matrices, facet bricks and semibricks."""

import itertools

import pytest
from sympy import Matrix

from reference_data import CYCLE3_TABLE, pair_names
from taufan.gfan import (
    ar_pairing_check,
    brick_matrix_check,
    c_matrix,
    cone_of_pair,
    facet_bricks,
    fan_check,
    format_matrix,
    g_matrix,
    semibrick_split,
    sign_coherent,
    transpose,
    unimodular,
)
from taufan.tautheory import TauPair
from taufan.decompose import is_brick
from taufan.representation import hom_dim


def test_matrices_match_published_table(cycle3_graph, cycle3_catalog):
    # [PAPER] all fourteen G-matrices and tabulated C-matrices, entry for entry
    for pair in cycle3_graph.pairs():
        G, C_published, _ = CYCLE3_TABLE[pair_names(pair, cycle3_catalog)]
        assert g_matrix(pair) == G
        assert transpose(c_matrix(pair)) == C_published


def test_c_is_inverse_transpose_of_g(cycle3_graph):
    # [DERIVED] C^T G = I checked with sympy
    for pair in cycle3_graph.pairs():
        G, C = Matrix(g_matrix(pair)), Matrix(c_matrix(pair))
        assert C.T * G == Matrix.eye(3)
        assert abs(G.det()) == 1 and unimodular(pair)


def test_g_matrix_rejects_incomplete_pairs(a2, a2_catalog):
    with pytest.raises(ValueError):
        g_matrix(TauPair(a2, (a2_catalog["1"],)))


def test_format_matrix():
    assert format_matrix(((1, 0), (0, -1))) == "[[1,0],[0,-1]]"


@pytest.mark.parametrize("name", ["a2", "cycle3"])
def test_fan_intersections(request, name):
    graph = request.getfixturevalue(f"{name}_graph")
    report = fan_check(graph)
    n = len(graph.nodes)
    assert report.ok and report.checked == n * (n - 1) // 2


@pytest.mark.parametrize("name", ["a2", "cycle3"])
def test_chamber_interiors_are_disjoint(request, name):
    # [DERIVED] independent of fan_check: each interior point lies in exactly one closed cone's interior
    pairs = request.getfixturevalue(f"{name}_graph").pairs()
    cones = [cone_of_pair(p) for p in pairs]
    for i, cone in enumerate(cones):
        point = cone.interior_sample()
        hits = [j for j, other in enumerate(cones) if other.contains(point, interior=True)]
        assert hits == [i]


def test_brick_matrix_and_semibricks(cycle3_graph, cycle3_catalog):
    for pair in cycle3_graph.pairs():
        bricks = facet_bricks(pair, cycle3_catalog)
        assert all(is_brick(b) for b in bricks)
        report = brick_matrix_check(pair, bricks)
        assert report.ok
        assert sign_coherent(c_matrix(pair))
        # [DERIVED] the signed brick dimension vectors are the columns of C
        C = c_matrix(pair)
        for col, (b, s) in enumerate(zip(bricks, report.signs)):
            assert tuple(C[r][col] for r in range(3)) == tuple(s * d for d in b.dims)
        split = semibrick_split(pair, bricks, report.signs, cycle3_catalog)
        assert split.filt_matches_fac
        for half in (split.positive, split.negative):
            for x, y in itertools.permutations(half, 2):
                assert hom_dim(x, y) == 0


def test_sign_coherence_detects_mixed_columns():
    assert sign_coherent(((1, 0), (1, -1)))
    assert not sign_coherent(((1, 0), (-1, 1)))


@pytest.mark.parametrize("name", ["a2", "cycle3", "kronecker"])
def test_ar_pairing(request, name):
    assert ar_pairing_check(request.getfixturevalue(f"{name}_catalog")) == []
