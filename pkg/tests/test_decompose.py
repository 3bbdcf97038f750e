"""Decomposition into indecomposables, isomorphism tests and the catalog."""

from collections import Counter

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import nonzero_representations
from taufan.algebra import bundled_algebra, parse_algebra
from taufan.catalog import enumerate_indecomposables
from taufan.decompose import decompose, fingerprint, is_brick, is_indecomposable, is_isomorphic
from taufan.linalg import Mat
from taufan.representation import Representation, hom_dim, sum_of

SETTINGS = settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@pytest.mark.parametrize("name, count", [("a2", 3), ("cycle3", 6), ("kronecker", 11)])
def test_catalog_sizes(name, count):
    # [DERIVED] Kronecker over F_2 up to (2,2): two simples, P(1), I(2),
    # three (1,1) regulars (points of P^1(F_2)) and four (2,2) regulars
    # (three length-two tubes at rational points plus one quadratic point)
    assert len(enumerate_indecomposables(bundled_algebra(name))) == count


def test_catalog_ids_are_unique(kronecker_catalog):
    ids = kronecker_catalog.ids
    assert len(set(ids)) == len(ids)
    assert {"1/2#1", "1/2#2", "1/2#3"} <= set(ids)


def test_catalog_entries_pairwise_distinct(kronecker_catalog):
    mods = kronecker_catalog.modules()
    for i, M in enumerate(mods):
        assert is_indecomposable(M)
        for N in mods[i + 1:]:
            assert not is_isomorphic(M, N)


def test_bricks(cycle3_catalog, kronecker_catalog):
    assert all(is_brick(M) for M in cycle3_catalog.modules())
    # [DERIVED] the (2,2) regulars on tubes have nilpotent endomorphisms
    assert not is_brick(kronecker_catalog["11/22#1"])
    assert is_brick(kronecker_catalog["1/22"])


@SETTINGS
@given(st.data())
def test_decomposition_reassembles(data):
    alg = bundled_algebra(data.draw(st.sampled_from(["a2", "kronecker"])))
    M = data.draw(nonzero_representations(alg, max_dim=2))
    dec = decompose(M)
    assert dec.witness.is_isomorphism()
    assert all(is_indecomposable(S) for S in dec.summands)
    assert tuple(map(sum, zip(*(S.dims for S in dec.summands)))) == M.dims


@SETTINGS
@given(st.data())
def test_sum_of_catalog_modules_recovers_summands(data):
    cat = enumerate_indecomposables(bundled_algebra("cycle3"))
    picks = data.draw(st.lists(st.sampled_from(cat.ids), min_size=1, max_size=3))
    dec = decompose(sum_of([cat[c] for c in picks]))
    assert Counter(cat.find(S) for S in dec.summands) == Counter(picks)


def test_rational_regular_modules_split_by_eigenvalue():
    # [DERIVED] a = identity, b = diag(1, 2) is the sum of the (1,1) regulars at points 1 and 2
    alg = parse_algebra("field q\nvertices 2\narrow a 1 2\narrow b 1 2\n")
    F = alg.field
    M = Representation(alg, [2, 2], [Mat.identity(F, 2), Mat(F, 2, 2, [[1, 0], [0, 2]])])
    parts = decompose(M).summands
    assert [S.dims for S in parts] == [(1, 1), (1, 1)]
    assert not is_isomorphic(parts[0], parts[1])
    # a Jordan block for b is indecomposable and not a brick
    J = Representation(alg, [2, 2], [Mat.identity(F, 2), Mat(F, 2, 2, [[3, 1], [0, 3]])])
    assert is_indecomposable(J) and not is_brick(J)


def test_fingerprint_is_isomorphism_invariant(cycle3_catalog):
    M = cycle3_catalog["1/2"]
    assert fingerprint(M) == fingerprint(decompose(M).summands[0])
    assert hom_dim(M, M) == 1
