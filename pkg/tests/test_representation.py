"""Representations, homomorphism spaces and the module file format."""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import oracle_hom_dim
from strategies import representations
from taufan.algebra import bundled_algebra, parse_algebra
from taufan.linalg import Mat
from taufan.representation import (
    ModuleSyntaxError,
    Representation,
    RepresentationError,
    cokernel,
    direct_sum,
    hom_basis,
    hom_dim,
    image,
    kernel,
    loewy_name,
    parse_modules,
)

KRONECKER_F3 = parse_algebra("field f3\nvertices 2\narrow a 1 2\narrow b 1 2\n")
KRONECKER_Q = parse_algebra("field q\nvertices 2\narrow a 1 2\narrow b 1 2\n")
ALGEBRAS = [bundled_algebra("a2"), bundled_algebra("kronecker"), KRONECKER_F3, KRONECKER_Q]
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(st.data())
def test_hom_dim_matches_oracle(data):
    alg = data.draw(st.sampled_from(ALGEBRAS))
    M = data.draw(representations(alg))
    N = data.draw(representations(alg))
    assert hom_dim(M, N) == oracle_hom_dim(M, N)


@SETTINGS
@given(st.data())
def test_hom_basis_elements_are_morphisms(data):
    alg = data.draw(st.sampled_from(ALGEBRAS))
    M = data.draw(representations(alg))
    N = data.draw(representations(alg))
    for f in hom_basis(M, N).basis:
        assert f.residual_zero()


@SETTINGS
@given(st.data())
def test_kernel_image_cokernel_dimensions(data):
    alg = data.draw(st.sampled_from(ALGEBRAS))
    M = data.draw(representations(alg))
    N = data.draw(representations(alg))
    for f in hom_basis(M, N).basis[:2]:
        K, _ = kernel(f)
        I, _ = image(f)
        Q, _ = cokernel(f)
        for v in range(alg.n):
            assert K.dims[v] + I.dims[v] == M.dims[v]
            assert I.dims[v] + Q.dims[v] == N.dims[v]


@SETTINGS
@given(st.data())
def test_hom_is_additive(data):
    alg = data.draw(st.sampled_from(ALGEBRAS[:2]))
    M = data.draw(representations(alg))
    N = data.draw(representations(alg))
    L = data.draw(representations(alg))
    S, _, _ = direct_sum([M, N])
    assert hom_dim(S, L) == hom_dim(M, L) + hom_dim(N, L)
    assert hom_dim(L, S) == hom_dim(L, M) + hom_dim(L, N)


def test_relations_are_enforced(cycle3):
    F = cycle3.field
    one = Mat(F, 1, 1, [[1]])
    with pytest.raises(RepresentationError):
        Representation(cycle3, [1, 1, 1], [one, one, one])


def test_module_file_round_trip(a2):
    mods = parse_modules(a2, "module P1\ndim 1 1\nmap a [[1]]\n\nmodule S2\ndim 0 1\n")
    assert [m.name for m in mods] == ["P1", "S2"]
    assert [loewy_name(m) for m in mods] == ["1/2", "2"]


@pytest.mark.parametrize("text", [
    "dim 1\n",
    "dim 1 1\nmap z [[1]]\n",
    "dim 1 1\nmap a [[1,1]]\n",
    "dim 1 1\nwhat\n",
    "map a [[1]]\n",
])
def test_module_syntax_errors(a2, text):
    with pytest.raises(ModuleSyntaxError):
        parse_modules(a2, text)
