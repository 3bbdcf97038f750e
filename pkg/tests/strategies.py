"""Hypothesis strategies producing random quiver representations."""

from hypothesis import strategies as st

from taufan.linalg import Mat
from taufan.representation import Representation


@st.composite
def representations(draw, alg, max_dim=2, entries=(-2, 2)):
    """Random representation of a relation-free quiver with small dimensions."""
    dims = [draw(st.integers(0, max_dim)) for _ in range(alg.n)]
    maps = []
    for a in alg.quiver.arrows:
        rows, cols = dims[a.target - 1], dims[a.source - 1]
        values = [[alg.field.coerce(draw(st.integers(*entries))) for _ in range(cols)] for _ in range(rows)]
        maps.append(Mat(alg.field, rows, cols, values))
    return Representation(alg, dims, maps)


@st.composite
def nonzero_representations(draw, alg, max_dim=2, entries=(-2, 2)):
    M = draw(representations(alg, max_dim, entries))
    if M.is_zero():
        dims = [1] + [0] * (alg.n - 1)
        return Representation(alg, dims, [Mat.zeros(alg.field, dims[a.target - 1], dims[a.source - 1])
                                          for a in alg.quiver.arrows])
    return M
