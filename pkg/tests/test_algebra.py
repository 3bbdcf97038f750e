"""Parsing bound quiver algebras and computing their path bases."""

import pytest

from taufan.algebra import AlgebraError, AlgebraSyntaxError, bundled_algebra, load_algebra, parse_algebra

SQUARE = """
field q
vertices 4
arrow a 1 2
arrow b 2 4
arrow c 1 3
arrow d 3 4
relation a*b - c*d   # commutativity
"""


@pytest.mark.parametrize("name, dimension", [("a2", 3), ("cycle3", 6), ("kronecker", 4)])
def test_bundled_dimensions(name, dimension):
    # [TRIVIAL] vertices plus arrows; the 3-cycle kills every path of length two
    assert bundled_algebra(name).dimension == dimension


def test_commutative_square_identifies_the_two_long_paths():
    alg = parse_algebra(SQUARE)
    # [DERIVED] 4 idempotents + 4 arrows + one surviving length-two path
    assert alg.dimension == 9
    assert alg.field.name == "q"


def test_truncated_loop_uses_relation_power():
    alg = parse_algebra("vertices 1\narrow x 1 1\nrelation x*x*x\n")
    assert [str(p) for p in alg.path_basis] == ["e1", "x", "x*x"]


def test_opposite_reverses_arrows(cycle3):
    opp = cycle3.opposite()
    assert {(a.label, a.source, a.target) for a in opp.quiver.arrows} == {
        ("a", 2, 1), ("b", 3, 2), ("c", 1, 3)}
    assert opp.dimension == cycle3.dimension


@pytest.mark.parametrize("text, line", [
    ("vertices 2\nfoo\n", 2),
    ("vertices 2\narrow a 1\n", 2),
    ("field r\nvertices 1\n", 1),
    ("vertices 2\narrow a 1 2\narrow b 1 2\nrelation a - 2 b\n", 4),
    ("vertices 2\narrow a 1 2\nrelation a*z\n", 3),
])
def test_syntax_errors_carry_line_numbers(text, line):
    with pytest.raises(AlgebraSyntaxError) as info:
        parse_algebra(text)
    assert info.value.line == line


def test_missing_vertices_line():
    with pytest.raises(AlgebraSyntaxError):
        parse_algebra("field f2\n")


@pytest.mark.parametrize("text", [
    "vertices 1\narrow x 1 1\n",                      # unbounded loop
    "vertices 2\narrow a 1 3\n",                      # endpoint out of range
    "vertices 2\narrow a 1 2\nrelation a*a\n",        # non-composable path
])
def test_mathematical_errors(text):
    with pytest.raises(AlgebraError):
        parse_algebra(text)


def test_load_from_file(tmp_path):
    path = tmp_path / "sq.alg"
    path.write_text(SQUARE)
    assert load_algebra(str(path)).dimension == 9
