"""Published reference values for the 3-cycle modulo rad².

Each chamber maps ``(T summands, P summands)`` (module names) to its
G-matrix, the transposed C-matrix as tabulated and the torsion class Fac T.
The published table lists the inverse of G, which equals the transpose of
C = (G^T)^-1; the comparison is therefore made against ``transpose(C)``.
"""

I3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
MINUS_I3 = ((-1, 0, 0), (0, -1, 0), (0, 0, -1))


def _entry(T, P, g, c, fac):
    return (frozenset(T), frozenset(P)), (g, c, frozenset(fac))


CYCLE3_TABLE = dict([
    _entry({"1/2", "2/3", "3/1"}, set(), I3, I3, {"1", "2", "3", "1/2", "2/3", "3/1"}),
    _entry({"3", "2/3", "3/1"}, set(),
           ((-1, 0, 0), (0, 1, 0), (1, 0, 1)), ((-1, 0, 0), (0, 1, 0), (1, 0, 1)), {"2/3", "3/1", "2", "3"}),
    _entry({"1/2", "1", "3/1"}, set(),
           ((1, 1, 0), (0, -1, 0), (0, 0, 1)), ((1, 1, 0), (0, -1, 0), (0, 0, 1)), {"1/2", "3/1", "1", "3"}),
    _entry({"1/2", "2/3", "2"}, set(),
           ((1, 0, 0), (0, 1, 1), (0, 0, -1)), ((1, 0, 0), (0, 1, 1), (0, 0, -1)), {"1/2", "2/3", "1", "2"}),
    _entry({"3", "2/3"}, {"1/2"},
           ((-1, 0, -1), (0, 1, 0), (1, 0, 0)), ((0, 0, 1), (0, 1, 0), (-1, 0, -1)), {"2/3", "2", "3"}),
    _entry({"3", "3/1"}, {"2/3"},
           ((-1, 0, 0), (0, 0, -1), (1, 1, 0)), ((-1, 0, 0), (1, 0, 1), (0, -1, 0)), {"3/1", "3"}),
    _entry({"1", "3/1"}, {"2/3"},
           ((1, 0, 0), (-1, 0, -1), (0, 1, 0)), ((1, 0, 0), (0, 0, 1), (-1, -1, 0)), {"3/1", "1", "3"}),
    _entry({"1/2", "1"}, {"3/1"},
           ((1, 1, 0), (0, -1, 0), (0, 0, -1)), ((1, 1, 0), (0, -1, 0), (0, 0, -1)), {"1/2", "1"}),
    _entry({"1/2", "2"}, {"3/1"},
           ((1, 0, 0), (0, 1, 0), (0, -1, -1)), ((1, 0, 0), (0, 1, 0), (0, -1, -1)), {"1/2", "1", "2"}),
    _entry({"2/3", "2"}, {"1/2"},
           ((0, 0, -1), (1, 1, 0), (0, -1, 0)), ((0, 1, 1), (0, 0, -1), (-1, 0, 0)), {"2/3", "2"}),
    _entry({"3"}, {"1/2", "2/3"},
           ((-1, -1, 0), (0, 0, -1), (1, 0, 0)), ((0, 0, 1), (-1, 0, -1), (0, -1, 0)), {"3"}),
    _entry({"1"}, {"2/3", "3/1"},
           ((1, 0, 0), (-1, -1, 0), (0, 0, -1)), ((1, 0, 0), (-1, -1, 0), (0, 0, -1)), {"1"}),
    _entry({"2"}, {"1/2", "3/1"},
           ((0, -1, 0), (1, 0, 0), (-1, 0, -1)), ((0, 1, 0), (-1, 0, 0), (0, -1, -1)), {"2"}),
    _entry(set(), {"1/2", "2/3", "3/1"}, MINUS_I3, MINUS_I3, set()),
])

# Pairs of A2, as (T summands, P summands).
A2_PAIRS = {
    (frozenset({"1/2", "2"}), frozenset()),
    (frozenset({"1/2", "1"}), frozenset()),
    (frozenset({"2"}), frozenset({"1/2"})),
    (frozenset({"1"}), frozenset({"2"})),
    (frozenset(), frozenset({"1/2", "2"})),
}

# Brick labels of the A2 mutation edges: (upper pair, lower pair) -> brick.
A2_EDGE_LABELS = {
    ("(T: 1/2,2 | P: 0)", "(T: 1/2,1 | P: 0)"): "2",
    ("(T: 1/2,2 | P: 0)", "(T: 2 | P: 1/2)"): "1",
    ("(T: 1/2,1 | P: 0)", "(T: 1 | P: 2)"): "1/2",
    ("(T: 1 | P: 2)", "(T: 0 | P: 1/2,2)"): "1",
    ("(T: 2 | P: 1/2)", "(T: 0 | P: 1/2,2)"): "2",
}


def pair_names(pair, catalog):
    T, P = pair.names(catalog)
    return frozenset(T), frozenset(P)
