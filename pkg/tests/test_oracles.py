"""Self-checks for the reference oracles against textbook values."""

from fractions import Fraction
from math import comb, factorial

from hypothesis import given, strategies as st

import oracles


def test_catalan_small():
    assert [oracles.catalan(n) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]


def test_stirling2_rows():
    assert [oracles.stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert sum(oracles.stirling2(5, k) for k in range(6)) == 52  # Bell number


@given(st.integers(min_value=1, max_value=7))
def test_eulerian_row_sums(n):
    assert sum(oracles.eulerian(n, k) for k in range(n)) == factorial(n)


def test_eulerian_a4():
    assert [oracles.eulerian(4, k) for k in range(4)] == [1, 11, 11, 1]


def test_permutohedron_faces_n4():
    # 3-dimensional permutohedron: 24 vertices, 36 edges, 14 facets
    assert [oracles.permutohedron_codim_faces(4, k) for k in (3, 2, 1, 0)] == [
        24,
        36,
        14,
        1,
    ]


def test_h_from_f_cube():
    assert oracles.h_from_f((8, 12, 6)) == (1, 3, 3, 1)


def test_h_from_f_permutohedron():
    assert oracles.h_from_f((24, 36, 14)) == (1, 11, 11, 1)


def test_multinomial():
    assert oracles.multinomial((2, 1, 1)) == 12
    assert oracles.multinomial((3,)) == 1


def test_brute_force_cliques_path():
    # path graph 0-1-2: maximal cliques are the two edges
    cliques = oracles.brute_force_maximal_cliques(3, lambda a, b: abs(a - b) == 1)
    assert cliques == [(0, 1), (1, 2)]


def test_brute_force_cliques_complete():
    cliques = oracles.brute_force_maximal_cliques(4, lambda a, b: True)
    assert cliques == [(0, 1, 2, 3)]


def test_solve_exact_unique():
    x = oracles.solve_exact([[1, 1], [1, -1]], [3, 1])
    assert x == [Fraction(2), Fraction(1)]


def test_solve_exact_inconsistent():
    assert oracles.solve_exact([[1, 0], [1, 0], [0, 1]], [1, 2, 0]) is None


@given(st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
def test_stirling_symmetry_boundaries(n, k):
    s = oracles.stirling2(n, k)
    assert s >= 0
    if k > n:
        assert s == 0
    if n >= 1:
        assert oracles.stirling2(n, 1) == 1
        assert oracles.stirling2(n, n) == 1


def test_decompose_on_cliques_toy():
    # two routes sharing an edge; only the clique {0} fits flow = 1_route0
    edge_ids = ["a", "b", "c"]
    route_edges = [{"a", "b"}, {"a", "c"}]
    cliques = [(0,), (1,)]
    hits = oracles.decompose_on_cliques(edge_ids, route_edges, cliques, {"a": 2, "b": 2})
    assert hits == [((0,), {0: Fraction(2)})]
