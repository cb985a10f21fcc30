import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutspectra.exceptions import MalformedLine, NegativeWeight, VertexOutOfRange
from cutspectra.graph import (
    WeightedGraph,
    complete_graph,
    is_connected,
    parse_edge_list,
    render_edge_list,
)

from conftest import EXAMPLE_EDGE_LIST
from oracles import transitive_closure_connected


def test_parse_example():
    g = parse_edge_list(EXAMPLE_EDGE_LIST)
    assert g.n == 6
    assert g.m == 11
    assert g.degrees() == [4, 4, 4, 4, 3, 3]


def test_parse_single_edge():
    g = parse_edge_list("2\n0 1 5")
    assert g.edges == ((0, 1, 5.0),)


def test_parallel_lines_merge():
    g = parse_edge_list("3\n0 1 2\n0 1 3\n1 2 1")
    assert g.weight(0, 1) == 5.0
    assert g.weight(1, 0) == 5.0
    assert g.m == 2


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("3\n0 1\n", MalformedLine, 2),
        ("3\n0 1 x\n", MalformedLine, 2),
        ("3\n# c\n0 1 1\n0 3 1\n", VertexOutOfRange, 4),
        ("3\n0 1 -2\n", NegativeWeight, 2),
        ("abc\n", MalformedLine, 1),
        ("", MalformedLine, 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, exc, line):
    with pytest.raises(exc) as info:
        parse_edge_list(text)
    assert info.value.line_no == line


def test_comments_and_blank_lines_ignored():
    g = parse_edge_list("# header\n\n3\n\n# edge\n0 2 1.5\n")
    assert g.edges == ((0, 2, 1.5),)


@pytest.mark.parametrize("n, w, m", [(2, 1, 1), (4, 1, 6), (3, 2.5, 3), (1, 1, 0), (7, 0.5, 21)])
def test_complete_graph(n, w, m):
    g = complete_graph(n, w)
    assert g.m == m == n * (n - 1) // 2
    assert all(weight == w for _, _, weight in g.edges)


def test_is_connected_examples(ex_graph):
    assert is_connected(ex_graph)
    assert not is_connected(WeightedGraph(2))
    assert not is_connected(WeightedGraph(3, ((0, 1, 1.0), (1, 2, 0.0))))


@pytest.mark.parametrize("n", range(1, 6))
def test_is_connected_matches_transitive_closure(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [(u, v, 1.0) for i, (u, v) in enumerate(pairs) if mask >> i & 1]
        g = WeightedGraph(n, tuple(edges))
        assert is_connected(g) == transitive_closure_connected(n, edges)


def test_is_connected_n6_sample(rng):
    pairs = list(itertools.combinations(range(6), 2))
    for mask in rng.integers(0, 1 << len(pairs), size=3000):
        edges = [(u, v, 1.0) for i, (u, v) in enumerate(pairs) if int(mask) >> i & 1]
        assert is_connected(WeightedGraph(6, tuple(edges))) == transitive_closure_connected(6, edges)


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        WeightedGraph(2, ((1, 1, 1.0),))


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 8))
    pairs = list(itertools.combinations(range(n), 2))
    weights = st.one_of(st.integers(0, 20).map(float), st.floats(0, 1e6, allow_nan=False))
    edges = draw(st.lists(st.tuples(st.sampled_from(pairs), weights), max_size=20)) if pairs else []
    return WeightedGraph(n, tuple((u, v, w) for (u, v), w in edges))


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_render_parse_round_trip(g):
    assert parse_edge_list(render_edge_list(g)) == g


def test_mask_round_trip(ex_graph):
    assert WeightedGraph.from_mask(6, ex_graph.edge_mask()) == ex_graph
