import numpy as np
import pytest

from cutspectra.connmat import (
    FlowTree,
    degree_diag,
    edge_connectivity_matrix,
    edge_connectivity_matrix_bruteforce,
    gomory_hu_tree,
    matrix_from_flow_tree,
    parse_flow_tree,
    render_flow_tree,
    vertex_connectivity_matrix,
)
from cutspectra.enumeration import random_weighted_graph
from cutspectra.exceptions import MalformedLine, NonUnitWeights, TooSmall
from cutspectra.graph import WeightedGraph, complete_graph, is_connected, path_graph
from cutspectra.terraced import check_gh_triangle, distinct_offdiag_values

from conftest import C_EXAMPLE, P_PLUS_D_EXAMPLE
from oracles import bipartition_cut_matrix


def test_example_pipelines(ex_graph):
    assert np.array_equal(edge_connectivity_matrix_bruteforce(ex_graph).array, C_EXAMPLE)
    assert np.array_equal(matrix_from_flow_tree(gomory_hu_tree(ex_graph)).array, C_EXAMPLE)


def test_k4_tree_is_uniform():
    tree = gomory_hu_tree(complete_graph(4, 1))
    c = matrix_from_flow_tree(tree)
    # brute-force min cuts on K4 are all 3
    assert np.array_equal(c.array, bipartition_cut_matrix(4, complete_graph(4, 1).edges))
    assert np.all(c.offdiag() == 3)


def test_tree_input_reproduces_itself():
    g = WeightedGraph(5, ((0, 1, 2.0), (1, 2, 7.0), (1, 3, 1.5), (3, 4, 4.0)))
    expected = matrix_from_flow_tree(FlowTree(5, g.edges))
    assert matrix_from_flow_tree(gomory_hu_tree(g)).allclose(expected.array)


def test_matrix_from_flow_tree_examples():
    star = FlowTree(4, ((0, 1, 2.0), (0, 2, 2.0), (0, 3, 2.0)))
    c = matrix_from_flow_tree(star)
    assert np.all(c.offdiag() == 2) and np.all(np.diag(c.array) == 0)
    path = matrix_from_flow_tree(FlowTree(3, ((0, 1, 5.0), (1, 2, 3.0))))
    assert path[0, 1] == 5 and path[0, 2] == 3 and path[1, 2] == 3


def test_bruteforce_examples():
    assert np.all(edge_connectivity_matrix_bruteforce(complete_graph(3, 1)).offdiag() == 2)
    assert np.array_equal(edge_connectivity_matrix_bruteforce(WeightedGraph(2)).array, np.zeros((2, 2)))


def test_too_small():
    with pytest.raises(TooSmall):
        gomory_hu_tree(WeightedGraph(1))


def test_vertex_connectivity_matrix_example(ex_graph):
    p = vertex_connectivity_matrix(ex_graph).array
    d = degree_diag(ex_graph).array
    assert np.array_equal(p + d, P_PLUS_D_EXAMPLE)
    assert np.all(np.diag(p) == 0)
    assert np.array_equal(np.diag(d), [4, 4, 4, 4, 3, 3])


def test_vertex_connectivity_small_examples():
    assert np.all(vertex_connectivity_matrix(complete_graph(4, 1)).offdiag() == 3)
    p = vertex_connectivity_matrix(path_graph(3))
    assert p[0, 1] == p[1, 2] == p[0, 2] == 1
    assert np.array_equal(degree_diag(complete_graph(4, 1)).array, 3 * np.eye(4))
    assert np.array_equal(degree_diag(WeightedGraph(2)).array, np.zeros((2, 2)))


def test_weighted_input_rejected_for_vertex_matrices():
    g = WeightedGraph(2, ((0, 1, 2.0),))
    with pytest.raises(NonUnitWeights):
        vertex_connectivity_matrix(g)
    with pytest.raises(NonUnitWeights):
        degree_diag(g)


def test_flow_tree_matches_bruteforce_randomized(rng):
    count = 0
    while count < 220:
        n = int(rng.integers(2, 8))
        g = random_weighted_graph(n, rng)
        if not is_connected(g):
            continue
        count += 1
        brute = edge_connectivity_matrix_bruteforce(g)
        assert matrix_from_flow_tree(gomory_hu_tree(g)).allclose(brute.array)
        assert np.allclose(brute.array, bipartition_cut_matrix(n, g.edges), atol=1e-9)
        assert not check_gh_triangle(brute)
        assert len(distinct_offdiag_values(brute)) <= n - 1


def test_disconnected_graphs_have_zero_blocks():
    g = WeightedGraph(5, ((0, 1, 2.0), (1, 2, 1.0), (3, 4, 6.0)))
    c = edge_connectivity_matrix(g)
    assert c[0, 3] == c[2, 4] == 0
    assert c[3, 4] == 6 and c[0, 1] == 2 and c[0, 2] == 1
    assert c.allclose(edge_connectivity_matrix_bruteforce(g).array)


def test_vertex_below_edge_below_degree(rng):
    for _ in range(60):
        n = int(rng.integers(2, 8))
        mask = int(rng.integers(0, 1 << (n * (n - 1) // 2)))
        g = WeightedGraph.from_mask(n, mask)
        p = vertex_connectivity_matrix(g).array
        c = edge_connectivity_matrix_bruteforce(g).array
        deg = np.array(g.degrees())
        off = ~np.eye(n, dtype=bool)
        assert np.all(p[off] <= c[off])
        assert np.all(c[off] <= np.minimum.outer(deg, deg)[off])


def test_flow_tree_text_round_trip(ex_graph):
    tree = gomory_hu_tree(ex_graph)
    assert parse_flow_tree(render_flow_tree(tree)) == tree
    with pytest.raises(MalformedLine):
        parse_flow_tree("3\n0 1 1\n1 0 2\n")  # cycle, not a tree
