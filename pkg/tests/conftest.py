import numpy as np
import pytest

from cutspectra.graph import psd_counterexample_graph

# Edge-connectivity matrix of the example graph.
C_EXAMPLE = np.array(
    [
        [0, 4, 4, 4, 3, 3],
        [4, 0, 4, 4, 3, 3],
        [4, 4, 0, 4, 3, 3],
        [4, 4, 4, 0, 3, 3],
        [3, 3, 3, 3, 0, 3],
        [3, 3, 3, 3, 3, 0],
    ],
    dtype=float,
)

# P(G) + D(G) for the same graph; not PSD.
P_PLUS_D_EXAMPLE = np.array(
    [
        [4, 4, 4, 4, 3, 3],
        [4, 4, 4, 4, 3, 3],
        [4, 4, 4, 3, 3, 3],
        [4, 4, 3, 4, 3, 3],
        [3, 3, 3, 3, 3, 3],
        [3, 3, 3, 3, 3, 3],
    ],
    dtype=float,
)

EXAMPLE_EDGE_LIST = """6
# six vertices, eleven unit edges
0 2 1
0 3 1
0 4 1
0 5 1
1 2 1
1 3 1
1 4 1
1 5 1
4 2 1
2 3 1
3 5 1
"""


@pytest.fixture
def ex_graph():
    return psd_counterexample_graph()


@pytest.fixture
def c_example():
    return C_EXAMPLE.copy()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_realizable(n, rng, integral=None):
    """Edge-connectivity matrix of a random weighted spanning tree (weights may be 0)."""
    from cutspectra.connmat import FlowTree, matrix_from_flow_tree

    if integral is None:
        integral = bool(rng.random() < 0.5)
    edges = []
    for v in range(1, n):
        u = int(rng.integers(0, v))
        w = float(rng.integers(0, 5)) if integral else float(rng.uniform(0.0, 10.0))
        edges.append((u, v, w))
    return matrix_from_flow_tree(FlowTree(n, tuple(edges))).array
