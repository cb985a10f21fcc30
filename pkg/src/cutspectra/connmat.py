"""All-pairs connectivity matrices and flow-equivalent trees."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import MalformedLine, TooSmall, VertexOutOfRange
from .graph import WeightedGraph, all_pairs
from .matrix import SymMatrix, _content_lines, default_tol, format_number
from .maxflow import local_vertex_connectivity, min_cut


@dataclass(frozen=True)
class FlowTree:
    """Weighted spanning tree whose path minima reproduce pairwise min-cut values."""

    n: int
    tree_edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if len(self.tree_edges) != max(self.n - 1, 0):
            raise ValueError(f"a tree on {self.n} vertices needs {self.n - 1} edges")
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, w in self.tree_edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"bad tree edge ({u}, {v})")
            if w < 0:
                raise ValueError(f"negative tree edge weight {w}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"tree edge ({u}, {v}) closes a cycle")
            parent[ru] = rv

    def as_graph(self) -> WeightedGraph:
        return WeightedGraph(self.n, self.tree_edges)


def gomory_hu_tree(g: WeightedGraph, tol: float | None = None) -> FlowTree:
    """Flow-equivalent tree by Gusfield's method (n - 1 max-flow calls, no contraction)."""
    if g.n < 2:
        raise TooSmall(f"need at least 2 vertices, got {g.n}")
    parent = [0] * g.n
    weight = [0.0] * g.n
    for s in range(1, g.n):
        t = parent[s]
        cut = min_cut(g, s, t, tol)
        weight[s] = cut.value
        for i in range(s + 1, g.n):
            if parent[i] == t and i in cut.source_side:
                parent[i] = s
    return FlowTree(g.n, tuple((s, parent[s], weight[s]) for s in range(1, g.n)))


def matrix_from_flow_tree(t: FlowTree, tol: float | None = None) -> SymMatrix:
    """Entry ``(v, w)`` is the lightest edge on the tree path from ``v`` to ``w``."""
    adj: list[list[tuple[int, float]]] = [[] for _ in range(t.n)]
    for u, v, w in t.tree_edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    c = np.zeros((t.n, t.n))
    for root in range(t.n):
        best = {root: np.inf}
        stack = [root]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if v not in best:
                    best[v] = min(best[u], w)
                    stack.append(v)
        for v, val in best.items():
            if v != root:
                c[root, v] = val
    return SymMatrix(c, tol)


def edge_connectivity_matrix(g: WeightedGraph, tol: float | None = None) -> SymMatrix:
    """C(G) through the flow tree (n - 1 flow computations)."""
    if g.n < 2:
        return SymMatrix(np.zeros((g.n, g.n)), tol)
    return matrix_from_flow_tree(gomory_hu_tree(g, tol), tol)


def edge_connectivity_matrix_bruteforce(g: WeightedGraph, tol: float | None = None) -> SymMatrix:
    """C(G) from one min-cut computation per vertex pair."""
    c = np.zeros((g.n, g.n))
    for u, v in all_pairs(g.n):
        c[u, v] = c[v, u] = min_cut(g, u, v, tol).value
    return SymMatrix(c, tol)


def vertex_connectivity_matrix(g: WeightedGraph, tol: float | None = None) -> SymMatrix:
    """P(G): counts of internally disjoint paths, zero diagonal. Unit weights only."""
    tol = default_tol() if tol is None else tol
    g.require_unweighted(tol)
    p = np.zeros((g.n, g.n))
    for u, v in all_pairs(g.n):
        p[u, v] = p[v, u] = local_vertex_connectivity(g, u, v, tol)
    return SymMatrix(p, tol)


def degree_diag(g: WeightedGraph, tol: float | None = None) -> SymMatrix:
    tol = default_tol() if tol is None else tol
    g.require_unweighted(tol)
    return SymMatrix(np.diag([float(round(d)) for d in g.degrees()]), tol)


def parse_flow_tree(text: str) -> FlowTree:
    """Parse ``n`` followed by ``n - 1`` lines ``u v w``."""
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedLine("missing vertex count", 1)
    line_no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedLine(f"expected vertex count, got {head!r}", line_no) from None
    edges = []
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise MalformedLine(f"expected 'u v w', got {line!r}", line_no)
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise MalformedLine(f"cannot parse {line!r}", line_no) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"vertex out of range in {line!r}", line_no)
        edges.append((u, v, w))
    try:
        return FlowTree(n, tuple(edges))
    except ValueError as exc:
        raise MalformedLine(str(exc), lines[-1][0]) from None


def render_flow_tree(t: FlowTree) -> str:
    lines = [str(t.n)]
    lines.extend(f"{u} {v} {format_number(w)}" for u, v, w in t.tree_edges)
    return "\n".join(lines) + "\n"
