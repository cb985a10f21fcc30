"""Weighted undirected graphs on dense integer vertex ids."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .exceptions import MalformedLine, NegativeWeight, NonUnitWeights, VertexOutOfRange
from .matrix import _content_lines, close, default_tol, format_number


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with nonnegative edge weights.

    Edges are stored as ``(u, v, w)`` with ``u < v``, sorted, one per pair.
    Parallel input edges are merged by summing their weights.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        merged: dict[tuple[int, int], float] = {}
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside [0, {self.n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if w < 0 or w != w:
                raise NegativeWeight(f"edge ({u}, {v}) has weight {w}")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0.0) + w
        object.__setattr__(
            self, "edges", tuple((u, v, w) for (u, v), w in sorted(merged.items()))
        )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "WeightedGraph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples; missing weights are 1."""
        triples = []
        for e in edges:
            if len(e) == 2:
                triples.append((e[0], e[1], 1.0))
            else:
                triples.append((e[0], e[1], e[2]))
        return cls(n, tuple(triples))

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> float:
        if u > v:
            u, v = v, u
        for a, b, w in self.edges:
            if a == u and b == v:
                return w
        return 0.0

    def adjacency(self) -> list[list[tuple[int, float]]]:
        """Neighbour lists, skipping zero-weight edges."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            if w > 0:
                adj[u].append((v, w))
                adj[v].append((u, w))
        return adj

    def weight_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = a[v, u] = w
        return a

    def degrees(self) -> list[float]:
        deg = [0.0] * self.n
        for u, v, w in self.edges:
            deg[u] += w
            deg[v] += w
        return deg

    def is_unweighted(self, tol: float | None = None) -> bool:
        """True when every edge weight is 1 within tolerance."""
        tol = default_tol() if tol is None else tol
        return all(close(w, 1.0, tol) for _, _, w in self.edges)

    def require_unweighted(self, tol: float | None = None) -> None:
        if not self.is_unweighted(tol):
            bad = next((u, v, w) for u, v, w in self.edges if not close(w, 1.0, tol or default_tol()))
            raise NonUnitWeights(f"edge ({bad[0]}, {bad[1]}) has weight {bad[2]}, expected 1")

    def edge_mask(self) -> int:
        """Bitmask over pairs in ``pair_index`` order of edges with positive weight."""
        mask = 0
        for u, v, w in self.edges:
            if w > 0:
                mask |= 1 << pair_index(self.n, u, v)
        return mask

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "WeightedGraph":
        """Unit-weight graph whose edges are the set bits of ``mask``."""
        return cls(n, tuple((u, v, 1.0) for u, v in pairs_of_mask(n, mask)))


def pair_index(n: int, u: int, v: int) -> int:
    """Position of pair ``u < v`` in row-major upper-triangle order."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def all_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def pairs_of_mask(n: int, mask: int) -> list[tuple[int, int]]:
    return [p for i, p in enumerate(all_pairs(n)) if mask >> i & 1]


def complete_graph(n: int, w: float = 1.0) -> WeightedGraph:
    if n < 1:
        raise ValueError("complete_graph needs n >= 1")
    if w < 0:
        raise NegativeWeight(f"weight {w} is negative")
    return WeightedGraph(n, tuple((u, v, float(w)) for u, v in all_pairs(n)))


def path_graph(n: int, w: float = 1.0) -> WeightedGraph:
    return WeightedGraph(n, tuple((i, i + 1, float(w)) for i in range(n - 1)))


def psd_counterexample_graph() -> WeightedGraph:
    """The six-vertex graph whose path matrix plus degrees is not PSD.

    Vertices are 0-indexed.
    """
    edges = [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (4, 2), (2, 3), (3, 5)]
    return WeightedGraph.from_edges(6, edges)


def components(g: WeightedGraph) -> list[list[int]]:
    """Connected components via positive-weight edges, each sorted, ordered by least vertex."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, w in g.edges:
        if w > 0:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for x in range(g.n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def is_connected(g: WeightedGraph) -> bool:
    return len(components(g)) <= 1


# -- edge-list text format ----------------------------------------------------


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse a header line ``n`` followed by ``u v w`` lines.

    ``#`` comments and blank lines are skipped. Repeated pairs are summed.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedLine("missing vertex count", 1)
    line_no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedLine(f"expected vertex count, got {head!r}", line_no) from None
    if n < 0:
        raise MalformedLine(f"vertex count must be nonnegative, got {n}", line_no)
    edges = []
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise MalformedLine(f"expected 'u v w', got {line!r}", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise MalformedLine(f"cannot parse {line!r}", line_no) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"vertex out of range [0, {n}) in {line!r}", line_no)
        if u == v:
            raise MalformedLine(f"self-loop {line!r}", line_no)
        if not w >= 0:
            raise NegativeWeight(f"negative weight in {line!r}", line_no)
        edges.append((u, v, w))
    return WeightedGraph(n, tuple(edges))


def render_edge_list(g: WeightedGraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v} {format_number(w)}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"
