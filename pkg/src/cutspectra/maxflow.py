"""Maximum flow / minimum cut by blocking flows (Dinic), and local vertex connectivity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .exceptions import NumericalError, SameVertex
from .graph import WeightedGraph
from .matrix import default_tol, slack


class FlowNetwork:
    """Residual network with paired arcs; arc ``a ^ 1`` is the reverse of ``a``."""

    def __init__(self, n: int):
        self.n = n
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.head: list[int] = []
        self.cap: list[float] = []

    def add_arc(self, u: int, v: int, cap: float, rev_cap: float = 0.0) -> int:
        a = len(self.head)
        self.head += (v, u)
        self.cap += (cap, rev_cap)
        self.out[u].append(a)
        self.out[v].append(a + 1)
        return a

    def _levels(self, s: int, eps: float) -> list[int]:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        head, cap, out = self.head, self.cap, self.out
        while queue:
            u = queue.popleft()
            for a in out[u]:
                v = head[a]
                if level[v] < 0 and cap[a] > eps:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def max_flow(self, s: int, t: int, eps: float) -> float:
        head, cap, out = self.head, self.cap, self.out
        total = 0.0
        while True:
            level = self._levels(s, eps)
            if level[t] < 0:
                return total
            it = [0] * self.n

            def push(u: int, limit: float) -> float:
                if u == t:
                    return limit
                arcs = out[u]
                while it[u] < len(arcs):
                    a = arcs[it[u]]
                    v = head[a]
                    if cap[a] > eps and level[v] == level[u] + 1:
                        pushed = push(v, min(limit, cap[a]))
                        if pushed > 0.0:
                            cap[a] -= pushed
                            cap[a ^ 1] += pushed
                            return pushed
                    it[u] += 1
                return 0.0

            while True:
                pushed = push(s, float("inf"))
                if pushed <= eps:
                    break
                total += pushed

    def reachable(self, s: int, eps: float) -> set[int]:
        """Vertices reachable from ``s`` through unsaturated residual arcs."""
        return {v for v, lv in enumerate(self._levels(s, eps)) if lv >= 0}


@dataclass(frozen=True)
class CutResult:
    value: float
    source_side: frozenset


def _check_pair(g: WeightedGraph, s: int, t: int) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise IndexError(f"vertex pair ({s}, {t}) outside [0, {g.n})")
    if s == t:
        raise SameVertex(f"source and sink are both {s}")


def cut_weight(g: WeightedGraph, side) -> float:
    """Total weight of edges with exactly one endpoint in ``side``."""
    return sum(w for u, v, w in g.edges if (u in side) != (v in side))


def min_cut(g: WeightedGraph, s: int, t: int, tol: float | None = None) -> CutResult:
    """Minimum-weight edge cut separating ``s`` from ``t``.

    The source side is the residual-reachable set from ``s``; its crossing
    weight is recomputed from the graph and must match the flow value.
    """
    _check_pair(g, s, t)
    tol = default_tol() if tol is None else tol
    net = FlowNetwork(g.n)
    for u, v, w in g.edges:
        if w > 0:
            net.add_arc(u, v, w, w)
    flow = net.max_flow(s, t, tol)
    side = frozenset(net.reachable(s, tol))
    value = cut_weight(g, side)
    if t in side or abs(value - flow) > slack(tol, value) * max(1, g.m):
        raise NumericalError(f"cut certificate failed for ({s}, {t}): flow {flow!r}, cut {value!r}")
    return CutResult(value, side)


def local_vertex_connectivity(g: WeightedGraph, s: int, t: int, tol: float | None = None) -> int:
    """Maximum number of internally vertex-disjoint ``s``-``t`` paths in an unweighted graph.

    Each vertex other than ``s`` and ``t`` is split into an in/out pair joined
    by a unit arc; edges become arcs of capacity ``n`` between split nodes.
    A direct ``s``-``t`` edge is one more path on its own.
    """
    _check_pair(g, s, t)
    tol = default_tol() if tol is None else tol
    g.require_unweighted(tol)
    n = g.n
    big = float(n)
    net = FlowNetwork(2 * n)
    for v in range(n):
        net.add_arc(2 * v, 2 * v + 1, big if v in (s, t) else 1.0)
    direct = 0
    for u, v, w in g.edges:
        if w <= 0:
            continue
        if {u, v} == {s, t}:
            direct = 1
            continue
        net.add_arc(2 * u + 1, 2 * v, big)
        net.add_arc(2 * v + 1, 2 * u, big)
    flow = net.max_flow(2 * s + 1, 2 * t, tol)
    paths = round(flow)
    if abs(flow - paths) > 1e-6:
        raise NumericalError(f"non-integral vertex-disjoint path count {flow!r}")
    return paths + direct
