"""Small-graph generators: labeled enumeration, isomorphism classes, and random graphs."""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from .exceptions import TooLarge
from .graph import WeightedGraph, all_pairs

MAX_ENUM_N = 9


def _bitsets(n: int, mask: int) -> list[int]:
    adj = [0] * n
    for i, (u, v) in enumerate(all_pairs(n)):
        if mask >> i & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def _connected_bits(n: int, adj: list[int]) -> bool:
    if n <= 1:
        return True
    seen = frontier = 1
    full = (1 << n) - 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == full


def enumerate_connected_graphs(n: int) -> Iterator[WeightedGraph]:
    """Every connected labeled unit-weight graph on ``n`` vertices, by increasing edge bitmask."""
    if n > MAX_ENUM_N:
        raise TooLarge(f"labeled enumeration is limited to n <= {MAX_ENUM_N}, got {n}")
    if n < 1:
        raise ValueError("n must be positive")
    for mask in range(1 << (n * (n - 1) // 2)):
        if _connected_bits(n, _bitsets(n, mask)):
            yield WeightedGraph.from_mask(n, mask)


# -- canonical labeling ---------------------------------------------------------


def _refine(adj: list[int], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Split cells by neighbour counts into every cell until stable (order-invariant)."""
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        out: list[tuple[int, ...]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            out.extend(tuple(v for v in cell if sig[v] == key) for key in keys)
        if len(out) == len(cells):
            return out
        cells = out


def _code(n: int, adj: list[int], order: list[int]) -> int:
    code = 0
    bit = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            if row >> order[j] & 1:
                code |= 1 << bit
            bit += 1
    return code


def canonical_mask(n: int, mask: int) -> int:
    """Edge bitmask of a canonical relabeling; equal for isomorphic graphs.

    Individualization-refinement search taking the smallest leaf code.
    Vertices of a cell that are twins of an already-tried vertex are skipped.
    """
    adj = _bitsets(n, mask)
    best = [None]

    def twins(u: int, v: int) -> bool:
        return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)

    def search(cells):
        cells = _refine(adj, cells)
        if len(cells) == n:
            code = _code(n, adj, [c[0] for c in cells])
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        size = min(len(c) for c in cells if len(c) > 1)
        pos = next(i for i, c in enumerate(cells) if len(c) == size)
        target = cells[pos]
        tried: list[int] = []
        for v in target:
            if any(twins(v, u) for u in tried):
                continue
            tried.append(v)
            rest = tuple(u for u in target if u != v)
            search(cells[:pos] + [(v,), rest] + cells[pos + 1 :])

    search([tuple(range(n))])
    return best[0]


def nonisomorphic_connected_masks(n: int) -> list[int]:
    """Canonical edge masks of connected graphs on ``n`` vertices, one per isomorphism class.

    Built by attaching a new vertex to each class on ``n - 1`` vertices in all
    nonempty ways (a connected graph always has a non-cut vertex).
    """
    if n > MAX_ENUM_N:
        raise TooLarge(f"enumeration is limited to n <= {MAX_ENUM_N}, got {n}")
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return [0]
    smaller = nonisomorphic_connected_masks(n - 1)
    k = n - 1
    # bit positions of pairs (i, k) in the n-vertex pair order
    pos_new = [i * (2 * n - i - 1) // 2 + (k - i - 1) for i in range(k)]
    old_pairs = all_pairs(k)
    old_pos = [u * (2 * n - u - 1) // 2 + (v - u - 1) for u, v in old_pairs]
    found: set[int] = set()
    for small in smaller:
        base = 0
        for i, p in enumerate(old_pos):
            if small >> i & 1:
                base |= 1 << p
        for nb in range(1, 1 << k):
            mask = base
            for i in range(k):
                if nb >> i & 1:
                    mask |= 1 << pos_new[i]
            found.add(canonical_mask(n, mask))
    return sorted(found)


def enumerate_nonisomorphic_connected_graphs(n: int) -> Iterator[WeightedGraph]:
    for mask in nonisomorphic_connected_masks(n):
        yield WeightedGraph.from_mask(n, mask)


def random_graph(n: int, p: float, seed: int) -> WeightedGraph:
    """Erdos-Renyi ``G(n, p)`` with unit weights; reproducible for a given seed."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    draws = rng.random(n * (n - 1) // 2)
    return WeightedGraph(n, tuple((u, v, 1.0) for (u, v), r in zip(all_pairs(n), draws) if r < p))


def random_weighted_graph(n: int, rng: np.random.Generator, max_weight: float = 10.0) -> WeightedGraph:
    """Random graph with edge density and weight style drawn per instance.

    Half the instances use integer weights in ``[0, max_weight]`` so that cut
    values collide; the rest use continuous uniform weights.
    """
    p = float(rng.uniform(0.2, 1.0))
    integral = bool(rng.random() < 0.5)
    edges = []
    for u, v in all_pairs(n):
        if rng.random() < p:
            w = float(rng.integers(0, int(max_weight) + 1)) if integral else float(rng.uniform(0.0, max_weight))
            edges.append((u, v, w))
    return WeightedGraph(n, tuple(edges))
