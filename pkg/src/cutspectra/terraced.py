"""Gomory-Hu triangle inequality, terraced (superlevel-set) structure, and realizability."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import AsymmetricMatrix, NotRealizable, NumericalError
from .graph import WeightedGraph
from .matrix import SymMatrix, as_symmatrix, cluster_values, format_number


@dataclass(frozen=True)
class TriangleViolation:
    x: int
    y: int
    z: int
    lhs: float  # c_xz
    rhs: float  # min(c_xy, c_yz)


def check_gh_triangle(c, include_diagonal: bool = False, limit: int | None = None) -> list[TriangleViolation]:
    """Triples with ``c_xz < min(c_xy, c_yz)`` beyond tolerance.

    With ``include_diagonal=False`` only pairwise-distinct triples are
    checked; otherwise every triple, which also demands ``c_vv >= c_vw``.
    """
    c = as_symmatrix(c)
    a, n, tol = c.array, c.n, c.tol
    found: list[TriangleViolation] = []
    if n == 0:
        return found
    distinct = ~np.eye(n, dtype=bool)
    for y in range(n):
        rhs = np.minimum.outer(a[:, y], a[y, :])
        bad = a < rhs - tol * (1.0 + np.abs(rhs))
        if not include_diagonal:
            bad &= distinct
            bad[y, :] = False
            bad[:, y] = False
        for x, z in np.argwhere(bad):
            found.append(TriangleViolation(int(x), y, int(z), float(a[x, z]), float(rhs[x, z])))
            if limit is not None and len(found) >= limit:
                return found
    found.sort(key=lambda t: (t.x, t.y, t.z))
    return found


@dataclass(frozen=True)
class TerraceDecomposition:
    """Distinct levels and, per level, the disjoint blocks whose squares make up the superlevel set.

    ``partitions[0]`` is always ``(V,)``; ``partitions[i]`` is the block family at ``levels[i]``.
    """

    n: int
    levels: tuple[float, ...]
    partitions: tuple[tuple[frozenset, ...], ...]

    def reconstruct(self) -> np.ndarray:
        """``l0 J + sum_i sum_X (l_i - l_{i-1}) J_X``."""
        c = np.full((self.n, self.n), self.levels[0]) if self.n else np.zeros((0, 0))
        for i in range(1, len(self.levels)):
            step = self.levels[i] - self.levels[i - 1]
            for block in self.partitions[i]:
                idx = np.array(sorted(block))
                c[np.ix_(idx, idx)] += step
        return c

    def to_text(self) -> str:
        lines = []
        for level, blocks in zip(self.levels, self.partitions):
            sets = " ".join("{" + ",".join(str(v) for v in sorted(b)) + "}" for b in blocks)
            lines.append(f"level {format_number(level)}: {sets}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "levels": list(self.levels),
            "blocks": [[sorted(b) for b in blocks] for blocks in self.partitions],
        }


@dataclass(frozen=True)
class TerraceFailure:
    """Smallest level whose superlevel set is not a disjoint union of squares."""

    level: float
    superlevel: np.ndarray  # boolean mask
    witness: tuple[int, ...]  # (v, w) missing a diagonal, or (x, y, z) breaking transitivity

    def __bool__(self):
        return False

    def describe(self) -> str:
        if len(self.witness) == 2:
            v, w = self.witness
            return (
                f"superlevel set at {format_number(self.level)} contains ({v},{w}) "
                f"but not ({v},{v}) or ({w},{w})"
            )
        x, y, z = self.witness
        return (
            f"superlevel set at {format_number(self.level)} contains ({x},{y}) and ({y},{z}) "
            f"but not ({x},{z})"
        )


def _quantize(c: SymMatrix) -> tuple[list[float], np.ndarray]:
    """Tolerance-clustered level values and the matrix of level indices."""
    groups = cluster_values(c.array.ravel(), c.tol)
    levels = [float(np.mean(g)) for g in groups]
    bounds = np.array([g[0] for g in groups])
    idx = np.searchsorted(bounds, c.array, side="right") - 1
    return levels, idx


def square_blocks(mask: np.ndarray):
    """Blocks ``X`` with ``mask == union of X x X``, or a witness tuple if impossible."""
    n = mask.shape[0]
    diag = np.diag(mask)
    for v, w in np.argwhere(mask):
        if not (diag[v] and diag[w]):
            return (int(v), int(w))
    blocks = []
    seen = np.zeros(n, dtype=bool)
    for v in range(n):
        if not diag[v] or seen[v]:
            continue
        members = np.flatnonzero(mask[v])
        for y in members:
            missing = np.flatnonzero(mask[y] != mask[v])
            if missing.size:
                z = int(missing[0])
                if mask[y, z]:
                    return (int(v), int(y), z)
                return (int(y), int(v), z)
        seen[members] = True
        blocks.append(frozenset(int(u) for u in members))
    return blocks


def terrace_decomposition(c) -> TerraceDecomposition | TerraceFailure:
    """Decompose by repeatedly splitting off the vertices tied to a minimum-entry column.

    For the current vertex set ``S`` with smallest entry ``L``, pick the first
    column ``z`` attaining ``L``, let ``X`` be the other vertices ``x`` with
    ``c_xz == L`` and ``Y = S - X``; all ``X x Y`` entries must equal ``L``.
    Recursing on ``X`` and ``Y`` yields a laminar family of blocks.
    """
    c = as_symmatrix(c)
    n = c.n
    if n == 0:
        return TerraceDecomposition(0, (), ())
    levels, k = _quantize(c)

    # nodes: (members, level index, parent level index)
    nodes: list[tuple[np.ndarray, int, int]] = []
    stack = [(np.arange(n), -1)]
    ok = True
    while stack and ok:
        members, parent_level = stack.pop()
        sub = k[np.ix_(members, members)]
        low = int(sub.min())
        nodes.append((members, low, parent_level))
        if members.size == 1:
            continue
        col = int(np.flatnonzero((sub == low).any(axis=0))[0])
        in_x = sub[:, col] == low
        in_x[col] = False
        if not in_x.any() or not np.all(sub[np.ix_(in_x, ~in_x)] == low):
            ok = False
            break
        stack.append((members[~in_x], low))
        stack.append((members[in_x], low))

    if ok:
        partitions: list[list[frozenset]] = [[] for _ in levels]
        for members, low, parent_level in nodes:
            for i in range(parent_level + 1, low + 1):
                partitions[i].append(frozenset(int(v) for v in members))
        parts = tuple(tuple(sorted(p, key=min)) for p in partitions)
        dec = TerraceDecomposition(n, tuple(levels), parts)
        scale = float(np.abs(c.array).max())
        if np.abs(dec.reconstruct() - c.array).max() <= 10 * c.tol * (1.0 + scale):
            return dec

    for i, level in enumerate(levels):
        mask = k >= i
        blocks = square_blocks(mask)
        if isinstance(blocks, tuple):
            return TerraceFailure(level, mask, blocks)
    raise NumericalError("terrace decomposition failed but every superlevel set is a union of squares")


def is_realizable(c) -> bool:
    """Symmetric, nonnegative, zero diagonal, and the off-diagonal triangle inequality holds."""
    try:
        c = as_symmatrix(c)
    except AsymmetricMatrix:
        return False
    a, tol = c.array, c.tol
    if c.n == 0:
        return True
    if a.min() < -tol or np.abs(np.diag(a)).max() > tol:
        return False
    return not check_gh_triangle(c, include_diagonal=False, limit=1)


def realize_flow_tree(c) -> WeightedGraph:
    """A weighted tree whose edge-connectivity matrix is ``c``.

    Built as a maximum-weight spanning tree of the complete graph weighted by
    ``c``; the result is re-checked against all-pairs minimum cuts.
    """
    from .connmat import edge_connectivity_matrix_bruteforce

    c = as_symmatrix(c)
    if not is_realizable(c):
        raise NotRealizable("matrix fails the Gomory-Hu triangle inequality or basic shape checks")
    n, a = c.n, c.array
    edges = []
    if n > 1:
        in_tree = np.zeros(n, dtype=bool)
        in_tree[0] = True
        best = a[0].copy()
        link = np.zeros(n, dtype=int)
        for _ in range(n - 1):
            cand = np.where(in_tree, -np.inf, best)
            v = int(np.argmax(cand))
            edges.append((min(v, int(link[v])), max(v, int(link[v])), max(float(a[v, link[v]]), 0.0)))
            in_tree[v] = True
            better = (~in_tree) & (a[v] > best)
            best[better] = a[v][better]
            link[better] = v
    tree = WeightedGraph(n, tuple(edges))
    if not edge_connectivity_matrix_bruteforce(tree, c.tol).allclose(c.array):
        raise NumericalError("realizing tree does not reproduce the matrix")
    return tree


def distinct_offdiag_values(c) -> list[float]:
    """Ascending tolerance-distinct off-diagonal values."""
    c = as_symmatrix(c)
    return [float(np.mean(g)) for g in cluster_values(c.offdiag(), c.tol)]
