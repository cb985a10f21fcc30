"""Bulk scans over small graphs: vertex-connectivity conjectures and edge-connectivity theorems."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .connmat import degree_diag, edge_connectivity_matrix, vertex_connectivity_matrix
from .enumeration import (
    enumerate_connected_graphs,
    nonisomorphic_connected_masks,
    random_weighted_graph,
)
from .exceptions import TooLarge
from .graph import WeightedGraph, render_edge_list
from .matrix import SymMatrix, format_number, row_maxima
from .spectra import eigen_sym

log = logging.getLogger(__name__)

VERTEX_CHECKS = ("energy", "p_plus_d_psd", "min_eig_n_minus_1", "min_eig_n_plus_1")
EDGE_CHECKS = ("psd_shift", "min_eig", "energy_bound", "energy_equality")
LAMBDA_TOL = 1e-7


@dataclass(frozen=True)
class Violation:
    n: int
    mask: int  # edge bitmask for unit-weight graphs, -1 for weighted ones
    prop: str
    observed: float
    bound: float
    edges: tuple[tuple[int, int, float], ...] = ()

    def graph(self) -> WeightedGraph:
        if self.edges:
            return WeightedGraph(self.n, self.edges)
        return WeightedGraph.from_mask(self.n, self.mask)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["edges"] = [list(e) for e in self.edges]
        return out


@dataclass
class ScanReport:
    graphs_scanned: int = 0
    violations: list[Violation] = field(default_factory=list)
    per_n: dict[int, dict] = field(default_factory=dict)
    elapsed: float = 0.0  # wall-clock seconds; excluded from serialized output

    def to_dict(self) -> dict:
        return {
            "graphs_scanned": self.graphs_scanned,
            "per_n": {str(k): v for k, v in sorted(self.per_n.items())},
            "violations": [v.to_dict() for v in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        lines = [f"graphs scanned: {self.graphs_scanned}"]
        for n, stats in sorted(self.per_n.items()):
            parts = " ".join(f"{k}={format_number(v) if isinstance(v, float) else v}" for k, v in sorted(stats.items()))
            lines.append(f"  n={n}: {parts}")
        lines.append(f"violations: {len(self.violations)}")
        for v in self.violations:
            lines.append(
                f"  n={v.n} mask={v.mask} {v.prop}: observed {format_number(v.observed)} bound {format_number(v.bound)}"
            )
        return "\n".join(lines) + "\n"

    def write_violations(self, out_dir: str) -> list[str]:
        """Write each violating graph as an edge-list file for standalone re-analysis."""
        os.makedirs(out_dir, exist_ok=True)
        paths = []
        for i, v in enumerate(self.violations):
            path = os.path.join(out_dir, f"violation_{i:04d}_n{v.n}_{v.prop}.txt")
            with open(path, "w") as fh:
                fh.write(f"# {v.prop}: observed {format_number(v.observed)}, bound {format_number(v.bound)}\n")
                fh.write(render_edge_list(v.graph()))
            paths.append(path)
        return paths


# -- per-graph analysis (module level so worker processes can import it) --------


def vertex_checks(g: WeightedGraph, checks=VERTEX_CHECKS) -> tuple[float, list[tuple[str, float, float]]]:
    """Smallest eigenvalue of P(G) and the failed vertex-conjecture checks as (name, observed, bound)."""
    n = g.n
    p = vertex_connectivity_matrix(g)
    spec = eigen_sym(p, vectors=False)
    lam = spec.lambda_min
    failed = []
    if "energy" in checks and spec.energy > 2 * (n - 1) ** 2 + 1e-9 * (1 + spec.energy):
        failed.append(("energy", spec.energy, float(2 * (n - 1) ** 2)))
    if "p_plus_d_psd" in checks:
        shifted = eigen_sym(SymMatrix(p.array + degree_diag(g).array), vectors=False).lambda_min
        if shifted < -n * p.tol:
            failed.append(("p_plus_d_psd", shifted, 0.0))
    if "min_eig_n_minus_1" in checks and lam < -(n - 1) - LAMBDA_TOL:
        failed.append(("min_eig_n_minus_1", lam, float(-(n - 1))))
    if "min_eig_n_plus_1" in checks and lam < -(n + 1) - LAMBDA_TOL:
        failed.append(("min_eig_n_plus_1", lam, float(-(n + 1))))
    return lam, failed


def edge_checks(g: WeightedGraph, c: SymMatrix | None = None) -> list[tuple[str, float, float]]:
    """Failed edge-connectivity theorem checks as (name, observed, bound)."""
    n = g.n
    if c is None:
        c = edge_connectivity_matrix(g)
    if n < 2:
        return []
    failed = []
    big = float(c.array.max())
    spec = eigen_sym(c, vectors=False)
    shifted = eigen_sym(c.with_diagonal(row_maxima(c)), vectors=False).lambda_min
    if shifted < -n * c.tol * max(1.0, big):
        failed.append(("psd_shift", shifted, 0.0))
    if abs(spec.lambda_min + big) > LAMBDA_TOL * max(1.0, big):
        failed.append(("min_eig", spec.lambda_min, -big))
    bound = 2 * (n - 1) * big
    en = spec.energy
    if en > bound + LAMBDA_TOL * max(1.0, bound):
        failed.append(("energy_bound", en, bound))
    attains = abs(en - bound) <= LAMBDA_TOL * max(1.0, bound)
    uniform = bool(np.all(np.abs(c.offdiag() - big) <= c.tol * (1.0 + big)))
    if attains != uniform:
        failed.append(("energy_equality", en, bound))
    return failed


def _vertex_task(args):
    n, mask, checks = args
    lam, failed = vertex_checks(WeightedGraph.from_mask(n, mask), checks)
    return n, mask, lam, failed


def _edge_task(args):
    n, mask, edges = args
    g = WeightedGraph(n, edges) if edges else WeightedGraph.from_mask(n, mask)
    return n, mask, edges, edge_checks(g)


def _run(fn, tasks, workers: int):
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=64))


def _default_workers() -> int:
    return os.cpu_count() or 1


def scan_vertex_conjectures(
    n_max: int,
    checks=VERTEX_CHECKS,
    n_min: int = 2,
    labeled: bool = False,
    extra_graphs=(),
    workers: int | None = None,
) -> ScanReport:
    """Evaluate the vertex-connectivity conjectures on every connected graph with ``n_min <= n <= n_max``.

    By default one representative per isomorphism class is scanned (all the
    checked quantities are invariant under relabeling); ``labeled=True``
    scans every labeled graph instead. ``extra_graphs`` are appended as-is
    and counted under ``extra``. Per-n minima of the smallest eigenvalue of
    P(G) are recorded over the enumerated graphs.
    """
    if n_max > 9:
        raise TooLarge(f"scan limited to n <= 9, got {n_max}")
    unknown = set(checks) - set(VERTEX_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    checks = tuple(c for c in VERTEX_CHECKS if c in set(checks))
    workers = _default_workers() if workers is None else workers
    start = time.perf_counter()
    tasks = []
    for n in range(max(n_min, 2), n_max + 1):
        if labeled:
            masks = [g.edge_mask() for g in enumerate_connected_graphs(n)]
        else:
            masks = nonisomorphic_connected_masks(n)
        tasks.extend((n, m, checks) for m in masks)
    extra = []
    for g in extra_graphs:
        g.require_unweighted()
        extra.append((g.n, g.edge_mask(), checks))
    results = _run(_vertex_task, tasks + extra, workers)
    report = ScanReport()
    for i, (n, mask, lam, failed) in enumerate(results):
        report.graphs_scanned += 1
        if i < len(tasks):
            stats = report.per_n.setdefault(n, {"graphs": 0, "min_lambda_P": lam, "argmin_mask": mask})
            stats["graphs"] += 1
            if lam < stats["min_lambda_P"]:
                stats["min_lambda_P"], stats["argmin_mask"] = lam, mask
        else:
            # injected graphs are counted but kept out of the per-n minima
            stats = report.per_n.setdefault(n, {"graphs": 0, "min_lambda_P": lam, "argmin_mask": mask})
            stats["extra"] = stats.get("extra", 0) + 1
        report.violations.extend(Violation(n, mask, name, obs, bnd) for name, obs, bnd in failed)
    report.elapsed = time.perf_counter() - start
    log.info("vertex scan: %d graphs in %.1fs", report.graphs_scanned, report.elapsed)
    return report


def scan_edge_theorems(
    n_max: int,
    trials: int,
    seed: int,
    labeled_max: int = 6,
    random_n_max: int = 12,
    workers: int | None = None,
) -> ScanReport:
    """Check the PSD shift, smallest eigenvalue and energy bound on many graphs.

    Exhaustive part: every connected labeled unit-weight graph for
    ``n <= min(n_max, labeled_max)`` and one graph per isomorphism class above
    that. Random part: ``trials`` weighted graphs with ``2 <= n <= random_n_max``
    and weights in [0, 10]. Every violation is a genuine failure.
    """
    if n_max > 9:
        raise TooLarge(f"scan limited to n <= 9, got {n_max}")
    workers = _default_workers() if workers is None else workers
    start = time.perf_counter()
    tasks = []
    for n in range(2, n_max + 1):
        if n <= labeled_max:
            masks = [g.edge_mask() for g in enumerate_connected_graphs(n)]
        else:
            masks = nonisomorphic_connected_masks(n)
        tasks.extend((n, m, ()) for m in masks)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(2, random_n_max + 1))
        g = random_weighted_graph(n, rng)
        tasks.append((n, -1, g.edges))
    results = _run(_edge_task, tasks, workers)
    report = ScanReport()
    for n, mask, edges, failed in results:
        report.graphs_scanned += 1
        key = "random" if mask < 0 else "exhaustive"
        stats = report.per_n.setdefault(n, {"exhaustive": 0, "random": 0})
        stats[key] += 1
        report.violations.extend(Violation(n, mask, name, obs, bnd, edges) for name, obs, bnd in failed)
    report.elapsed = time.perf_counter() - start
    log.info("edge scan: %d graphs in %.1fs", report.graphs_scanned, report.elapsed)
    return report


def reverify(v: Violation) -> bool:
    """Recompute a recorded violation from its graph alone."""
    g = v.graph()
    if v.prop in VERTEX_CHECKS:
        _, failed = vertex_checks(g, (v.prop,))
    else:
        failed = [f for f in edge_checks(g) if f[0] == v.prop]
    return any(name == v.prop for name, _, _ in failed)
