"""Ultrametric distance matrices: validation, quotient analogue, and the smallest-eigenvalue bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import BadInterval, NonzeroDiagonal, NotRealizable, NumericalError, ZeroEntry
from .matrix import SymMatrix, as_symmatrix, close, row_maxima
from .quotient import QuotientReport, nearest_point_classes, nearest_point_quotient
from .spectra import ElementaryEigenpair, eigen_sym, elementary_pair_condition
from .terraced import is_realizable


@dataclass(frozen=True)
class UltrametricViolation:
    x: int
    y: int
    z: int
    d_xz: float
    bound: float  # max(d_xy, d_yz)


def _require_zero_diagonal(d: SymMatrix) -> None:
    diag = np.diag(d.array)
    if d.n and np.abs(diag).max() > d.tol:
        v = int(np.argmax(np.abs(diag)))
        raise NonzeroDiagonal(f"d({v},{v}) = {diag[v]!r}, expected 0")


def check_ultrametric(d, limit: int | None = None) -> tuple[bool, list[UltrametricViolation]]:
    """Strong triangle inequality ``d(x, z) <= max(d(x, y), d(y, z))`` for all triples."""
    d = as_symmatrix(d)
    _require_zero_diagonal(d)
    a, n, tol = d.array, d.n, d.tol
    found: list[UltrametricViolation] = []
    for y in range(n):
        bound = np.maximum.outer(a[:, y], a[y, :])
        bad = a > bound + tol * (1.0 + np.abs(bound))
        for x, z in np.argwhere(bad):
            found.append(UltrametricViolation(int(x), y, int(z), float(a[x, z]), float(bound[x, z])))
            if limit is not None and len(found) >= limit:
                return False, found
    found.sort(key=lambda t: (t.x, t.y, t.z))
    return not found, found


def from_connectivity(c) -> SymMatrix:
    """Reciprocal off-diagonal entries ``d(v, w) = 1 / c_vw`` of a connected edge-connectivity matrix."""
    c = as_symmatrix(c)
    if not is_realizable(c):
        raise NotRealizable("matrix is not an edge-connectivity matrix")
    off = ~np.eye(c.n, dtype=bool)
    if np.any(c.array[off] <= c.tol):
        v, w = np.argwhere((c.array <= c.tol) & off)[0]
        raise ZeroEntry(f"c({v},{w}) = 0: vertices lie in different components")
    d = np.zeros((c.n, c.n))
    d[off] = 1.0 / c.array[off]
    return SymMatrix(d, c.tol)


def mutually_nearest_pairs(d) -> list[ElementaryEigenpair]:
    """Pairs ``x < y`` with ``d(x, y) = r(x) = r(y)``, each with eigenvalue ``-d(x, y)``."""
    d = as_symmatrix(d)
    neg = SymMatrix(-d.array, d.tol)
    m = row_maxima(neg)
    return [
        ElementaryEigenpair(x, y, float(-d.array[x, y]))
        for x in range(d.n)
        for y in range(x + 1, d.n)
        if elementary_pair_condition(neg, x, y, m)
    ]


@dataclass(frozen=True)
class UltrametricQuotient:
    quotient: QuotientReport
    nearest_pairs: tuple[ElementaryEigenpair, ...]
    pair_residual: float  # max |D e - lambda e| over nearest pairs

    def to_dict(self) -> dict:
        out = self.quotient.to_dict()
        out["nearest_pairs"] = [[p.x, p.y, p.eigenvalue] for p in self.nearest_pairs]
        out["pair_residual"] = self.pair_residual
        return out


def ultrametric_quotient(d) -> UltrametricQuotient:
    """Nearest-point classes, quotient ``Q`` with ``q_ii = r(X_i)(|X_i| - 1)``, and energy split."""
    d = as_symmatrix(d)
    _require_zero_diagonal(d)
    report = nearest_point_quotient(d, nearest_point_classes(d))
    pairs = mutually_nearest_pairs(d)
    residual = 0.0
    for p in pairs:
        e = p.vector(d.n)
        residual = max(residual, float(np.abs(d.array @ e - p.eigenvalue * e).max()))
    return UltrametricQuotient(report, tuple(pairs), residual)


def zhan_value(n: int, m: float, big: float) -> float:
    """Least possible smallest eigenvalue of a symmetric matrix with entries in ``[m, big]``."""
    if n % 2 == 0:
        return n * (m - big) / 2.0
    return (n * m - math.sqrt(m * m + (n * n - 1) * big * big)) / 2.0


def zhan_extremal(n: int, m: float, big: float, tol: float = 1e-8) -> tuple[SymMatrix, float]:
    """The balanced two-block matrix (``m`` inside blocks, ``big`` across) and its smallest eigenvalue.

    The closed form is cross-checked against the Jacobi solver.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if m > big:
        raise BadInterval(f"empty interval [{m}, {big}]")
    half = n // 2
    x = np.full((n, n), float(big))
    x[:half, :half] = m
    x[half:, half:] = m
    xs = SymMatrix(x)
    lam = zhan_value(n, m, big)
    computed = eigen_sym(xs, vectors=False).lambda_min
    if abs(computed - lam) > tol * max(1.0, abs(lam)):
        raise NumericalError(f"closed form {lam!r} disagrees with computed {computed!r}")
    return xs, lam


@dataclass(frozen=True)
class BoundReport:
    bound: float
    lambda_min: float
    attained: bool
    m: float
    M: float

    def to_dict(self) -> dict:
        return {"bound": self.bound, "lambda_min": self.lambda_min, "attained": self.attained, "m": self.m, "M": self.M}


def is_extremal_pattern(d) -> bool:
    """Off-diagonals take only the values min and max, with the min-pairs forming two balanced cliques."""
    d = as_symmatrix(d)
    n, a, tol = d.n, d.array, d.tol
    off = d.offdiag()
    lo, hi = float(off.min()), float(off.max())
    if close(lo, hi, tol):
        return True
    is_lo = np.vectorize(lambda v: close(v, lo, tol))(a)
    is_hi = np.vectorize(lambda v: close(v, hi, tol))(a)
    offmask = ~np.eye(n, dtype=bool)
    if np.any(offmask & ~is_lo & ~is_hi):
        return False
    same = is_lo | ~offmask
    first = same[0]
    side = [np.flatnonzero(first), np.flatnonzero(~first)]
    if abs(side[0].size - side[1].size) > 1:
        return False
    expected = np.equal.outer(first, first)
    return bool(np.array_equal(same, expected))


def ultrametric_min_eig_bound(d) -> BoundReport:
    """Lower bound on the smallest eigenvalue from the off-diagonal range ``[m, M]``.

    The bound is the extremal two-block value minus ``m``; it is attained
    exactly on the balanced two-value pattern.
    """
    d = as_symmatrix(d)
    if d.n < 2:
        raise ValueError("need n >= 2")
    off = d.offdiag()
    m, big = float(off.min()), float(off.max())
    bound = zhan_value(d.n, m, big) - m
    lam = eigen_sym(d, vectors=False).lambda_min
    return BoundReport(bound, lam, is_extremal_pattern(d), m, big)


def random_ultrametric(
    n: int, rng: np.random.Generator, tie_prob: float = 0.0, tol: float | None = None
) -> SymMatrix:
    """Distances from a random binary merge hierarchy with nondecreasing heights.

    Heights strictly increase unless ``tie_prob`` > 0, in which case a merge
    reuses the previous height with that probability.
    """
    clusters = [[i] for i in range(n)]
    d = np.zeros((n, n))
    height = 0.0
    while len(clusters) > 1:
        if height == 0.0 or rng.random() >= tie_prob:
            height += float(rng.uniform(0.1, 1.0))
        i, j = sorted(rng.choice(len(clusters), size=2, replace=False))
        a, b = clusters[i], clusters[j]
        d[np.ix_(a, b)] = height
        d[np.ix_(b, a)] = height
        clusters[i] = a + b
        del clusters[j]
    return SymMatrix(d, tol)
