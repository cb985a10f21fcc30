"""Cyclic Jacobi eigensolver and spectral quantities of symmetric matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NoConvergence, NotRealizable, NumericalError, PreconditionViolated
from .matrix import SymMatrix, as_symmatrix, close, row_maxima

MAX_SWEEPS = 100
OFF_REL_TOL = 1e-12
RESIDUAL_REL_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray | None  # columns aligned with eigenvalues
    residual: float
    sweeps: int = 0

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def energy(self) -> float:
        return float(np.abs(self.eigenvalues).sum())

    @property
    def spread(self) -> float:
        return self.lambda_max - self.lambda_min

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "energy": self.energy,
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "spread": self.spread,
            "residual": self.residual,
        }


def _off_norm(a: np.ndarray) -> float:
    return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))


def jacobi(a, max_sweeps: int = MAX_SWEEPS, rel_tol: float = OFF_REL_TOL):
    """Diagonalize a symmetric array by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` unsorted. Rotations below a
    threshold are skipped during the first three sweeps.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    target = rel_tol * float(np.linalg.norm(a))
    for sweep in range(max_sweeps + 1):
        off = _off_norm(a)
        if off <= target:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        threshold = 0.2 * off / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold or apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise NoConvergence(max_sweeps)


def eigen_sym(c, vectors: bool = True) -> Spectrum:
    """All eigenpairs of a symmetric matrix, eigenvalues descending.

    The residual ``max |Cv - lambda v|`` is certified against
    ``1e-8 * max(1, ||C||_inf)``.
    """
    c = as_symmatrix(c)
    a = c.array
    if c.n == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)) if vectors else None, 0.0)
    vals, vecs, sweeps = jacobi(a)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    residual = float(np.abs(a @ vecs - vecs * vals).max())
    if residual > RESIDUAL_REL_TOL * max(1.0, c.norm_inf()):
        raise NumericalError(f"eigen residual {residual:.3e} exceeds tolerance")
    return Spectrum(vals, vecs if vectors else None, residual, sweeps)


def energy(c) -> float:
    """Sum of absolute eigenvalues."""
    return eigen_sym(c).energy


def spread(c) -> float:
    """Largest minus smallest eigenvalue."""
    return eigen_sym(c).spread


def is_psd(c) -> tuple[bool, np.ndarray | None]:
    """PSD test with threshold ``-n * tol``.

    On failure the eigenvector of the smallest eigenvalue is returned as a
    witness; its Rayleigh quotient is negative.
    """
    c = as_symmatrix(c)
    if c.n == 0:
        return True, None
    spec = eigen_sym(c)
    if spec.lambda_min >= -c.n * c.tol:
        return True, None
    return False, spec.eigenvectors[:, -1].copy()


@dataclass(frozen=True)
class ElementaryEigenpair:
    x: int
    y: int
    eigenvalue: float

    def vector(self, n: int) -> np.ndarray:
        e = np.zeros(n)
        e[self.x] = 1.0
        e[self.y] = -1.0
        return e


def elementary_pair_condition(c: SymMatrix, x: int, y: int, maxima=None) -> bool:
    """``c[x, y]`` is the largest off-diagonal entry of rows x and y, and ``c[x, x] == c[y, y]``."""
    m = row_maxima(c) if maxima is None else maxima
    a, tol = c.array, c.tol
    cxy = a[x, y]
    return close(cxy, m[x], tol) and close(cxy, m[y], tol) and close(a[x, x], a[y, y], tol)


def elementary_eigenpairs(c) -> list[ElementaryEigenpair]:
    """Pairs ``x < y`` for which ``e_x - e_y`` is an eigenvector, read off the entries.

    Requires the off-diagonal triangle inequality ``c_xz >= min(c_xy, c_yz)``.
    """
    from .terraced import check_gh_triangle

    c = as_symmatrix(c)
    if check_gh_triangle(c, include_diagonal=False, limit=1):
        raise PreconditionViolated("matrix violates the off-diagonal Gomory-Hu triangle inequality")
    a, n = c.array, c.n
    m = row_maxima(c)
    bound = RESIDUAL_REL_TOL * max(1.0, c.norm_inf())
    pairs = []
    for x in range(n):
        for y in range(x + 1, n):
            if not elementary_pair_condition(c, x, y, m):
                continue
            pair = ElementaryEigenpair(x, y, float(a[x, x] - a[x, y]))
            e = pair.vector(n)
            if np.abs(a @ e - pair.eigenvalue * e).max() > bound:
                raise NumericalError(f"e_{x} - e_{y} fails the eigenvector residual check")
            pairs.append(pair)
    return pairs


@dataclass(frozen=True)
class MinEigReport:
    lambda_min: float
    M: float
    matches: bool


def min_eig_theorem_check(c) -> MinEigReport:
    """Compare the smallest eigenvalue of a realizable matrix with minus its largest entry."""
    from .terraced import is_realizable

    c = as_symmatrix(c)
    if not is_realizable(c):
        raise NotRealizable("matrix is not an edge-connectivity matrix")
    lam = eigen_sym(c).lambda_min
    big = float(c.array.max()) if c.n else 0.0
    return MinEigReport(lam, big, abs(lam + big) <= c.tol * max(1.0, big))
