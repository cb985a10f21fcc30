"""Row-maximum equivalence classes, equitable quotient matrices, and the energy decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    NonConstantDiagonalOnClass,
    NonEquitableBlock,
    PreconditionViolated,
    TransitivityBroken,
)
from .matrix import SymMatrix, as_symmatrix, close, row_maxima, row_minima
from .spectra import eigen_sym
from .terraced import check_gh_triangle


@dataclass(frozen=True)
class QuotientReport:
    classes: tuple[tuple[int, ...], ...]
    class_extrema: np.ndarray  # m(X_i) for connectivity matrices, r(X_i) for ultrametrics
    Q: np.ndarray
    Q_sym: np.ndarray
    energy_C: float
    energy_Q: float
    trace_Q: float
    lower_bound: float
    tight: bool
    eigenvalues_Q: np.ndarray = field(repr=False)
    class_energy: float = 0.0  # energy carried by the e_x - e_y class eigenvectors

    @property
    def class_maxima(self) -> np.ndarray:
        return self.class_extrema

    def to_dict(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "class_extrema": [float(x) for x in self.class_extrema],
            "Q": self.Q.tolist(),
            "Q_sym": self.Q_sym.tolist(),
            "eigenvalues_Q": [float(x) for x in self.eigenvalues_Q],
            "energy_C": self.energy_C,
            "energy_Q": self.energy_Q,
            "trace_Q": self.trace_Q,
            "lower_bound": self.lower_bound,
            "tight": self.tight,
        }


def _classes_from_extrema(c: SymMatrix, extrema: np.ndarray) -> list[tuple[int, ...]]:
    a, n, tol = c.array, c.n, c.tol

    def related(x, y):
        return close(extrema[x], extrema[y], tol) and close(a[x, y], extrema[x], tol)

    label = list(range(n))
    for x in range(n):
        for y in range(x + 1, n):
            if related(x, y):
                old, new = max(label[x], label[y]), min(label[x], label[y])
                label = [new if lab == old else lab for lab in label]
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(label):
        groups.setdefault(lab, []).append(v)
    classes = sorted(tuple(g) for g in groups.values())
    for cls in classes:
        for i, x in enumerate(cls):
            for y in cls[i + 1 :]:
                if not related(x, y):
                    raise TransitivityBroken(
                        f"vertices {x} and {y} are linked through their class but not related directly; "
                        "the tolerance is too tight for this data"
                    )
    return classes


def equivalence_classes(c) -> list[tuple[int, ...]]:
    """Classes of ``x ~ y  <=>  x == y or m(x) == m(y) == c_xy`` (m = off-diagonal row maximum)."""
    c = as_symmatrix(c)
    if check_gh_triangle(c, include_diagonal=False, limit=1):
        raise PreconditionViolated("matrix violates the off-diagonal Gomory-Hu triangle inequality")
    return _classes_from_extrema(c, row_maxima(c))


def _quotient(c: SymMatrix, classes, extrema: np.ndarray, diag: np.ndarray) -> QuotientReport:
    a, tol = c.array, c.tol
    k = len(classes)
    sizes = np.array([len(x) for x in classes], dtype=float)
    reps = [x[0] for x in classes]
    ext = np.array([extrema[r] for r in reps])
    for cls in classes:
        for v in cls[1:]:
            if not close(diag[v], diag[cls[0]], tol):
                raise NonConstantDiagonalOnClass(
                    f"diagonal entries {diag[cls[0]]!r} and {diag[v]!r} differ within class {list(cls)}"
                )
    full = a.copy()
    np.fill_diagonal(full, diag)
    q = np.zeros((k, k))
    for i, xi in enumerate(classes):
        for j, xj in enumerate(classes):
            block = full[np.ix_(xi, xj)]
            sums = block.sum(axis=1)
            if np.abs(sums - sums[0]).max() > tol * (1.0 + np.abs(sums).max()) * max(1, len(xj)):
                raise NonEquitableBlock(f"block ({i}, {j}) has non-constant row sums {sums}")
            if i == j:
                q[i, i] = diag[reps[i]] + ext[i] * (sizes[i] - 1)
            else:
                q[i, j] = a[reps[i], reps[j]] * sizes[j]
    root = np.sqrt(sizes)
    q_sym = q * root[:, None] / root[None, :]
    q_sym = (q_sym + q_sym.T) / 2.0
    spec_c = eigen_sym(SymMatrix(full, tol))
    spec_q = eigen_sym(SymMatrix(q_sym, tol))
    energy_q = spec_q.energy
    class_energy = float(np.sum((sizes - 1) * np.abs(np.array([diag[r] for r in reps]) - ext)))
    return QuotientReport(
        classes=tuple(tuple(x) for x in classes),
        class_extrema=ext,
        Q=q,
        Q_sym=q_sym,
        energy_C=spec_c.energy,
        energy_Q=energy_q,
        trace_Q=float(np.trace(q)),
        lower_bound=float(2.0 * np.sum((sizes - 1) * ext)),
        tight=bool(spec_q.lambda_min >= -tol * max(1.0, float(np.abs(q_sym).max()))),
        eigenvalues_Q=spec_q.eigenvalues,
        class_energy=class_energy,
    )


def equitable_quotient(c, classes=None, diag_override=None) -> QuotientReport:
    """Quotient ``Q``, its symmetrization ``Q'``, and the energy split ``E(C) = E(Q) + trace(Q)``.

    ``q_ij = c_xy |X_j|`` off the diagonal and ``c_xx + m(x)(|X_i| - 1)`` on it;
    ``Q' = W Q W^-1`` with ``W = diag(sqrt|X_i|)``. ``diag_override`` replaces
    the diagonal of ``c`` (it must be constant on classes).
    """
    c = as_symmatrix(c)
    if classes is None:
        classes = equivalence_classes(c)
    classes = [tuple(sorted(x)) for x in classes]
    covered = sorted(v for x in classes for v in x)
    if covered != list(range(c.n)):
        raise ValueError("classes must partition the vertex set")
    diag = np.diag(c.array).copy() if diag_override is None else np.asarray(diag_override, dtype=float)
    return _quotient(c, classes, row_maxima(c), diag)


def energy_lower_bound(c) -> float:
    """``2 * sum_i (|X_i| - 1) m(X_i)`` over the row-maximum classes."""
    c = as_symmatrix(c)
    classes = equivalence_classes(c)
    m = row_maxima(c)
    return float(2.0 * sum((len(x) - 1) * m[x[0]] for x in classes))


def nearest_point_classes(d) -> list[tuple[int, ...]]:
    """Classes of ``x ~ y  <=>  x == y or r(x) == r(y) == d(x, y)`` (r = nearest-point distance)."""
    d = as_symmatrix(d)
    return _classes_from_extrema(d, row_minima(d))


def nearest_point_quotient(d, classes=None) -> QuotientReport:
    d = as_symmatrix(d)
    if classes is None:
        classes = nearest_point_classes(d)
    return _quotient(d, [tuple(sorted(x)) for x in classes], row_minima(d), np.diag(d.array).copy())
