"""Dense symmetric matrices with tolerance-aware comparison, plus the text format."""

from __future__ import annotations

import os

import numpy as np

from .exceptions import AsymmetricMatrix, MalformedLine

DEFAULT_TOL = 1e-9


def default_tol() -> float:
    """Tolerance from ``CUTSPECTRA_TOL`` if set, else 1e-9."""
    raw = os.environ.get("CUTSPECTRA_TOL")
    if raw is None:
        return DEFAULT_TOL
    tol = float(raw)
    if not tol > 0:
        raise ValueError(f"CUTSPECTRA_TOL must be positive, got {raw!r}")
    return tol


def slack(tol: float, *values) -> float:
    """Combined absolute/relative slack: ``tol * (1 + max |value|)``."""
    scale = max((abs(float(v)) for v in values), default=0.0)
    return tol * (1.0 + scale)


def close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= slack(tol, a, b)


class SymMatrix:
    """Immutable dense symmetric real matrix.

    The input is validated for symmetry within ``tol`` and then stored
    symmetrized, so ``m[v, w] == m[w, v]`` holds exactly.
    """

    __slots__ = ("_a", "tol")

    def __init__(self, data, tol: float | None = None):
        tol = default_tol() if tol is None else float(tol)
        a = np.array(data, dtype=float)
        if a.ndim == 0 and a.size == 1:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix has non-finite entries")
        diff = np.abs(a - a.T)
        bound = tol * (1.0 + np.maximum(np.abs(a), np.abs(a.T)))
        if np.any(diff > bound):
            v, w = np.argwhere(diff > bound)[0]
            raise AsymmetricMatrix(
                f"entries ({v},{w})={a[v, w]!r} and ({w},{v})={a[w, v]!r} differ"
            )
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        self._a = a
        self.tol = tol

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    def to_numpy(self) -> np.ndarray:
        return self._a.copy()

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._a.copy()
        return self._a.astype(dtype)

    def __getitem__(self, key):
        return self._a[key]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash(self._a.tobytes())

    def __repr__(self):
        return f"SymMatrix(n={self.n}, tol={self.tol:g})\n{self._a}"

    def allclose(self, other, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        b = np.asarray(other, dtype=float)
        if b.shape != self._a.shape:
            return False
        return bool(np.all(np.abs(self._a - b) <= tol * (1.0 + np.maximum(np.abs(self._a), np.abs(b)))))

    def offdiag(self) -> np.ndarray:
        """Off-diagonal entries of the upper triangle, row-major."""
        iu = np.triu_indices(self.n, 1)
        return self._a[iu]

    def norm_inf(self) -> float:
        return float(np.abs(self._a).sum(axis=1).max()) if self.n else 0.0

    def with_diagonal(self, diag) -> "SymMatrix":
        a = self._a.copy()
        np.fill_diagonal(a, np.asarray(diag, dtype=float))
        return SymMatrix(a, self.tol)

    def permuted(self, perm) -> "SymMatrix":
        """Simultaneous row/column permutation: ``result[i, j] = self[perm[i], perm[j]]``."""
        p = np.asarray(perm, dtype=int)
        return SymMatrix(self._a[np.ix_(p, p)], self.tol)


def as_symmatrix(c, tol: float | None = None) -> SymMatrix:
    if isinstance(c, SymMatrix):
        if tol is None or tol == c.tol:
            return c
        return SymMatrix(c.array, tol)
    return SymMatrix(c, tol)


def row_maxima(c: SymMatrix) -> np.ndarray:
    """Largest off-diagonal entry of each row (0 for a 1x1 matrix)."""
    if c.n < 2:
        return np.zeros(c.n)
    a = c.to_numpy()
    np.fill_diagonal(a, -np.inf)
    return a.max(axis=1)


def row_minima(c: SymMatrix) -> np.ndarray:
    """Smallest off-diagonal entry of each row (0 for a 1x1 matrix)."""
    if c.n < 2:
        return np.zeros(c.n)
    a = c.to_numpy()
    np.fill_diagonal(a, np.inf)
    return a.min(axis=1)


def cluster_values(values, tol: float) -> list[list[float]]:
    """Group sorted values into runs whose consecutive gaps are within tolerance."""
    vals = sorted(float(v) for v in values)
    groups: list[list[float]] = []
    for v in vals:
        if groups and close(groups[-1][-1], v, tol):
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def distinct_values(values, tol: float) -> list[float]:
    """Ascending representatives (cluster means) of tolerance-distinct values."""
    return [float(np.mean(g)) for g in cluster_values(values, tol)]


# -- text format ------------------------------------------------------------


def _content_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line


def parse_matrix(text: str, tol: float | None = None) -> SymMatrix:
    """Parse ``n`` followed by ``n`` whitespace-separated rows."""
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedLine("empty matrix file", 1)
    line_no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedLine(f"expected dimension, got {head!r}", line_no) from None
    if n < 1:
        raise MalformedLine(f"dimension must be positive, got {n}", line_no)
    rows = lines[1:]
    if len(rows) != n:
        raise MalformedLine(f"expected {n} rows, found {len(rows)}", rows[-1][0] if rows else line_no)
    data = []
    for line_no, line in rows:
        parts = line.split()
        if len(parts) != n:
            raise MalformedLine(f"expected {n} entries, found {len(parts)}", line_no)
        try:
            data.append([float(p) for p in parts])
        except ValueError:
            raise MalformedLine(f"non-numeric entry in {line!r}", line_no) from None
    return SymMatrix(data, tol)


def format_number(x: float) -> str:
    """17 significant digits, integers printed without a fraction."""
    x = float(x)
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.17g}"


def render_matrix(c) -> str:
    a = np.asarray(c, dtype=float)
    lines = [str(a.shape[0])]
    lines.extend(" ".join(format_number(x) for x in row) for row in a)
    return "\n".join(lines) + "\n"
