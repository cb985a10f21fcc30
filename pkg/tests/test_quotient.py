import itertools

import numpy as np
import pytest

from cutspectra.exceptions import NonConstantDiagonalOnClass, PreconditionViolated, TransitivityBroken
from cutspectra.matrix import SymMatrix, row_maxima
from cutspectra.quotient import energy_lower_bound, equitable_quotient, equivalence_classes
from cutspectra.spectra import eigen_sym

from conftest import C_EXAMPLE, random_realizable
from oracles import is_eigvec


def test_example_quotient():
    assert equivalence_classes(C_EXAMPLE) == [(0, 1, 2, 3), (4, 5)]
    r = equitable_quotient(C_EXAMPLE)
    assert np.array_equal(r.Q, [[12, 6], [12, 3]])
    assert round(np.linalg.det(r.Q)) == -36
    assert r.lower_bound == 30 and energy_lower_bound(C_EXAMPLE) == 30
    assert r.tight is False
    assert r.trace_Q == 15
    assert r.energy_C == pytest.approx(r.energy_Q + r.trace_Q, rel=1e-12)
    assert np.allclose(r.Q_sym, [[12, 6 * np.sqrt(8) / 2], [6 * np.sqrt(8) / 2, 3]])
    assert list(r.class_maxima) == [4.0, 3.0]


@pytest.mark.parametrize("n,m", [(2, 1.0), (5, 3.0)])
def test_uniform_single_class(n, m):
    c = m * (np.ones((n, n)) - np.eye(n))
    assert equivalence_classes(c) == [tuple(range(n))]
    r = equitable_quotient(c)
    assert np.allclose(r.Q, [[m * (n - 1)]])
    assert r.energy_C == pytest.approx(2 * (n - 1) * m)
    assert r.tight
    assert energy_lower_bound(c) == pytest.approx(2 * (n - 1) * m)


def test_zero_matrix_bound():
    assert energy_lower_bound(np.zeros((4, 4))) == 0


def test_weighted_path_classes():
    # path 0 -(1)- 1 -(2)- 2 -(3)- 3: cut values are path minima
    c = np.array([[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 3], [1, 2, 3, 0]], dtype=float)
    m = c.max(axis=1, where=~np.eye(4, dtype=bool), initial=-np.inf)
    related = [(x, y) for x, y in itertools.combinations(range(4), 2) if m[x] == m[y] == c[x, y]]
    assert related == [(2, 3)]
    assert equivalence_classes(c) == [(0,), (1,), (2, 3)]
    assert equivalence_classes(c[:3, :3]) == [(0,), (1, 2)]


def test_largest_entry_pair_always_related(rng):
    # an all-singleton partition cannot occur once n >= 2
    for _ in range(100):
        n = int(rng.integers(2, 9))
        c = random_realizable(n, rng)
        x, y = np.unravel_index(np.argmax(c), c.shape)
        classes = equivalence_classes(c)
        assert max(len(k) for k in classes) >= 2
        assert any(x in k and y in k for k in classes)


def test_transitivity_broken_under_tight_tolerance():
    c = np.array([[0, 1, 1 + 3e-9], [1, 0, 1 + 1.5e-9], [1 + 3e-9, 1 + 1.5e-9, 0]])
    with pytest.raises(TransitivityBroken):
        equivalence_classes(SymMatrix(c, 1e-9))
    # a looser tolerance merges everything
    assert equivalence_classes(SymMatrix(c, 1e-6)) == [(0, 1, 2)]


def test_non_constant_diagonal():
    with pytest.raises(NonConstantDiagonalOnClass):
        equitable_quotient(C_EXAMPLE, diag_override=[1, 2, 1, 1, 0, 0])


def test_precondition():
    with pytest.raises(PreconditionViolated):
        equivalence_classes(np.array([[0, 3, 1], [3, 0, 3], [1, 3, 0]], dtype=float))


def test_classes_reject_bad_partition():
    with pytest.raises(ValueError):
        equitable_quotient(C_EXAMPLE, classes=[(0, 1, 2), (4, 5)])


def test_diag_override_general_diagonal():
    r = equitable_quotient(C_EXAMPLE, diag_override=[4, 4, 4, 4, 3, 3])
    assert np.array_equal(r.Q, [[16, 6], [12, 6]])
    full = C_EXAMPLE + np.diag([4, 4, 4, 4, 3, 3])
    assert r.energy_C == pytest.approx(eigen_sym(full).energy)
    # class eigenvalues c_xx - m(X) vanish here
    assert r.energy_C == pytest.approx(r.energy_Q + r.class_energy)


def test_quotient_properties_on_random_realizable(rng):
    for _ in range(250):
        n = int(rng.integers(1, 9))
        c = random_realizable(n, rng, integral=bool(rng.random() < 0.7))
        r = equitable_quotient(c)
        cs = SymMatrix(c)
        m = row_maxima(cs)
        # partition
        assert sorted(v for x in r.classes for v in x) == list(range(n))
        # identity and bound
        assert abs(r.energy_C - (r.energy_Q + r.trace_Q)) <= 1e-7 * max(1.0, r.energy_C)
        assert r.lower_bound <= r.energy_C + 1e-9
        assert r.tight == (abs(r.energy_C - r.lower_bound) <= 1e-7 * max(1.0, r.energy_C))
        assert r.tight == bool(r.eigenvalues_Q[-1] >= -1e-9 * max(1.0, np.abs(r.Q_sym).max()))
        # Q and Q' share eigenvalues
        assert np.allclose(np.sort(np.linalg.eigvals(r.Q).real), np.sort(r.eigenvalues_Q), atol=1e-7)
        # containment in the spectrum of C
        eig_c = eigen_sym(c).eigenvalues
        for lam in r.eigenvalues_Q:
            assert np.abs(eig_c - lam).min() <= 1e-7 * max(1.0, c.max())
        # class eigenvectors
        for cls in r.classes:
            for v in cls[1:]:
                e = np.zeros(n)
                e[cls[0]], e[v] = 1.0, -1.0
                assert is_eigvec(c, e, -m[cls[0]])
        # homogeneity between distinct classes
        for a, b in itertools.permutations(r.classes, 2):
            block = c[np.ix_(a, b)]
            assert np.all(block == block[0, 0])
