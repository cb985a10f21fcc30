import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cutspectra.connmat import degree_diag, edge_connectivity_matrix, vertex_connectivity_matrix
from cutspectra.enumeration import enumerate_nonisomorphic_connected_graphs
from cutspectra.exceptions import NoConvergence, NotRealizable, PreconditionViolated
from cutspectra.matrix import SymMatrix, row_maxima
from cutspectra.spectra import (
    eigen_sym,
    elementary_eigenpairs,
    energy,
    is_psd,
    jacobi,
    min_eig_theorem_check,
    spread,
)
from cutspectra.terraced import check_gh_triangle

from conftest import C_EXAMPLE, P_PLUS_D_EXAMPLE, random_realizable
from oracles import is_eigvec

EXAMPLE_EIGS = sorted([(15 + 3 * math.sqrt(41)) / 2, -3, -4, -4, -4, (15 - 3 * math.sqrt(41)) / 2], reverse=True)


def uniform(n, m):
    return m * (np.ones((n, n)) - np.eye(n))


def _check_spectrum(a, spec):
    n = a.shape[0]
    scale = max(1.0, np.abs(a).sum(axis=1).max())
    assert np.all(np.diff(spec.eigenvalues) <= 0)
    assert abs(spec.eigenvalues.sum() - np.trace(a)) <= n * 1e-9 * scale
    assert spec.residual <= 1e-8 * scale
    v = spec.eigenvectors
    assert np.abs(v.T @ v - np.eye(n)).max() <= 1e-9
    assert np.abs(a @ v - v * spec.eigenvalues).max() <= 1e-8 * scale


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 12).flatmap(
        lambda n: arrays(np.float64, (n, n), elements=st.floats(-50, 50, allow_nan=False, allow_subnormal=False))
    )
)
def test_jacobi_matches_numpy(a):
    a = (a + a.T) / 2
    spec = eigen_sym(a)
    _check_spectrum(a, spec)
    ref = np.sort(np.linalg.eigvalsh(a))[::-1]
    assert np.allclose(spec.eigenvalues, ref, atol=1e-9 * max(1.0, np.abs(a).max()) * a.shape[0])


def test_larger_random_matrices(rng):
    for n in (20, 40, 60):
        a = rng.normal(size=(n, n))
        a = a + a.T
        spec = eigen_sym(a)
        _check_spectrum(a, spec)
        assert np.allclose(spec.eigenvalues, np.linalg.eigvalsh(a)[::-1], atol=1e-9 * n)


def test_example_spectrum():
    spec = eigen_sym(C_EXAMPLE)
    assert np.allclose(spec.eigenvalues, EXAMPLE_EIGS, atol=1e-10)
    assert energy(C_EXAMPLE) == pytest.approx(15 + 3 * math.sqrt(41), rel=1e-12)
    assert spread(C_EXAMPLE) == pytest.approx((15 + 3 * math.sqrt(41)) / 2 + 4, rel=1e-12)


@pytest.mark.parametrize("n,m", [(2, 1.0), (4, 3.0), (7, 0.5)])
def test_uniform_matrix(n, m):
    spec = eigen_sym(uniform(n, m))
    assert np.allclose(spec.eigenvalues, [(n - 1) * m] + [-m] * (n - 1), atol=1e-12)
    assert spec.energy == pytest.approx(2 * (n - 1) * m)


def test_trivial_spectra():
    assert np.array_equal(eigen_sym(np.diag([2.0, -1.0])).eigenvalues, [2.0, -1.0])
    assert energy(np.zeros((3, 3))) == 0
    assert spread(uniform(4, 3)) == pytest.approx(12)
    assert spread(np.eye(2)) == 0
    assert eigen_sym(np.diag([5.0])).eigenvalues.tolist() == [5.0]


def test_sweep_cap():
    a = np.array([[1.0, 2.0], [2.0, -3.0]])
    with pytest.raises(NoConvergence):
        jacobi(a, max_sweeps=0)


def test_is_psd_examples():
    ok, witness = is_psd(P_PLUS_D_EXAMPLE)
    assert not ok
    assert witness @ P_PLUS_D_EXAMPLE @ witness < 0
    assert is_psd(C_EXAMPLE + np.diag([4, 4, 4, 4, 3, 3])) == (True, None)
    ok, witness = is_psd(-np.eye(3))
    assert not ok and np.isclose(np.linalg.norm(witness), 1.0)


def test_elementary_pairs_example():
    pairs = elementary_eigenpairs(C_EXAMPLE)
    got = {(p.x, p.y): p.eigenvalue for p in pairs}
    expected = {pair: -4.0 for pair in itertools.combinations(range(4), 2)}
    expected[(4, 5)] = -3.0
    assert got == expected


def test_elementary_pairs_uniform():
    pairs = elementary_eigenpairs(uniform(5, 2.0))
    assert len(pairs) == 10 and all(p.eigenvalue == -2.0 for p in pairs)


def _brute_empty_case():
    for vals in itertools.product(range(4), repeat=6):
        d0, d1, d2, a01, a02, a12 = vals
        c = np.array([[d0, a01, a02], [a01, d1, a12], [a02, a12, d2]], dtype=float)
        if check_gh_triangle(c) or min(d0, d1, d2) < max(a01, a02, a12):
            continue
        if len({d0, d1, d2}) == 3 and not elementary_eigenpairs(c):
            return c
    return None


def test_elementary_pairs_empty():
    c = _brute_empty_case()
    assert c is not None
    assert elementary_eigenpairs(np.array([[5, 2, 1], [2, 4, 1], [1, 1, 3]], dtype=float)) == []


def test_elementary_pairs_precondition():
    with pytest.raises(PreconditionViolated):
        elementary_eigenpairs(np.array([[0, 3, 1], [3, 0, 3], [1, 3, 0]], dtype=float))


def test_elementary_biconditional(rng):
    checked = 0
    for _ in range(300):
        n = int(rng.integers(2, 7))
        c = random_realizable(n, rng, integral=True)
        diag = rng.choice([0.0, 2.0], size=n) if rng.random() < 0.5 else np.zeros(n)
        c = c + np.diag(diag)
        pairs = {(p.x, p.y) for p in elementary_eigenpairs(c)}
        for x, y in itertools.combinations(range(n), 2):
            e = np.zeros(n)
            e[x], e[y] = 1.0, -1.0
            rayleigh = (e @ c @ e) / 2
            assert ((x, y) in pairs) == is_eigvec(c, e, rayleigh)
        checked += 1
    assert checked == 300


def test_min_eig_and_psd_shift_on_random_realizable(rng):
    for _ in range(200):
        n = int(rng.integers(1, 9))
        c = random_realizable(n, rng)
        report = min_eig_theorem_check(c)
        assert report.matches
        assert report.M == c.max()
        shifted = c + np.diag(row_maxima(SymMatrix(c)))
        assert is_psd(shifted)[0]
        big = c.max()
        e = energy(c)
        assert e <= 2 * (n - 1) * big + 1e-9 * max(1.0, big)
        equal = abs(e - 2 * (n - 1) * big) <= 1e-7 * max(1.0, big)
        is_uniform = np.all(np.abs(c[~np.eye(n, dtype=bool)] - big) <= 1e-9)
        assert equal == bool(is_uniform)


def test_min_eig_examples():
    r = min_eig_theorem_check(C_EXAMPLE)
    assert r.matches and r.M == 4 and r.lambda_min == pytest.approx(-4)
    z = min_eig_theorem_check(np.zeros((3, 3)))
    assert z.matches and z.lambda_min == pytest.approx(0, abs=1e-12)
    with pytest.raises(NotRealizable):
        min_eig_theorem_check(np.array([[0, 3, 1], [3, 0, 3], [1, 3, 0]], dtype=float))


def test_perron_bounds_on_unweighted_graphs():
    for n in range(2, 8):
        for g in enumerate_nonisomorphic_connected_graphs(n):
            lam = eigen_sym(edge_connectivity_matrix(g), vectors=False).lambda_max
            assert n - 1 - 1e-9 <= lam <= (n - 1) ** 2 + 1e-9


def test_example_p_plus_d_minor(ex_graph):
    a = vertex_connectivity_matrix(ex_graph).array + degree_diag(ex_graph).array
    idx = [0, 2, 3]
    assert round(np.linalg.det(a[np.ix_(idx, idx)])) == -4
