import numpy as np
import pytest

from utils.tridiag_eigen import bisect_eigenvalues, inverse_iteration, solve_tridiagonal, sturm_count


def _dense(offdiag):
    n = len(offdiag) + 1
    T = np.zeros((n, n))
    idx = np.arange(n - 1)
    T[idx, idx + 1] = offdiag
    T[idx + 1, idx] = offdiag
    return T


@pytest.fixture
def batch():
    rng = np.random.default_rng(7)
    return rng.uniform(0.05, 3.0, size=(5, 6))


def test_bisection_matches_eigvalsh(batch):
    lam = bisect_eigenvalues(batch)
    assert lam.shape == (5, 7)
    for row, e in zip(lam, batch):
        expected = np.sort(np.linalg.eigvalsh(_dense(e)))[::-1]
        np.testing.assert_allclose(row, expected, atol=1e-10)
    assert np.all(np.diff(lam, axis=1) <= 0)


def test_bisection_single_row():
    lam = bisect_eigenvalues(np.array([1.0]))
    np.testing.assert_allclose(lam, [[1.0, -1.0]], atol=1e-12)


def test_sturm_count_extremes(batch):
    far = np.full((5, 1), 100.0)
    assert np.all(sturm_count(batch, far) == 7)
    assert np.all(sturm_count(batch, -far) == 0)


def test_solve_tridiagonal():
    rng = np.random.default_rng(3)
    n = 6
    dl = rng.normal(size=(4, n - 1))
    du = rng.normal(size=(4, n - 1))
    # small diagonal forces row interchanges
    d = 0.01 * rng.normal(size=(4, n))
    b = rng.normal(size=(4, n))
    x = solve_tridiagonal(dl, d, du, b)
    for i in range(4):
        M = np.diag(d[i]) + np.diag(dl[i], -1) + np.diag(du[i], 1)
        np.testing.assert_allclose(M @ x[i], b[i], atol=1e-9 * max(1.0, np.abs(x[i]).max()))


def test_inverse_iteration(batch):
    lam = bisect_eigenvalues(batch)
    vectors = inverse_iteration(batch, lam)
    assert vectors.shape == (5, 7, 7)
    for e, vals, vecs in zip(batch, lam, vectors):
        T = _dense(e)
        for value, v in zip(vals, vecs):
            assert np.linalg.norm(v) == pytest.approx(1.0)
            assert np.linalg.norm(T @ v - value * v) < 1e-8


@pytest.mark.parametrize("n", [3, 4, 5, 8])
def test_solve_with_every_row_swapped(n):
    # |d| < |e| on every row: each elimination step interchanges rows
    e = np.full((2, n - 1), 1.3)
    d = np.full((2, n), -0.5)
    d[1] = -0.2
    b = np.vstack([np.ones(n), np.arange(1.0, n + 1.0)])
    x = solve_tridiagonal(e, d, e, b)
    for i in range(2):
        M = np.diag(d[i]) + np.diag(e[i], -1) + np.diag(e[i], 1)
        np.testing.assert_allclose(x[i], np.linalg.solve(M, b[i]), rtol=1e-10, atol=1e-12)


def test_solve_leaves_inputs_alone():
    e = np.array([[1.3, 1.3, 1.3]])
    d = np.array([[-0.5, -0.5, -0.5, -0.5]])
    before = (e.copy(), d.copy())
    solve_tridiagonal(e, d, e, np.ones((1, 4)))
    np.testing.assert_array_equal(e, before[0])
    np.testing.assert_array_equal(d, before[1])


def test_inverse_iteration_near_interchanges():
    # eigenvalues of a zero-diagonal matrix with large couplings force pivoting
    offdiag = np.array([[1.3, 0.2, 2.5, 0.7, 1.9, 0.05]])
    lam = bisect_eigenvalues(offdiag)
    vectors = inverse_iteration(offdiag, lam)[0]
    T = _dense(offdiag[0])
    for value, v in zip(lam[0], vectors):
        assert np.linalg.norm(T @ v - value * v) < 1e-8
