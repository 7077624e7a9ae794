"""
Batched eigen-solvers for real symmetric tridiagonal matrices with zero diagonal.

Every routine works on a leading batch axis: ``offdiag`` has shape (B, n - 1)
and holds the nonnegative off-diagonal entries of B matrices of size n.
"""
import numpy as np

BISECTION_STEPS = 64
PIVOT_FLOOR = np.finfo(float).eps


def sturm_count(offdiag, x):
    """
    Number of eigenvalues strictly below x, by the LDL^T pivot signs.

    Args:
        offdiag (np.ndarray): (B, n - 1) off-diagonals.
        x (np.ndarray): (B, K) shifts.

    Returns:
        np.ndarray: (B, K) integer counts.
    """
    offdiag = np.asarray(offdiag, dtype=float)
    x = np.asarray(x, dtype=float)
    scale = np.maximum(np.max(np.abs(offdiag), axis=1, initial=0.0), 1.0)[:, None]
    tiny = PIVOT_FLOOR * scale
    e2 = offdiag ** 2
    q = -x
    q = np.where(q == 0.0, -tiny, q)
    count = (q < 0).astype(int)
    for i in range(offdiag.shape[1]):
        q = -x - e2[:, i:i + 1] / q
        q = np.where(q == 0.0, -tiny, q)
        count += q < 0
    return count


def bisect_eigenvalues(offdiag, steps=BISECTION_STEPS):
    """
    All eigenvalues, in decreasing order.

    Args:
        offdiag (np.ndarray): (B, n - 1) off-diagonals.
        steps (int): Bisection steps per eigenvalue.

    Returns:
        np.ndarray: (B, n) eigenvalues, column 0 the largest.
    """
    offdiag = np.atleast_2d(np.asarray(offdiag, dtype=float))
    batch, n = offdiag.shape[0], offdiag.shape[1] + 1
    # Gershgorin
    padded = np.pad(np.abs(offdiag), ((0, 0), (1, 1)))
    bound = np.max(padded[:, :-1] + padded[:, 1:], axis=1) + 1e-12
    lo = np.repeat(-bound[:, None], n, axis=1)
    hi = np.repeat(bound[:, None], n, axis=1)
    # column j holds the (n - 1 - j)-th smallest eigenvalue
    rank = (n - 1 - np.arange(n))[None, :]
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        below = sturm_count(offdiag, mid) > rank
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def solve_tridiagonal(dl, d, du, b):
    """
    Solve batched tridiagonal systems with partial pivoting (gtsv scheme).

    Args:
        dl (np.ndarray): (B, n - 1) sub-diagonal.
        d (np.ndarray): (B, n) diagonal.
        du (np.ndarray): (B, n - 1) super-diagonal.
        b (np.ndarray): (B, n) right-hand sides.

    Returns:
        np.ndarray: (B, n) solutions. Zero pivots are replaced by eps * scale,
                    which is what inverse iteration needs near an eigenvalue.
    """
    dl = np.array(dl, dtype=float)
    d = np.array(d, dtype=float)
    du = np.array(du, dtype=float)
    b = np.array(b, dtype=float)
    n = d.shape[1]
    if n == 1:
        return b / _floor(d, np.maximum(np.abs(d), 1.0))
    scale = np.maximum.reduce([np.max(np.abs(a), axis=1, initial=0.0) for a in (dl, d, du)])
    scale = np.maximum(scale, 1.0)[:, None]
    du2 = np.zeros_like(d)

    for i in range(n - 1):
        swap = np.abs(d[:, i]) < np.abs(dl[:, i])
        keep = ~swap
        # no interchange
        pivot = _floor(d[:, i:i + 1], scale)[:, 0]
        fact = np.where(keep, dl[:, i] / pivot, 0.0)
        d_next_keep = d[:, i + 1] - fact * du[:, i]
        b_next_keep = b[:, i + 1] - fact * b[:, i]
        # interchange rows i and i + 1
        safe_dl = np.where(swap, dl[:, i], 1.0)
        fact_s = np.where(swap, d[:, i] / safe_dl, 0.0)
        temp = d[:, i + 1].copy()
        d_next_swap = du[:, i] - fact_s * temp
        if i < n - 2:
            du2_swap = du[:, i + 1].copy()
            du[:, i + 1] = np.where(swap, -fact_s * du2_swap, du[:, i + 1])
            du2[:, i] = np.where(swap, du2_swap, 0.0)
        b_i, b_next = b[:, i].copy(), b[:, i + 1].copy()

        d[:, i] = np.where(swap, dl[:, i], d[:, i])
        d[:, i + 1] = np.where(swap, d_next_swap, d_next_keep)
        du[:, i] = np.where(swap, temp, du[:, i])
        b[:, i] = np.where(swap, b_next, b_i)
        b[:, i + 1] = np.where(swap, b_i - fact_s * b_next, b_next_keep)

    d = _floor(d, scale)
    x = np.empty_like(b)
    x[:, n - 1] = b[:, n - 1] / d[:, n - 1]
    x[:, n - 2] = (b[:, n - 2] - du[:, n - 2] * x[:, n - 1]) / d[:, n - 2]
    for i in range(n - 3, -1, -1):
        x[:, i] = (b[:, i] - du[:, i] * x[:, i + 1] - du2[:, i] * x[:, i + 2]) / d[:, i]
    return x


def _floor(values, scale):
    tiny = PIVOT_FLOOR * scale
    return np.where(np.abs(values) < tiny, np.where(values < 0, -tiny, tiny), values)


def inverse_iteration(offdiag, eigenvalues, iterations=3):
    """
    Unit eigenvectors of the zero-diagonal tridiagonal matrices.

    Args:
        offdiag (np.ndarray): (B, n - 1) off-diagonals.
        eigenvalues (np.ndarray): (B, K) eigenvalues to resolve.
        iterations (int): Inverse iteration sweeps.

    Returns:
        np.ndarray: (B, K, n) real eigenvectors.
    """
    offdiag = np.atleast_2d(np.asarray(offdiag, dtype=float))
    eigenvalues = np.atleast_2d(np.asarray(eigenvalues, dtype=float))
    batch, k = eigenvalues.shape
    n = offdiag.shape[1] + 1
    scale = np.maximum(np.max(np.abs(offdiag), axis=1, initial=0.0), 1.0)
    shift = eigenvalues + 4 * PIVOT_FLOOR * scale[:, None]

    e = np.repeat(offdiag, k, axis=0)
    mu = shift.reshape(-1)
    diag = -np.repeat(mu[:, None], n, axis=1)
    # fixed generic start vector keeps the output deterministic
    x = np.tile(1.0 + 0.1 * np.arange(n) / n, (batch * k, 1))
    for _ in range(iterations):
        x = solve_tridiagonal(e, diag, e, x)
        x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x.reshape(batch, k, n)
