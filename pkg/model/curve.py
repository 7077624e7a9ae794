"""
Kippenhahn curve of a reciprocal matrix as the envelope of its support lines.

For each direction θ the largest-to-smallest eigenvalues λ_j(θ) of
H(θ) = Re(e^{iθ}A) give the lines Re(e^{iθ}z) = λ_j(θ); the envelope point on
line j is z = e^{-iθ}(λ_j - iλ_j').
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from utils.conversion import matrix_from_xi
from utils.reciprocal import ReciprocalMatrix, XiVector
from utils.tridiag_eigen import bisect_eigenvalues, inverse_iteration

GAP_TOL = 1e-10
FD_STEP = 1e-6
FD_AGREEMENT = 1e-5


@dataclass(frozen=True)
class CurveSample:
    theta: float
    branch: int
    x: float
    y: float
    reliable: bool = True

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


def _as_matrix(source) -> ReciprocalMatrix:
    if isinstance(source, ReciprocalMatrix):
        return source
    return matrix_from_xi(source if isinstance(source, XiVector) else XiVector.from_values(source))


def _hermitian_offdiag(matrix: ReciprocalMatrix, thetas: np.ndarray):
    """h_j(θ) = H(θ)[j, j+1] and g_j(θ) = dH/dθ[j, j+1], shape (B, n - 1)."""
    rot = np.exp(1j * thetas)[:, None]
    a = matrix.upper[None, :]
    b_conj = np.conj(matrix.lower)[None, :]
    h = 0.5 * (rot * a + np.conj(rot) * b_conj)
    g = 0.5j * (rot * a - np.conj(rot) * b_conj)
    return h, g


def _support(matrix: ReciprocalMatrix, thetas: np.ndarray):
    """Eigenvalues, θ-derivatives and spectral gaps, each (B, n), branches in decreasing order."""
    h, g = _hermitian_offdiag(matrix, thetas)
    modulus = np.abs(h)
    phase = np.exp(-1j * np.angle(h))
    lam = bisect_eigenvalues(modulus)
    vectors = inverse_iteration(modulus, lam)
    # v_j = e^{iψ_j} u_j with ψ_{j+1} = ψ_j - arg h_j, so conj(v_j) v_{j+1} = u_j u_{j+1} e^{-i arg h_j}
    weights = np.real(g * phase)[:, None, :]
    dlam = 2.0 * np.sum(vectors[:, :, :-1] * vectors[:, :, 1:] * weights, axis=2)
    gaps = np.full_like(lam, np.inf)
    if lam.shape[1] > 1:
        diff = lam[:, :-1] - lam[:, 1:]
        gaps[:, :-1] = np.minimum(gaps[:, :-1], diff)
        gaps[:, 1:] = np.minimum(gaps[:, 1:], diff)
    return lam, dlam, gaps


def hermitian_part_eigs(source, theta: float):
    """
    Eigenpairs of Re(e^{iθ}A).

    Args:
        source (ReciprocalMatrix | XiVector | list): Matrix or its invariants.
        theta (float): Direction angle.

    Returns:
        tuple: (eigenvalues in decreasing order, complex unit eigenvectors as columns).
    """
    matrix = _as_matrix(source)
    h, _ = _hermitian_offdiag(matrix, np.array([theta], dtype=float))
    modulus = np.abs(h)
    lam = bisect_eigenvalues(modulus)
    vectors = inverse_iteration(modulus, lam)[0]
    psi = np.concatenate([[0.0], -np.cumsum(np.angle(h[0]))])
    unitary = np.exp(1j * psi)
    return lam[0], (vectors * unitary[None, :]).T


def eigenvalue_derivatives(source, thetas) -> np.ndarray:
    """dλ_j/dθ = <Re(i e^{iθ}A) v_j, v_j>, shape (len(thetas), n)."""
    _, dlam, _ = _support(_as_matrix(source), np.asarray(thetas, dtype=float))
    return dlam


def finite_difference_derivatives(source, thetas, step: float = 1e-6) -> np.ndarray:
    """Central differences of the sorted eigenvalues; a check on eigenvalue_derivatives."""
    matrix = _as_matrix(source)
    thetas = np.asarray(thetas, dtype=float)
    forward = bisect_eigenvalues(np.abs(_hermitian_offdiag(matrix, thetas + step)[0]))
    backward = bisect_eigenvalues(np.abs(_hermitian_offdiag(matrix, thetas - step)[0]))
    return (forward - backward) / (2.0 * step)


def default_grid(grid: int) -> np.ndarray:
    """θ_k = -π + (k + 1) 2π / grid, k = 0..grid-1."""
    if grid < 8:
        raise ValueError(f"grid must be at least 8, got {grid}")
    return -np.pi + (np.arange(grid) + 1) * (2.0 * np.pi / grid)


def _sample_chunk(matrix: ReciprocalMatrix, thetas: np.ndarray):
    lam, dlam, gaps = _support(matrix, thetas)
    rot = np.exp(-1j * thetas)[:, None]
    z = rot * (lam - 1j * dlam)
    fd = finite_difference_derivatives(matrix, thetas, step=FD_STEP)
    scale = np.maximum(1.0, np.abs(lam).max(axis=1, keepdims=True))
    agrees = np.abs(dlam - fd) <= FD_AGREEMENT * scale
    return z, gaps >= GAP_TOL, agrees


def sample_curve(source, grid: int = 2048, threads: int = 1, thetas: Optional[np.ndarray] = None) -> List[CurveSample]:
    """
    Sample every branch of the envelope on a uniform θ grid.

    Args:
        source (ReciprocalMatrix | XiVector | list): Matrix or its invariants.
        grid (int): Number of directions.
        threads (int): Worker threads over θ chunks.
        thetas (np.ndarray, optional): Explicit directions instead of the grid.

    Returns:
        list[CurveSample]: Ordered by θ, then branch 1..n. Samples whose
                           eigenvalue gap is below 1e-10, or whose dλ/dθ
                           differs from the central difference at step 1e-6
                           by more than 1e-5, are flagged unreliable.
    """
    matrix = _as_matrix(source)
    thetas = default_grid(grid) if thetas is None else np.asarray(thetas, dtype=float)
    threads = max(1, int(threads))
    chunks = [c for c in np.array_split(thetas, threads) if c.size]
    if threads > 1 and len(chunks) > 1:
        parts = Parallel(n_jobs=threads, prefer="threads")(delayed(_sample_chunk)(matrix, c) for c in chunks)
    else:
        parts = [_sample_chunk(matrix, c) for c in chunks]
    z = np.concatenate([p[0] for p in parts], axis=0)
    separated = np.concatenate([p[1] for p in parts], axis=0)
    smooth = np.concatenate([p[2] for p in parts], axis=0)
    reliable = separated & smooth

    samples = []
    for i, theta in enumerate(thetas):
        for j in range(matrix.n):
            samples.append(CurveSample(float(theta), j + 1, float(z[i, j].real), float(z[i, j].imag), bool(reliable[i, j])))
    close = int(separated.size - np.count_nonzero(separated))
    if close:
        logger.warning("{} of {} curve samples have a spectral gap below {}", close, separated.size, GAP_TOL)
    mismatched = int(np.count_nonzero(separated & ~smooth))
    if mismatched:
        logger.warning("{} of {} curve samples have dλ/dθ off its finite difference by more than {}", mismatched, smooth.size, FD_AGREEMENT)
    return samples


def samples_to_frame(samples: List[CurveSample]) -> pd.DataFrame:
    """Columns theta, branch, x, y, flag (flag = 1 for an unreliable sample)."""
    return pd.DataFrame(
        {
            "theta": [s.theta for s in samples],
            "branch": [s.branch for s in samples],
            "x": [s.x for s in samples],
            "y": [s.y for s in samples],
            "flag": [0 if s.reliable else 1 for s in samples],
        }
    )
