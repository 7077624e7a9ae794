from typing import Optional, Sequence

import numpy as np

from utils.reciprocal import ModulusPair, ReciprocalMatrix, XiVector


def matrix_from_xi(xi, phases: Optional[Sequence[complex]] = None):
    """
    Build the canonical reciprocal matrix with the given invariants.

    Args:
        xi (XiVector | list): Invariants xi_1..xi_{n-1}, all nonnegative.
        phases (list, optional): Unit complex numbers multiplying a_{j,j+1};
                                 a_{j+1,j} gets the conjugate phase. Defaults to all 1.

    Returns:
        ReciprocalMatrix: Matrix with |a_{j,j+1}| = sqrt(xi_j) + sqrt(xi_j + 1).
    """
    if not isinstance(xi, XiVector):
        xi = XiVector.from_values(xi)
    if not xi.admissible:
        raise ValueError("Cannot build a matrix from a xi vector with negative entries")
    if phases is None:
        phases = np.ones(xi.n - 1, dtype=complex)
    phases = np.asarray(phases, dtype=complex)
    if phases.shape != (xi.n - 1,):
        raise ValueError(f"Expected {xi.n - 1} phases, got {phases.shape}")
    if np.any(np.abs(np.abs(phases) - 1.0) > 1e-12):
        raise ValueError("Phases must have unit modulus")

    moduli = [ModulusPair.from_xi(v) for v in xi]
    upper = np.array([mp.x for mp in moduli]) * phases
    # product stays exactly 1 up to rounding of 1/x
    lower = 1.0 / upper
    return ReciprocalMatrix(xi.n, upper, lower, source_xi=xi)


def xi_from_matrix(matrix):
    """
    Recover the invariants of a reciprocal matrix.

    Args:
        matrix (ReciprocalMatrix | np.ndarray): Reciprocal matrix or its dense form.

    Returns:
        XiVector: Exact source invariants when the matrix was built from them,
                  otherwise (|a_{j,j+1}| - |a_{j+1,j}|)^2 / 4 in floating point.
    """
    if isinstance(matrix, np.ndarray):
        dense = np.asarray(matrix, dtype=complex)
        n = dense.shape[0]
        if dense.shape != (n, n):
            raise ValueError("Dense input must be a square matrix")
        if np.any(np.abs(np.diag(dense)) > 0):
            raise ValueError("Reciprocal matrices have zero main diagonal")
        idx = np.arange(n - 1)
        matrix = ReciprocalMatrix(n, dense[idx, idx + 1], dense[idx + 1, idx])
    if matrix.source_xi is not None:
        return matrix.source_xi
    return XiVector(matrix.n, tuple(mp.xi for mp in matrix.moduli()))
