"""
Gauss-Jordan elimination over the scalar lattice.

Exact modes pivot on the first nonzero entry; real mode pivots on the
largest magnitude.
"""
from __future__ import annotations

from typing import Callable, Dict, List, Sequence

from utils.algebra import as_scalar, is_exact


def _pivot_row(rows: List[List], col: int, exact: bool):
    candidates = range(col, len(rows))
    if exact:
        for r in candidates:
            if rows[r][col] != 0:
                return r
        return None
    best = max(candidates, key=lambda r: abs(float(rows[r][col])), default=None)
    if best is None or float(rows[best][col]) == 0.0:
        return None
    return best


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> List:
    """Solve a square system ``matrix @ x = rhs``.

    Args:
        matrix: Row-major coefficients, any lattice scalars.
        rhs: Right-hand side, same length as ``matrix``.

    Returns:
        The solution vector, in the common mode of the inputs.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve_linear expects a square system")
    aug = [[as_scalar(x) for x in row] + [as_scalar(b)] for row, b in zip(matrix, rhs)]
    exact = all(is_exact(x) for row in aug for x in row)
    for col in range(n):
        piv = _pivot_row(aug, col, exact)
        if piv is None:
            raise ValueError("singular linear system")
        aug[col], aug[piv] = aug[piv], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if exact and factor == 0:
                continue
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def eliminate_linear(rows: Sequence[Sequence], targets: Sequence[int]) -> Dict[int, List]:
    """Express chosen unknowns of a homogeneous system through the remaining ones.

    ``rows`` holds the coefficient vectors of equations sum_j r_j * x_j = 0.
    The result maps each target index t to a coefficient vector w with w[t'] = 0
    for every target t', such that x_t = sum_j w_j * x_j on the solution set.
    """
    targets = list(targets)
    if len(rows) != len(targets):
        raise ValueError("need exactly one equation per eliminated unknown")
    width = len(rows[0])
    free = [j for j in range(width) if j not in targets]
    square = [[row[t] for t in targets] for row in rows]
    result = {t: [as_scalar(0)] * width for t in targets}
    for j in free:
        solution = solve_linear(square, [-as_scalar(row[j]) for row in rows])
        for t, value in zip(targets, solution):
            result[t][j] = value
    return result


def linear_form_coefficients(func: Callable[[List], object], size: int, zero=0, one=1) -> List:
    """Coefficients of a homogeneous linear function, read off at unit vectors."""
    coefficients = []
    for i in range(size):
        unit = [as_scalar(zero)] * size
        unit[i] = as_scalar(one)
        coefficients.append(func(unit))
    return coefficients
