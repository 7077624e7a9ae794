from fractions import Fraction

import numpy as np
import pytest

from utils.algebra import SQRT2
from utils.linalg import eliminate_linear, linear_form_coefficients, solve_linear


def test_solve_rational():
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    x = solve_linear([[2, 1, 0], [0, 3, 1], [1, 0, 4]], [1, 2, 3])
    assert all(isinstance(v, Fraction) for v in x)
    assert 2 * x[0] + x[1] == 1 and 3 * x[1] + x[2] == 2 and x[0] + 4 * x[2] == 3


def test_solve_needs_row_swap():
    assert solve_linear([[0, 1], [1, 0]], [5, 7]) == [7, 5]


def test_solve_sqrt2():
    matrix = [[1, 1], [SQRT2, -SQRT2]]
    x = solve_linear(matrix, [2, 0])
    assert x == [1, 1]
    x = solve_linear([[SQRT2, 1], [1, SQRT2]], [1 + SQRT2, 1 + SQRT2])
    assert x == [1, 1]


def test_solve_float_matches_numpy():
    rng = np.random.default_rng(7)
    matrix = rng.normal(size=(5, 5))
    rhs = rng.normal(size=5)
    x = solve_linear(matrix.tolist(), rhs.tolist())
    np.testing.assert_allclose(x, np.linalg.solve(matrix, rhs), rtol=1e-10, atol=1e-12)


def test_singular():
    with pytest.raises(ValueError):
        solve_linear([[1, 2], [2, 4]], [1, 2])
    with pytest.raises(ValueError):
        solve_linear([[1, 2]], [1])


def test_eliminate_linear():
    rows = [[1, 1, 1], [1, -1, 0]]
    result = eliminate_linear(rows, (0, 1))
    assert result[0] == [0, 0, Fraction(-1, 2)]
    assert result[1] == [0, 0, Fraction(-1, 2)]
    with pytest.raises(ValueError):
        eliminate_linear(rows, (0,))


def test_linear_form_coefficients():
    assert linear_form_coefficients(lambda u: 2 * u[0] - 3 * u[2], 3) == [2, 0, -3]
    values = linear_form_coefficients(lambda u: SQRT2 * u[1], 2, 0.0, 1.0)
    assert values[0] == 0.0
    assert values[1] == pytest.approx(float(SQRT2))
