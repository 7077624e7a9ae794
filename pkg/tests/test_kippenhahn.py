from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from model.kippenhahn import (
    even_odd_split,
    kippenhahn_poly,
    non_consecutive_sets,
    substitute_linear,
    tridiag_coeffs,
    tridiag_coeffs_enumerated,
)
from utils.conversion import matrix_from_xi
from utils.polynomial import CVAR, RHO, Poly, lift
from utils.reciprocal import XiVector, char_poly_qn

small_ints = st.integers(min_value=0, max_value=9)


def _to_sympy(P, lam, r):
    expr = 0
    for j, row in enumerate(P.poly.coeffs):
        for i, c in enumerate(lift(row, RHO).coeffs):
            expr += c * r ** i * lam ** (2 * j)
    return sympy.expand(expr * lam ** (P.n % 2))


@given(st.lists(small_ints, min_size=1, max_size=9))
def test_recursion_matches_enumeration(eta):
    assert tridiag_coeffs(eta) == tridiag_coeffs_enumerated(eta)


def test_non_consecutive_sets():
    assert len(list(non_consecutive_sets(5, 2))) == 6
    assert list(non_consecutive_sets(3, 2)) == [(0, 2)]
    assert list(non_consecutive_sets(3, 3)) == []


def test_shape(one_origin):
    P = kippenhahn_poly(one_origin)
    assert P.n == 7 and P.m == 3 and P.odd_n
    assert P.poly.degree == 3
    assert P.poly.leading == 1
    # ζ² coefficient is -(Σξ + 6ρ)
    assert P.coefficient(2) == Poly([-12, -6], RHO)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_symbolic_determinant(n):
    xs = sympy.symbols(f"x1:{n}")
    lam, r = sympy.symbols("lam r")
    J = sympy.zeros(n, n)
    for j in range(n - 1):
        J[j, j + 1] = xs[j] + r
        J[j + 1, j] = 1
    expected = sympy.expand((lam * sympy.eye(n) - J).det())
    ours = _to_sympy(kippenhahn_poly(list(xs)), lam, r)
    assert sympy.expand(ours - expected) == 0


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.floats(min_value=0.0, max_value=5.0), min_size=2, max_size=8),
    st.floats(min_value=-3.0, max_value=3.0),
)
def test_roots_are_hermitian_part_eigenvalues(values, theta):
    xi = XiVector.from_values(values)
    A = matrix_from_xi(xi).to_dense()
    H = 0.5 * (np.exp(1j * theta) * A + np.exp(-1j * theta) * A.conj().T)
    eig = np.sort(np.linalg.eigvalsh(H))
    rho = np.cos(theta) ** 2
    P = kippenhahn_poly(xi.to_real())
    coeffs = P.lambda_coefficients(rho)
    # the polynomial is λ^{n mod 2} P_n(λ², ρ); compare it on the eigenvalues
    scale = max(1.0, float(np.max(np.abs(eig)))) ** xi.n
    for lam in eig:
        assert abs(np.polyval(coeffs, lam)) <= 1e-7 * scale


def test_transposition_invariance(one_origin):
    assert kippenhahn_poly(one_origin).poly == kippenhahn_poly(one_origin.transposed()).poly


def test_top_coefficient_is_qn(one_origin):
    P = kippenhahn_poly(one_origin)
    f = substitute_linear(P, Fraction(5), Fraction(3))
    assert f.degree == 3
    assert f.coefficient(3) == char_poly_qn(7)(Fraction(3))
    with pytest.raises(ValueError):
        substitute_linear(P, 1, -1)


def test_even_odd_split_numeric():
    xi = XiVector.from_values((0.5, 1.0, 0.0, 2.0, 0.25, 1.5))
    P = kippenhahn_poly(xi.to_real())
    p, X2, C, rho = 0.7, 1.3, 0.9, 0.35
    split = even_odd_split(P, p, X2, C)
    s = np.sqrt(rho * (C + X2 * rho))
    alpha = C + (p * p + X2) * rho
    plus = P.evaluate(alpha + 2 * p * s, rho)
    minus = P.evaluate(alpha - 2 * p * s, rho)
    assert split.R_e(rho) == pytest.approx(plus + minus, rel=1e-10)
    assert split.R_o(rho) * s == pytest.approx(plus - minus, rel=1e-10)
    assert split.R_e.degree <= P.m
    assert split.R_o.degree <= P.m - 1


def test_middle_focus_c_coefficient():
    xs = sympy.symbols("x1:7")
    P = kippenhahn_poly(list(xs))
    f = substitute_linear(P, Poly.variable(CVAR), 2)
    # ρ² coefficient is linear in C with slope 3X⁴ - 12X² + 10 at X² = 2
    assert lift(f.coefficient(2), CVAR).coefficient(1) == -2


def test_zero_center_split(one_origin):
    P = kippenhahn_poly(one_origin)
    split = even_odd_split(P, 0, Fraction(2), Fraction(5))
    assert split.R_o.is_zero()
    assert split.R_e == 2 * substitute_linear(P, Fraction(5), Fraction(2))


def test_zero_xi_counts_non_consecutive_sets():
    P = kippenhahn_poly([0] * 6)
    for j, expected in ((1, -6), (2, 10), (3, -4)):
        assert P.coefficient(3 - j) == Poly([0] * j + [expected], RHO)


def test_seven_by_seven_expansion():
    x1, x2, x3, x4, x5, x6 = xs = sympy.symbols("x1:7")
    z, r = sympy.symbols("z r")
    expected = (
        z ** 3
        + z ** 2 * (-x1 - x2 - x3 - x4 - x5 - x6 - 6 * r)
        + z * (
            (4 * x1 + 3 * x2 + 3 * x3 + 3 * x4 + 3 * x5 + 4 * x6) * r
            + x1 * x3 + x1 * x4 + x2 * x4 + x1 * x5 + x2 * x5
            + x3 * x5 + x1 * x6 + x2 * x6 + x3 * x6 + x4 * x6
            + 10 * r ** 2
        )
        - 4 * r ** 3
        + (-3 * x1 - x2 - 2 * x3 - 2 * x4 - x5 - 3 * x6) * r ** 2
        + (-2 * x1 * x3 - x5 * x3 - x6 * x3 - x1 * x4 - x2 * x4 - x1 * x5 - 2 * x1 * x6 - x2 * x6 - 2 * x4 * x6) * r
        - x1 * x3 * x5 - x1 * x3 * x6 - x1 * x4 * x6 - x2 * x4 * x6
    )
    P = kippenhahn_poly(list(xs))
    ours = 0
    for j in range(P.m + 1):
        for i, c in enumerate(P.coefficient(j).coeffs):
            ours += c * r ** i * z ** j
    assert sympy.expand(ours - expected) == 0


@given(
    st.lists(st.fractions(min_value=0, max_value=5, max_denominator=7), min_size=1, max_size=7),
    st.sampled_from([2, 3]),
    st.fractions(min_value=0, max_value=1, max_denominator=5),
)
def test_coefficients_are_homogeneous(values, t, rho):
    P = kippenhahn_poly(values)
    scaled = kippenhahn_poly([t * v for v in values])
    for j in range(P.m + 1):
        assert scaled.coefficient(P.m - j)(t * rho) == t ** j * P.coefficient(P.m - j)(rho)


@pytest.mark.parametrize("n", range(2, 10))
def test_top_coefficient_is_qn_symbolically(n):
    xs = sympy.symbols(f"x1:{n}")
    C, X2 = sympy.symbols("C X2")
    m = n // 2
    f = substitute_linear(kippenhahn_poly(list(xs)), C, X2)
    expected = sum((-1) ** j * sympy.binomial(n - j, j) * X2 ** (m - j) for j in range(m + 1))
    assert sympy.expand(f.coefficient(m) - expected) == 0
