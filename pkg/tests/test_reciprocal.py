import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from utils.algebra import COS_3PI_8, COS_PI_8, SQRT2
from utils.conversion import matrix_from_xi, xi_from_matrix
from utils.polynomial import ZETA, Poly
from utils.reciprocal import ModulusPair, ReciprocalMatrix, XiVector, char_poly_qn, spectrum


def test_xi_vector_validation():
    xi = XiVector.from_values((1, 4, 1, 1, 2, 3))
    assert xi.n == 7 and xi.m == 3
    assert xi.mode == "rational"
    with pytest.raises(ValueError):
        XiVector.from_values((1, -1, 2))
    with pytest.raises(ValueError):
        XiVector(7, (1, 2, 3))
    with pytest.raises(ValueError):
        XiVector(1, ())
    assert not XiVector.unchecked(3, (1, -1)).admissible


def test_transpose_and_scale():
    xi = XiVector.from_values((1, 4, 1, 1, 2, 3))
    assert tuple(xi.transposed()) == (3, 2, 1, 1, 4, 1)
    assert xi.transposed().transposed() == xi
    assert tuple(xi.scaled(Fraction(1, 2))) == (Fraction(1, 2), 2, Fraction(1, 2), Fraction(1, 2), 1, Fraction(3, 2))
    with pytest.raises(ValueError):
        xi.scaled(-1)
    assert xi.to_real().mode == "real"


def test_spectrum_n7_exact():
    spec = spectrum(7)
    assert spec.positive() == (COS_PI_8, SQRT2, COS_3PI_8)
    assert spec.squares() == (2 + SQRT2, Fraction(2), 2 - SQRT2)
    for k, value in enumerate(spec.values, start=1):
        assert value == pytest.approx(2 * math.cos(k * math.pi / 8), abs=1e-15)
    assert spec.values[3] == 0.0
    assert spec.contains(SQRT2)
    assert spec.contains(-COS_3PI_8)
    assert not spec.contains(Fraction(1))
    assert spec.contains(float(COS_PI_8))
    with pytest.raises(ValueError):
        spec.focus(4)


def test_spectrum_matches_path_matrix():
    for n in range(2, 10):
        path = np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
        expected = np.sort(np.linalg.eigvalsh(path))[::-1]
        np.testing.assert_allclose(spectrum(n).values, expected, atol=1e-12)


def test_char_poly_qn():
    assert char_poly_qn(7) == Poly([-4, 10, -6, 1], ZETA)
    q = char_poly_qn(7)
    for square in spectrum(7).squares():
        assert q(square) == 0
    for n in (4, 5, 6, 8, 9):
        q = char_poly_qn(n)
        for x in spectrum(n).positive():
            assert abs(sum(float(c) * (x * x) ** j for j, c in enumerate(q.coeffs))) < 1e-9


def test_modulus_pair():
    pair = ModulusPair.from_xi(2)
    assert pair.x * pair.y == pytest.approx(1.0)
    assert pair.xi == pytest.approx(2.0)
    with pytest.raises(ValueError):
        ModulusPair.from_xi(-0.5)


def test_reciprocity_enforced():
    with pytest.raises(ValueError):
        ReciprocalMatrix(3, np.array([2.0, 2.0]), np.array([0.5, 0.4]))


@given(st.lists(st.floats(min_value=0.0, max_value=50.0), min_size=1, max_size=8))
def test_xi_round_trip_through_dense_matrix(values):
    xi = XiVector.from_values(values)
    dense = matrix_from_xi(xi).to_dense()
    recovered = xi_from_matrix(dense)
    np.testing.assert_allclose([float(v) for v in recovered], values, rtol=1e-9, atol=1e-9)


def test_matrix_from_xi_keeps_source():
    xi = XiVector.from_values((1, 4, 1, 1, 2, 3))
    matrix = matrix_from_xi(xi, phases=np.exp(1j * np.arange(6)))
    assert xi_from_matrix(matrix) is xi
    assert np.allclose(matrix.upper * matrix.lower, 1.0)
    with pytest.raises(ValueError):
        matrix_from_xi(xi, phases=np.full(6, 2.0))
    with pytest.raises(ValueError):
        matrix_from_xi(XiVector.unchecked(3, (1, -1)))


def test_spectrum_does_not_depend_on_xi():
    rng = np.random.default_rng(7)
    expected = np.array(spectrum(7).values)
    for _ in range(50):
        A = matrix_from_xi(XiVector.from_values(rng.uniform(0.0, 5.0, 6).tolist())).to_dense()
        eigenvalues = np.linalg.eigvals(A)
        assert np.abs(eigenvalues.imag).max() < 1e-8
        np.testing.assert_allclose(np.sort(eigenvalues.real)[::-1], expected, atol=1e-8)
