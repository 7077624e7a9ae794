import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from utils.algebra import (
    COS_3PI_8,
    COS_PI_8,
    SQRT2,
    QCosPi8,
    QSqrt2,
    as_scalar,
    exact_sqrt,
    format_scalar,
    is_exact,
    mode_of,
    promote,
    sqrt_scalar,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)
qsqrt2 = st.builds(QSqrt2, rationals, rationals)
qcospi8 = st.builds(QCosPi8, qsqrt2, qsqrt2)


def test_constants():
    assert COS_PI_8 * COS_PI_8 == 2 + SQRT2
    assert COS_3PI_8 * COS_3PI_8 == 2 - SQRT2
    assert COS_PI_8 * COS_3PI_8 == SQRT2
    assert float(COS_PI_8) == pytest.approx(2 * math.cos(math.pi / 8))
    assert float(COS_3PI_8) == pytest.approx(2 * math.cos(3 * math.pi / 8))
    assert float(SQRT2) == pytest.approx(math.sqrt(2))


def test_unit_and_inverse():
    assert (1 + SQRT2) * (SQRT2 - 1) == 1
    assert (1 + SQRT2).inv() == SQRT2 - 1
    assert 1 / (SQRT2 - 1) == SQRT2 + 1
    with pytest.raises(ZeroDivisionError):
        QSqrt2(0, 0).inv()
    with pytest.raises(ZeroDivisionError):
        QCosPi8(0, 0).inv()


@given(qsqrt2)
def test_qsqrt2_inverse(x):
    assume(bool(x))
    assert x * x.inv() == 1


@given(qcospi8)
def test_qcospi8_inverse(x):
    assume(bool(x))
    assert x * x.inv() == 1


@given(qsqrt2, qsqrt2, qsqrt2)
def test_qsqrt2_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(qcospi8, qcospi8)
def test_qcospi8_float_agrees(a, b):
    assert float(a * b) == pytest.approx(float(a) * float(b), rel=1e-9, abs=1e-9)
    assert float(a - b) == pytest.approx(float(a) - float(b), rel=1e-9, abs=1e-9)


@given(qcospi8)
def test_sign_matches_float(x):
    assume(abs(float(x)) > 1e-6)
    assert x.sign() == (1 if float(x) > 0 else -1)


def test_ordering():
    assert SQRT2 < Fraction(3, 2)
    assert COS_3PI_8 < 1
    assert COS_3PI_8.sign() == 1
    assert -COS_PI_8 < COS_3PI_8
    assert sorted([COS_PI_8, Fraction(0), SQRT2, COS_3PI_8]) == [0, COS_3PI_8, SQRT2, COS_PI_8]


def test_promotion():
    assert isinstance(Fraction(1, 2) + SQRT2, QSqrt2)
    assert isinstance(SQRT2 + COS_PI_8, QCosPi8)
    assert isinstance(SQRT2 + 0.5, float)
    assert isinstance(COS_PI_8 * 2.0, float)
    assert promote(Fraction(3), 2) == QCosPi8(3, 0)
    assert promote(SQRT2, 0) == SQRT2


def test_equality_across_types():
    assert QSqrt2(3, 0) == Fraction(3)
    assert QCosPi8(QSqrt2(3, 0), 0) == 3
    assert hash(QSqrt2(3, 0)) == hash(Fraction(3))
    assert QSqrt2(0, 1) != 1


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(3 - 2 * SQRT2) == SQRT2 - 1
    assert exact_sqrt(2 + SQRT2) == COS_PI_8
    assert exact_sqrt(Fraction(2)) == SQRT2
    assert exact_sqrt(Fraction(3)) is None
    assert exact_sqrt(-1 * SQRT2) is None
    assert exact_sqrt(2.0) is None


def test_sqrt_scalar_falls_back_to_float():
    assert sqrt_scalar(Fraction(5)) == pytest.approx(math.sqrt(5))
    assert sqrt_scalar(Fraction(4)) == 2


def test_modes():
    assert mode_of([Fraction(1), Fraction(2)]) == "rational"
    assert mode_of([Fraction(1), SQRT2]) == "sqrt2"
    assert mode_of([SQRT2, COS_PI_8]) == "cos_pi_8"
    assert mode_of([SQRT2, 1.0]) == "real"
    assert is_exact(COS_PI_8)
    assert not is_exact(0.5)


def test_as_scalar():
    assert as_scalar(3) == Fraction(3)
    assert isinstance(as_scalar(3), Fraction)
    assert isinstance(as_scalar(0.25), float)
    with pytest.raises(TypeError):
        as_scalar(True)
    with pytest.raises(TypeError):
        as_scalar("1")


def test_format_scalar():
    assert format_scalar(0.1) == "0.1"
    assert format_scalar(Fraction(1, 3)) == "1/3"
    assert format_scalar(3 - 2 * SQRT2) == "3-2*sqrt2"
