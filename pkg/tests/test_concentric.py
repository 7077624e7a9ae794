import pytest

from model import systems_n7
from model.concentric import ConcentricCriterion, concentric_check, concentric_matrix
from model.criterion_base import Verdict
from utils.algebra import QSqrt2
from utils.reciprocal import XiVector, spectrum


def test_three_concentric_ellipses(concentric_xi):
    report = concentric_check(concentric_xi)
    assert report.verdict == Verdict.HOLDS
    assert report.parameters["C"] == [QSqrt2(2, 1), 2, QSqrt2(2, -1)]
    assert len(report.residuals) == 3
    assert report.consistent
    assert [s.label for s in report.specs] == ["E1", "E2", "E3"]
    assert all(s.p == 0 for s in report.specs)


def test_c_coefficients_reproduce_c(concentric_xi):
    report = concentric_check(concentric_xi)
    for row, C in zip(report.parameters["C_coefficients"], report.parameters["C"]):
        assert sum(w * v for w, v in zip(row, concentric_xi)) == C


def test_single_origin_ellipse_is_not_concentric(one_origin):
    report = concentric_check(one_origin)
    assert report.verdict == Verdict.FAILS
    assert not report.specs


def test_zero_xi_degenerate(zero_xi):
    report = concentric_check(zero_xi)
    assert report.verdict == Verdict.DEGENERATE
    assert all(c == 0 for c in report.parameters["C"])
    assert all(s.degenerate for s in report.specs)


def test_numeric_path(concentric_xi):
    report = concentric_check(concentric_xi.to_real())
    assert report.holds
    assert report.mode == "real"
    expected = [2 + 2 ** 0.5, 2.0, 2 - 2 ** 0.5]
    assert report.parameters["C"] == pytest.approx(expected, abs=1e-9)


def test_scaling(concentric_xi):
    report = concentric_check(concentric_xi.scaled(2))
    assert report.parameters["C"] == [QSqrt2(4, 2), 4, QSqrt2(4, -2)]


def test_matrix_matches_closed_form():
    assert concentric_matrix(spectrum(7).squares(True)) == systems_n7.concentric_matrix()


def test_numeric_sizes_degenerate():
    for n in (4, 5, 6, 8):
        report = concentric_check(XiVector.from_values([0] * (n - 1)))
        assert report.verdict == Verdict.DEGENERATE
        m = len(report.parameters["C"])
        assert len(report.residuals) == m * (m - 1) // 2


def test_criterion_wrapper(concentric_xi):
    [report] = ConcentricCriterion().check(concentric_xi)
    assert report.criterion == "concentric"
    assert report.holds
