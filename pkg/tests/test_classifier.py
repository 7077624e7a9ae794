import json
from fractions import Fraction

import pytest

from model.catalog import find_entry
from model.classifier import (
    ALL_CONCENTRIC,
    NONE,
    ORIGIN_ELLIPSES,
    SHIFTED_PAIR,
    Classification,
    CriterionManager,
)
from model.criterion_base import EllipseSpec
from model.curve import sample_curve
from utils.algebra import SQRT2, QSqrt2
from utils.reciprocal import XiVector

GENERIC = (1, 2, 3, 5, 7, 11)


@pytest.fixture(scope="module")
def manager():
    return CriterionManager()


def test_one_origin(manager, one_origin):
    result = manager.classify(one_origin)
    assert result.category == ORIGIN_ELLIPSES
    [spec] = result.specs
    assert spec.X == SQRT2 and spec.C == 5
    assert result.consistent
    assert not result.degenerate


def test_concentric(manager, concentric_xi):
    result = manager.classify(concentric_xi)
    assert result.category == ALL_CONCENTRIC
    assert len(result.specs) == 3


def test_shifted_pair(manager):
    result = manager.classify(find_entry("central-1").xi)
    assert result.category == SHIFTED_PAIR
    assert [s.label for s in result.specs] == ["E", "-E", "E0"]


def test_generic_vector(manager):
    result = manager.classify(XiVector.from_values(GENERIC))
    assert result.category == NONE
    assert result.specs == []


def test_zero_is_degenerate(manager, zero_xi):
    result = manager.classify(zero_xi)
    assert result.category == ALL_CONCENTRIC
    assert result.degenerate


@pytest.mark.parametrize("values", [(1, 4, 1, 1, 2, 3), (1, 1, 2, 0, 1, 1), GENERIC])
def test_transposition_and_scaling_keep_category(manager, values):
    xi = XiVector.from_values(values)
    category = manager.classify(xi).category
    assert manager.classify(xi.transposed()).category == category
    assert manager.classify(xi.scaled(Fraction(5, 2))).category == category


def test_size_limit(manager):
    with pytest.raises(ValueError):
        manager.classify(XiVector.from_values([1] * 12))


def test_unknown_criterion():
    with pytest.raises(ValueError, match="Unsupported criterion name"):
        CriterionManager([{"name": "hyperbola"}])


def test_custom_criteria(one_origin):
    result = CriterionManager([{"name": "origin", "params": {"tol": 1e-6}}]).classify(one_origin)
    assert list(result.reports) == ["origin"]
    assert result.category == ORIGIN_ELLIPSES


@pytest.mark.parametrize(
    "values, category",
    [((1, 4, 1, 1, 2, 3), ORIGIN_ELLIPSES), ((1, 1, 2, 0, 1, 1), ALL_CONCENTRIC), (GENERIC, NONE)],
)
def test_verification_agrees(manager, values, category):
    result = manager.classify(XiVector.from_values(values))
    assert result.category == category
    summary = manager.verify(result, grid=256)
    assert summary["agrees"]
    assert result.verification is summary


def test_batch_keeps_errors(manager, one_origin):
    results = manager.classify_batch([one_origin, {"xi": XiVector.from_values([1] * 13), "file": "big.txt"}])
    assert results[0]["index"] == 0
    assert results[0]["classification"].category == ORIGIN_ELLIPSES
    assert results[1]["file"] == "big.txt"
    assert "n <= 12" in results[1]["error"]


def test_serialize_scalar():
    scalar = CriterionManager.serialize_scalar
    assert scalar(Fraction(1, 2)) == {"rational": "1/2"}
    assert scalar(3) == {"rational": "3/1"}
    assert scalar(SQRT2) == {"sqrt2": ["0", "1"]}
    assert scalar(0.25) == {"real": 0.25}
    assert scalar(True) is True


def test_serialization_is_json(manager, one_origin, tmp_path):
    results = manager.classify_batch([one_origin])
    payload = manager.serialize_results(results)
    text = json.dumps(payload, sort_keys=True)
    assert json.loads(text)[0]["classification"]["category"] == ORIGIN_ELLIPSES
    origin_reports = payload[0]["classification"]["criteria"]["origin"]
    assert [r["verdict"] for r in origin_reports] == ["fails", "holds", "fails"]

    target = tmp_path / "classify.json"
    manager.save_results(results, target)
    assert json.loads(target.read_text()) == json.loads(text)


def test_all_ones_is_concentric(manager):
    # A = sqrt(1 + rho) times the path matrix, so C_k = X_k^2
    ones = XiVector.from_values((1, 1, 1, 1, 1, 1))
    result = manager.classify(ones)
    assert result.category == ALL_CONCENTRIC
    assert [s.C for s in result.specs] == [QSqrt2(2, 1), 2, QSqrt2(2, -1)]
    assert not any(r.holds for r in result.reports["factorization"])
    assert manager.classify(ones.to_real()).category == ALL_CONCENTRIC
    assert manager.verify(result, grid=256)["agrees"]


@pytest.mark.parametrize("label", ["central-1", "central-2", "inner-1", "outer-1"])
def test_shifted_pair_curves(manager, label):
    result = manager.classify(find_entry(label).xi)
    assert result.category == SHIFTED_PAIR
    summary = manager.verify(result, grid=512)
    assert summary["agrees"]
    assert summary["max_residual"] < 1e-6


def test_verification_rejects_a_wrong_ellipse(manager):
    xi = XiVector.from_values(GENERIC)
    forged = Classification(xi, ORIGIN_ELLIPSES, [EllipseSpec(0, SQRT2, 5, label="E2")], {})
    assert not manager.verify(forged, grid=128)["agrees"]


def test_verification_needs_whole_ellipses(manager, one_origin):
    result = manager.classify(one_origin)
    grid = 256
    samples = sample_curve(one_origin, grid=grid)
    # drop the lower half plane so the ellipse only collects half its samples
    half = [s for s in samples if s.y >= 0.0]
    assert manager.verify(result, grid=grid, samples=samples)["agrees"]
    assert not manager.verify(result, grid=grid, samples=half)["agrees"]


def test_factorization_report_names_the_vanishing_entry(manager):
    result = manager.classify(find_entry("central-1").xi)
    [holding] = [r for r in result.reports["factorization"] if r.holds]
    parameters = CriterionManager.serialize_report(holding)["parameters"]
    assert parameters["case"] == "xi2xi3"
    assert parameters["vanishing"] == [3]
