import pytest

from model.catalog import find_entry
from model.criterion_base import Verdict
from model.factorization import (
    N7_CONFIGS,
    FactorizationCriterion,
    ShiftedPairConfig,
    eliminate_pair,
    factorization_check_n7,
    linear_part,
)
from utils.algebra import COS_3PI_8, COS_PI_8, SQRT2
from utils.reciprocal import XiVector


def test_config_foci():
    central = N7_CONFIGS["central"]
    assert central.X + central.p == COS_PI_8
    assert central.X - central.p == COS_3PI_8
    assert central.X0 == SQRT2
    assert N7_CONFIGS["inner"].X0 == COS_3PI_8
    assert N7_CONFIGS["outer"].X0 == COS_PI_8


@pytest.mark.parametrize(
    "kwargs",
    [
        {"p": 1, "X": 1, "X0": SQRT2},
        {"p": (COS_PI_8 + COS_3PI_8) / 2, "X": (COS_PI_8 - COS_3PI_8) / 2, "X0": SQRT2},
        {"p": (COS_PI_8 - COS_3PI_8) / 2, "X": (COS_PI_8 + COS_3PI_8) / 2, "X0": COS_PI_8},
    ],
)
def test_invalid_configs(kwargs):
    with pytest.raises(ValueError):
        ShiftedPairConfig(**kwargs)


def test_invalid_case():
    with pytest.raises(ValueError):
        N7_CONFIGS["central"].with_case("iii")


@pytest.mark.parametrize(
    "label, C, C0, vanishing", [("central-1", 1, 1, [3]), ("central-2", SQRT2 + 1, SQRT2 + 1, [2])]
)
def test_central_family(label, C, C0, vanishing):
    entry = find_entry(label)
    report = factorization_check_n7(entry.xi, N7_CONFIGS["central"])
    assert report.verdict == Verdict.HOLDS
    assert report.parameters["case"] == "xi2xi3"
    assert report.parameters["vanishing"] == vanishing
    assert report.parameters["C"] == C
    assert report.parameters["C0"] == C0
    assert report.consistent
    assert report.cross_checks["shifted_pair"]
    assert [s.label for s in report.specs] == ["E", "-E", "E0"]
    assert report.specs[2].X == SQRT2


def test_mirrored_entry_uses_second_case():
    entry = find_entry("inner-5")
    report = factorization_check_n7(entry.xi, N7_CONFIGS["inner"])
    assert report.holds
    assert report.parameters["case"] == "xi4xi5"
    assert report.parameters["vanishing"] == [5]


def test_wrong_configuration_fails():
    entry = find_entry("central-1")
    assert not factorization_check_n7(entry.xi, N7_CONFIGS["outer"]).holds


def test_neither_product_vanishes(one_origin):
    report = factorization_check_n7(one_origin, N7_CONFIGS["central"])
    assert report.verdict == Verdict.FAILS
    assert report.parameters["case"] is None
    assert "neither" in report.diagnostics[0]


def test_needs_seven():
    with pytest.raises(ValueError):
        factorization_check_n7(XiVector.from_values((1, 0, 1, 1)), N7_CONFIGS["central"])


def test_linear_part_vanishes_on_family():
    entry = find_entry("central-1")
    rows = linear_part(N7_CONFIGS["central"], "xi2xi3")
    assert rows
    for row in rows:
        assert sum((w * v for w, v in zip(row, entry.xi)), 0) == 0


def test_inner_elimination():
    entry = find_entry("inner-1")
    predicted = eliminate_pair(N7_CONFIGS["inner"], "xi2xi3", 1)
    assert set(predicted) == {4, 5}
    for target, weights in predicted.items():
        assert sum((w * v for w, v in zip(weights, entry.xi)), 0) == entry.xi[target]


def test_elimination_targets():
    with pytest.raises(ValueError):
        eliminate_pair(N7_CONFIGS["inner"], "xi2xi3", 2)


def test_criterion_wrapper(one_origin):
    criterion = FactorizationCriterion(configs=["central"])
    assert criterion.check(XiVector.from_values((1, 1, 1, 1))) == []
    [report] = criterion.check(find_entry("central-1").xi)
    assert report.holds
    assert len(FactorizationCriterion().check(one_origin)) == 3
