"""
Shifted pairs for n = 7 through the factorization of P_7.

C(A) contains the pair E, -E (foci p ± X, p < X) exactly when

    P_7 = (ζ - C_0 - ρX_0²)(ζ² - 2ζ(C + ρ(p² + X²)) + (C + ρ(X² - p²))²)

with X_0 the remaining positive eigenvalue, and either ξ2ξ3 = 0 (case "xi2xi3",
C = ξ1 + ξ2) or ξ4ξ5 = 0 (case "xi4xi5", C = ξ5 + ξ6). C(A) is then
E ∪ (-E) ∪ E_0 ∪ {0}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from loguru import logger

from model import systems_n7
from model.criterion_base import (
    BaseCriterion,
    CriterionReport,
    EllipseSpec,
    Verdict,
    clamp_nonnegative,
    decide_verdict,
    exact_run,
    residual_tolerance,
    vanishes,
    working_values,
)
from model.kippenhahn import kippenhahn_poly
from model.shifted_pair import shifted_pair_residuals
from utils.algebra import COS_3PI_8, COS_PI_8, SQRT2, as_scalar, is_exact, mode_of
from utils.linalg import eliminate_linear, linear_form_coefficients
from utils.polynomial import RHO, ZETA, Poly, lift
from utils.reciprocal import XiVector, spectrum

CASES = ("xi2xi3", "xi4xi5")
# (ζ power, ρ power) of the coefficients of P_7 - F that are linear in ξ
LINEAR_POSITIONS = ((2, 0), (1, 1), (0, 2))
ALL_POSITIONS = tuple((j, i) for j in range(3) for i in range(4 - j))


@dataclass(frozen=True)
class ShiftedPairConfig:
    """
    Foci p ± X of the right ellipse and X_0 of the coexisting origin ellipse.

    Args:
        p: Center, 0 < p < X.
        X: Half focal distance.
        X0: Positive eigenvalue different from X ± p.
        case: "xi2xi3" or "xi4xi5", the product that vanishes, or None to detect it from ξ.
        name: Short tag used in reports.
    """

    p: object
    X: object
    X0: object
    case: Optional[str] = None
    name: str = ""

    def __post_init__(self) -> None:
        for attr in ("p", "X", "X0"):
            object.__setattr__(self, attr, as_scalar(getattr(self, attr)))
        if self.case is not None and self.case not in CASES:
            raise ValueError(f"case must be one of {CASES} or None, got {self.case!r}")
        if not 0 < float(self.p) < float(self.X):
            raise ValueError(f"Need 0 < p < X, got p={self.p}, X={self.X}")
        spec = spectrum(7)
        for focus in (self.X + self.p, self.X - self.p, self.X0):
            if not spec.contains(focus) or not float(focus) > 0:
                raise ValueError(f"{float(focus):.12g} is not a positive eigenvalue for n = 7")
        for focus in (self.X + self.p, self.X - self.p):
            if abs(float(focus) - float(self.X0)) < 1e-9:
                raise ValueError("X0 must differ from X + p and X - p")

    @classmethod
    def from_foci(cls, right: object, left: object, X0: object, case: Optional[str] = None, name: str = "") -> "ShiftedPairConfig":
        """Build from X + p and X - p."""
        right, left = as_scalar(right), as_scalar(left)
        return cls((right - left) / 2, (right + left) / 2, X0, case=case, name=name)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for v in (self.p, self.X, self.X0))

    def with_case(self, case: Optional[str]) -> "ShiftedPairConfig":
        return ShiftedPairConfig(self.p, self.X, self.X0, case=case, name=self.name)

    def as_floats(self):
        return float(self.p), float(self.X), float(self.X0)


N7_CONFIGS: Dict[str, ShiftedPairConfig] = {
    "central": ShiftedPairConfig.from_foci(COS_PI_8, COS_3PI_8, SQRT2, name="central"),
    "inner": ShiftedPairConfig.from_foci(COS_PI_8, SQRT2, COS_3PI_8, name="inner"),
    "outer": ShiftedPairConfig.from_foci(SQRT2, COS_3PI_8, COS_PI_8, name="outer"),
}


def factored_form(config: ShiftedPairConfig, C, C0, exact: bool = True) -> Poly:
    p, X, X0 = (config.p, config.X, config.X0) if exact else config.as_floats()
    origin = Poly([-Poly([C0, X0 * X0], RHO), 1], ZETA)
    b = Poly([C, p * p + X * X], RHO)
    c = Poly([C, X * X - p * p], RHO)
    pair = Poly([c * c, -2 * b, 1], ZETA)
    return origin * pair


def _case_values(values: Sequence, case: str):
    if case == "xi2xi3":
        return systems_n7.shifted_c_values(values, "xi2xi3"), systems_n7.tangent_quadratic(values)
    return systems_n7.shifted_c_values(values, "xi4xi5"), systems_n7.tangent_quadratic_mirrored(values)


def _case_product(values: Sequence, case: str):
    return values[1] * values[2] if case == "xi2xi3" else values[3] * values[4]


def shifted_pair_system_n7(config: ShiftedPairConfig, case: str, exact: bool = True) -> Callable[[Sequence], List]:
    """
    Coefficient-matching system of P_7 against the factored form.

    Returns:
        callable: Maps a ξ 6-tuple to the coefficients of P_7 - F at
                  ALL_POSITIONS, with C, C_0 taken from the case formulas.
    """
    if case not in CASES:
        raise ValueError(f"Unknown factorization case: {case!r}")

    def system(values: Sequence) -> List:
        (C, C0), _ = _case_values(values, case)
        difference = kippenhahn_poly(values).poly - factored_form(config, C, C0, exact)
        return [lift(difference.coefficient(j), RHO).coefficient(i) for j, i in ALL_POSITIONS]

    return system


def linear_part(config: ShiftedPairConfig, case: str, zero_index: Optional[int] = None) -> List[List]:
    """
    Linear equations of the coefficient-matching system, as rows over ξ1..ξ6.

    Args:
        zero_index (int, optional): 0-based index of a ξ fixed to 0; its column is cleared.

    Returns:
        list: Nonzero coefficient rows.
    """
    exact = config.is_exact
    zero, one = (0, 1) if exact else (0.0, 1.0)
    system = shifted_pair_system_n7(config, case, exact)
    rows = []
    for position in LINEAR_POSITIONS:
        index = ALL_POSITIONS.index(position)
        row = linear_form_coefficients(lambda unit: system(unit)[index], 6, zero, one)
        if zero_index is not None:
            row[zero_index] = as_scalar(zero)
        if any(not vanishes(v, exact, 1e-12) for v in row):
            rows.append(row)
    return rows


# ξ2 = 0 solves for ξ5, ξ6; ξ5 = 0 mirrors it
ELIMINATION_TARGETS = {("xi2xi3", 1): (4, 5), ("xi4xi5", 4): (1, 0)}


def eliminate_pair(config: ShiftedPairConfig, case: str, zero_index: int) -> Dict[int, List]:
    """Express two ξ entries through the rest on the linear part (the xi56 elimination)."""
    targets = ELIMINATION_TARGETS.get((case, zero_index))
    if targets is None:
        raise ValueError(f"No linear elimination for case {case!r} with ξ{zero_index + 1} = 0")
    rows = linear_part(config, case, zero_index)
    return eliminate_linear(rows, targets)


def _check_case(xi, values, config, case, exact, tolerance, approximate) -> CriterionReport:
    (C, C0), quadratic = _case_values(values, case)
    p, X, X0 = (config.p, config.X, config.X0) if exact else config.as_floats()
    residuals = shifted_pair_system_n7(config, case, exact)(values) + [quadratic]
    diagnostics: List[str] = []
    if not vanishes(_case_product(values, case), exact, tolerance):
        diagnostics.append("ξ2ξ3 does not vanish" if case == "xi2xi3" else "ξ4ξ5 does not vanish")
        verdict = Verdict.FAILS
    else:
        verdict = decide_verdict(residuals, [C, C0], exact, tolerance, diagnostics)
    indices = (2, 3) if case == "xi2xi3" else (4, 5)
    vanishing = [k for k in indices if vanishes(values[k - 1], exact, tolerance)]
    report = CriterionReport(
        criterion="factorization",
        verdict=verdict,
        residuals=residuals,
        parameters={"p": p, "X": X, "X0": X0, "C": C, "C0": C0, "case": case, "vanishing": vanishing, "config": config.name},
        mode=mode_of(values + (p, X, X0)) if exact else "real",
        tolerance=tolerance,
        approximate=approximate,
        diagnostics=diagnostics,
    )
    if report.holds:
        right = EllipseSpec(p, X, clamp_nonnegative(C, exact), label="E")
        report.specs.extend([right, right.mirrored(), EllipseSpec(0, X0, clamp_nonnegative(C0, exact), label="E0")])
    return report


def factorization_check_n7(
    xi: XiVector,
    config: ShiftedPairConfig,
    tol: Optional[float] = None,
    approximate: bool = False,
) -> CriterionReport:
    """
    Check the factorization of P_7 for a shifted-pair configuration.

    Args:
        xi (XiVector): Invariants of a 7x7 matrix.
        config (ShiftedPairConfig): Foci; when config.case is None every case
                                    whose ξ product vanishes is tried.
        tol (float, optional): Numeric residual threshold override.
        approximate (bool): Use the relaxed threshold for rounded inputs.

    Returns:
        CriterionReport: C, C_0, the residuals and on success the specs E, -E, E_0.
    """
    if xi.n != 7:
        raise ValueError(f"factorization_check_n7 needs n = 7, got n = {xi.n}")
    exact = exact_run(xi, approximate) and config.is_exact
    tolerance = None if exact else residual_tolerance(xi, tol, approximate)
    values = working_values(xi, exact)

    if config.case is not None:
        cases = [config.case]
    else:
        cases = [c for c in CASES if vanishes(_case_product(values, c), exact, tolerance)]
    if not cases:
        return CriterionReport(
            criterion="factorization",
            verdict=Verdict.FAILS,
            residuals=[_case_product(values, c) for c in CASES],
            parameters={"p": config.p, "X": config.X, "X0": config.X0, "case": None, "config": config.name},
            mode=mode_of(values) if exact else "real",
            tolerance=tolerance,
            approximate=approximate,
            diagnostics=["neither ξ2ξ3 nor ξ4ξ5 vanishes"],
        )

    reports = [_check_case(xi, values, config, case, exact, tolerance, approximate) for case in cases]
    report = next((r for r in reports if r.holds), reports[0])
    _cross_check(report, xi, values, config, exact, tolerance, approximate)
    logger.debug("factorization {} case={} verdict={}", config.name, report.parameters["case"], report.verdict.value)
    return report


def _cross_check(report, xi, values, config, exact, tolerance, approximate) -> None:
    def is_zero(v):
        return vanishes(v, exact, tolerance)

    case = report.parameters["case"]
    holds = all(is_zero(r) for r in report.residuals)
    if report.holds:
        pair = shifted_pair_residuals(xi, config.p, config.X, tol=report.tolerance, approximate=approximate)
        report.cross_checks["shifted_pair"] = pair.holds and is_zero(pair.parameters["C"] - report.parameters["C"])

    for zero_index in (1, 4):
        if (case, zero_index) in ELIMINATION_TARGETS and is_zero(values[zero_index]) and holds:
            predicted = eliminate_pair(config, case, zero_index)
            report.cross_checks["linear_elimination"] = all(
                is_zero(sum((w * v for w, v in zip(weights, values)), 0) - values[target])
                for target, weights in predicted.items()
            )

    if case == "xi2xi3" and config.name == "central":
        report.cross_checks["central_focus_system"] = all(is_zero(e) for e in systems_n7.central_focus_system(values)) == holds
        if is_zero(values[1]):
            report.cross_checks["reduced_xi2"] = all(is_zero(e) for e in systems_n7.central_focus_reduced_xi2(values)) == holds
        if is_zero(values[2]):
            report.cross_checks["reduced_xi3"] = all(is_zero(e) for e in systems_n7.central_focus_reduced_xi3(values)) == holds
    if case == "xi2xi3" and config.name == "inner" and is_zero(values[1]) and holds:
        x5, x6 = systems_n7.inner_focus_elimination(values[0], values[2], values[3])
        report.cross_checks["inner_focus_elimination"] = is_zero(x5 - values[4]) and is_zero(x6 - values[5])
    if not report.consistent:
        logger.warning("factorization cross-check disagreed: {}", report.cross_checks)


class FactorizationCriterion(BaseCriterion):
    def __init__(self, tol=None, approximate=False, configs=None):
        super().__init__(criterion_name="factorization", required_size=7)
        self.tol = tol
        self.approximate = approximate
        self.configs = [N7_CONFIGS[name] for name in configs] if configs else list(N7_CONFIGS.values())

    def check(self, xi, **kwargs):
        tol = self.tol if kwargs.get("tol") is None else kwargs["tol"]
        if not self.supports(xi):
            return []
        return [factorization_check_n7(xi, config, tol=tol, approximate=self.approximate) for config in self.configs]
