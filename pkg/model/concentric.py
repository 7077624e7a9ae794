"""
All-concentric criterion.

C(A) consists of m origin-centered ellipses with foci ±X_k exactly when

    P_n(ζ, ρ) = Π_k (ζ - C_k - ρX_k²).

Matching the ρ^{q-1} coefficients of ζ^{m-q} gives the linear system
Z C = b with z_{qk} = e_{q-1}(X_i², i != k); the lower coefficients give
the m(m-1)/2 residual equations.
"""
from __future__ import annotations

import operator
from functools import reduce
from itertools import combinations
from typing import List, Optional, Sequence

from loguru import logger

from model import systems_n7
from model.criterion_base import (
    BaseCriterion,
    CriterionReport,
    EllipseSpec,
    clamp_nonnegative,
    decide_verdict,
    exact_run,
    residual_tolerance,
    vanishes,
    working_values,
)
from model.kippenhahn import KippenhahnPoly, kippenhahn_poly
from utils.algebra import mode_of
from utils.linalg import solve_linear
from utils.polynomial import RHO, ZETA, Poly, lift, product
from utils.reciprocal import XiVector, spectrum


def _elementary_symmetric(values: Sequence, degree: int):
    total = 0
    for subset in combinations(values, degree):
        total = total + reduce(operator.mul, subset, 1)
    return total


def concentric_matrix(squares: Sequence) -> List[List]:
    """Z with z_{qk} = e_{q-1} of the squared foci other than X_k, q, k = 1..m."""
    m = len(squares)
    rows = []
    for q in range(1, m + 1):
        row = []
        for k in range(m):
            others = [s for i, s in enumerate(squares) if i != k]
            row.append(_elementary_symmetric(others, q - 1))
        rows.append(row)
    return rows


def concentric_rhs(P: KippenhahnPoly) -> List:
    m = P.m
    return [(-1) ** q * P.coefficient(m - q).coefficient(q - 1) for q in range(1, m + 1)]


def concentric_product(c_values: Sequence, squares: Sequence) -> Poly:
    """Π_k (ζ - C_k - ρX_k²) as a ζ-polynomial over ρ."""
    factors = [Poly([-Poly([c, s], RHO), 1], ZETA) for c, s in zip(c_values, squares)]
    return product(factors, ZETA)


def concentric_residuals(P: KippenhahnPoly, c_values: Sequence, squares: Sequence) -> List:
    """Coefficients of P_n - Π(ζ - C_k - ρX_k²) at ζ^{m-j} ρ^i, i <= j - 2, j = 2..m."""
    m = P.m
    difference = P.poly - concentric_product(c_values, squares)
    residuals = []
    for j in range(2, m + 1):
        row = lift(difference.coefficient(m - j), RHO)
        residuals.extend(row.coefficient(i) for i in range(j - 1))
    return residuals


def _solve_c_values(values: Sequence, squares: Sequence) -> List:
    return solve_linear(concentric_matrix(squares), concentric_rhs(kippenhahn_poly(values)))


def concentric_check(xi: XiVector, tol: Optional[float] = None, approximate: bool = False) -> CriterionReport:
    """
    Decide whether C(A) is a union of m concentric origin-centered ellipses.

    Args:
        xi (XiVector): Input invariants.
        tol (float, optional): Numeric residual threshold override.
        approximate (bool): Use the relaxed threshold for rounded inputs.

    Returns:
        CriterionReport: C_1..C_m (parameters["C"]) and m(m-1)/2 residuals.
    """
    m = xi.m
    exact = exact_run(xi, approximate)
    tolerance = None if exact else residual_tolerance(xi, tol, approximate)
    values = working_values(xi, exact)
    spec = spectrum(xi.n)
    foci = spec.positive(exact)
    squares = spec.squares(exact)

    P = kippenhahn_poly(values)
    c_values = _solve_c_values(values, squares)
    residuals = concentric_residuals(P, c_values, squares)

    zero = 0 if exact else 0.0
    one = 1 if exact else 1.0
    c_coefficients = []
    for j in range(len(values)):
        unit = [zero] * len(values)
        unit[j] = one
        c_coefficients.append(_solve_c_values(unit, squares))
    # transpose to one row per C_k
    c_coefficients = [list(column) for column in zip(*c_coefficients)]

    diagnostics: List[str] = []
    verdict = decide_verdict(residuals, c_values, exact, tolerance, diagnostics)
    report = CriterionReport(
        criterion="concentric",
        verdict=verdict,
        residuals=residuals,
        parameters={"C": c_values, "X": list(foci), "C_coefficients": c_coefficients},
        mode=mode_of(values + tuple(foci)) if exact else "real",
        tolerance=tolerance,
        approximate=approximate,
        diagnostics=diagnostics,
    )
    if report.holds:
        report.specs.extend(
            EllipseSpec(0, X, clamp_nonnegative(C, exact), label=f"E{k}")
            for k, (X, C) in enumerate(zip(foci, c_values), start=1)
        )

    def is_zero(v):
        return vanishes(v, exact, tolerance)

    if all(is_zero(r) for r in residuals):
        # the C_k are then the roots of P_n(., 0)
        at_zero = P.at_rho(0)
        report.cross_checks["root_consistency"] = all(is_zero(at_zero(c)) for c in c_values)
        report.cross_checks["roots_decreasing"] = all(
            float(a) >= float(b) - (tolerance or 0.0) for a, b in zip(c_values, c_values[1:])
        )
    if xi.n == 7:
        _cross_check_n7(report, values, c_values, squares, is_zero)
    logger.debug("concentric C={} verdict={}", c_values, report.verdict.value)
    return report


def _cross_check_n7(report, values, c_values, squares, is_zero) -> None:
    holds = all(is_zero(r) for r in report.residuals)
    expected_z = systems_n7.concentric_matrix()
    z = concentric_matrix(squares)
    report.cross_checks["matrix"] = all(
        is_zero(a - b) for row, ref in zip(z, expected_z) for a, b in zip(row, ref)
    )
    formulas = systems_n7.concentric_c_values(values)
    report.cross_checks["c_formulas"] = all(is_zero(a - b) for a, b in zip(c_values, formulas))
    system = systems_n7.concentric_system(values, c_values)
    report.cross_checks["coefficient_system"] = all(is_zero(e) for e in system) == holds
    report.cross_checks["reduced_system"] = all(is_zero(e) for e in systems_n7.concentric_reduced(values)) == holds
    report.cross_checks["branches"] = systems_n7.concentric_holds(values, is_zero) == holds
    if not report.consistent:
        logger.warning("n = 7 concentric cross-check disagreed: {}", report.cross_checks)


class ConcentricCriterion(BaseCriterion):
    def __init__(self, tol=None, approximate=False):
        super().__init__(criterion_name="concentric")
        self.tol = tol
        self.approximate = approximate

    def check(self, xi, **kwargs):
        tol = self.tol if kwargs.get("tol") is None else kwargs["tol"]
        return [concentric_check(xi, tol=tol, approximate=self.approximate)]
