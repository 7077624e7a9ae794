"""
Origin-centered ellipse criterion.

C(A) contains the ellipse with foci ±X_k and squared minor half-axis C iff
P_n(C + ρX_k²) vanishes identically in ρ. The top coefficient f_m = Q_n(X_k²)
vanishes because X_k is an eigenvalue, f_{m-1} is linear in C and fixes it,
and f_0..f_{m-2} are the residuals.
"""
from __future__ import annotations

from typing import List, Optional

from loguru import logger

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
from model import systems_n7
from model.kippenhahn import KippenhahnPoly, kippenhahn_poly, substitute_linear
from utils.algebra import mode_of
from utils.linalg import linear_form_coefficients
from utils.polynomial import CVAR, RHO, ZETA, Poly, lift, poly_divrem
from utils.reciprocal import XiVector, spectrum

C_SYMBOL = Poly.variable(CVAR)


def _f_coefficients(P: KippenhahnPoly, X2) -> List[Poly]:
    f = substitute_linear(P, C_SYMBOL, X2)
    return [lift(f.coefficient(j), CVAR) for j in range(P.m + 1)]


def _solve_c(f_top: Poly, k: int):
    slope = f_top.coefficient(1)
    if slope == 0:
        raise RuntimeError(f"Coefficient of C in f_(m-1) vanishes for focus index {k}")
    return -f_top.coefficient(0) / slope


def origin_ellipse_check(xi: XiVector, k: int, tol: Optional[float] = None, approximate: bool = False) -> CriterionReport:
    """
    Decide whether C(A) contains an origin-centered ellipse with foci ±X_k.

    Args:
        xi (XiVector): Input invariants.
        k (int): Focus index, 1 <= k <= m; X_k = 2cos(kπ/(n+1)).
        tol (float, optional): Numeric residual threshold override.
        approximate (bool): Use the relaxed threshold for rounded inputs.

    Returns:
        CriterionReport: C, its coefficients on ξ, and the m-1 residuals.
    """
    m = xi.m
    if not 1 <= k <= m:
        raise ValueError(f"focus index k must lie in 1..{m}, got {k}")
    exact = exact_run(xi, approximate)
    tolerance = None if exact else residual_tolerance(xi, tol, approximate)
    values = working_values(xi, exact)
    X = spectrum(xi.n).focus(k, exact=exact)
    X2 = X * X

    P = kippenhahn_poly(values)
    f = _f_coefficients(P, X2)
    top = f[m].coefficient(0)
    if not vanishes(top, exact, tolerance or 1e-9):
        raise RuntimeError(f"f_m = Q_n(X^2) does not vanish for k = {k}: {top}")
    C = _solve_c(f[m - 1], k)
    residuals = [f[j](C) for j in range(m - 1)]

    def c_of(unit):
        g = _f_coefficients(kippenhahn_poly(unit), X2)[m - 1]
        return -g.coefficient(0) / g.coefficient(1)

    zero = 0 if exact else 0.0
    one = 1 if exact else 1.0
    c_coefficients = linear_form_coefficients(c_of, xi.n - 1, zero, one)

    diagnostics: List[str] = []
    verdict = decide_verdict(residuals, [C], exact, tolerance, diagnostics)
    report = CriterionReport(
        criterion="origin",
        verdict=verdict,
        residuals=residuals,
        parameters={"k": k, "X": X, "X2": X2, "C": C, "C_coefficients": c_coefficients},
        mode=mode_of(values + (X,)) if exact else "real",
        tolerance=tolerance,
        approximate=approximate,
        diagnostics=diagnostics,
    )
    if report.holds:
        report.specs.append(EllipseSpec(0, X, clamp_nonnegative(C, exact), label=f"E{k}"))

    _cross_check_divisibility(report, P, C, X2, exact, tolerance)
    if xi.n == 7:
        _cross_check_n7(report, values, C, X2, exact, tolerance)
    logger.debug("origin k={} C={} verdict={}", k, C, report.verdict.value)
    return report


def _cross_check_divisibility(report, P, C, X2, exact, tolerance) -> None:
    factor = Poly([-lift(Poly([C, X2], RHO), RHO), 1], ZETA)
    _, remainder = poly_divrem(P.poly, factor)
    rem_values = [c for row in remainder.coeffs for c in lift(row, RHO).coeffs]
    divides = all(vanishes(c, exact, tolerance) for c in rem_values)
    residuals_vanish = all(vanishes(r, exact, tolerance) for r in report.residuals)
    report.cross_checks["divisibility"] = divides == residuals_vanish
    if exact and divides != residuals_vanish:
        raise RuntimeError("Divisibility cross-check failed: remainder and residuals disagree")


def _cross_check_n7(report, values, C, X2, exact, tolerance) -> None:
    def zero(v):
        return vanishes(v, exact, tolerance)

    f0 = report.residuals[0]
    f1 = report.residuals[1]
    report.cross_checks["origin_rho0"] = zero(systems_n7.origin_rho0(values, C) - f0)
    report.cross_checks["origin_rho1"] = zero(systems_n7.origin_rho1(values, C, X2) - f1)
    report.cross_checks["origin_rho2"] = zero(systems_n7.origin_rho2(values, C, X2))
    if zero(X2 - 2):
        factored = systems_n7.middle_focus_factored(values)
        report.cross_checks["middle_focus_c"] = zero(systems_n7.middle_focus_c(values) - C)
        report.cross_checks["middle_focus_factored"] = zero(factored[0] - f0) and zero(factored[1] - f1)
        branch_holds = systems_n7.middle_focus_holds(values, zero)
        report.cross_checks["middle_focus_branches"] = branch_holds == all(zero(r) for r in report.residuals)
    if not report.consistent:
        logger.warning("n = 7 closed-form cross-check disagreed: {}", report.cross_checks)


def admissible_origin_specs(xi: XiVector) -> List[EllipseSpec]:
    """Candidate origin-centered conics: foci ±X_k with C from the f_(m-1) solve, C >= 0 only."""
    specs = []
    for k in range(1, xi.m + 1):
        report = origin_ellipse_check(xi, k)
        C = report.parameters["C"]
        if C >= 0:
            specs.append(EllipseSpec(0, report.parameters["X"], C, label=f"E{k}"))
    return specs


class OriginEllipseCriterion(BaseCriterion):
    def __init__(self, tol=None, approximate=False):
        super().__init__(criterion_name="origin")
        self.tol = tol
        self.approximate = approximate

    def check(self, xi, **kwargs):
        tol = self.tol if kwargs.get("tol") is None else kwargs["tol"]
        return [origin_ellipse_check(xi, k, tol=tol, approximate=self.approximate) for k in range(1, xi.m + 1)]
