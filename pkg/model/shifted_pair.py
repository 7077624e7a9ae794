"""
Shifted ellipse pairs.

A pair of ellipses centered at ±p with half focal distance X lies in C(A)
when R_e and R_o, the even and odd parts of P_n along the branches
ζ_± = C + (p² + X²)ρ ± 2p sqrt(ρ(C + X²ρ)), vanish identically. Their
leading coefficients vanish because p ± X are eigenvalues. The ρ^{m-1}
coefficient of R_e fixes C; the other 2m - 2 coefficients are residuals.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

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
from model.kippenhahn import EvenOddPair, even_odd_split, kippenhahn_poly
from utils.algebra import as_scalar, is_exact, mode_of
from utils.linalg import linear_form_coefficients
from utils.polynomial import CVAR, Poly, lift
from utils.reciprocal import XiVector, spectrum

C_SYMBOL = Poly.variable(CVAR)
COINCIDENCE_TOL = 1e-12


def admissible_shifted_pairs(n: int) -> List[Tuple]:
    """
    Enumerate (p, X) with p ± X both nonzero eigenvalues.

    Args:
        n (int): Matrix size.

    Returns:
        list: (p, X) pairs, exact when the spectrum of n is cached exactly.
              For eigenvalues a > b > 0 both (p, X) = ((a+b)/2, (a-b)/2)
              and ((a-b)/2, (a+b)/2) appear.
    """
    positive = spectrum(n).positive(exact=True)
    pairs = []
    for i, a in enumerate(positive):
        for b in positive[i + 1:]:
            half_sum = (a + b) / 2
            half_diff = (a - b) / 2
            pairs.append((half_sum, half_diff))
            pairs.append((half_diff, half_sum))
    return pairs


def _validate_pair(n: int, p, X) -> None:
    if not float(p) > 0 or not float(X) > 0:
        raise ValueError(f"p and X must be positive, got p={p}, X={X}")
    if p == X or abs(float(p) - float(X)) <= COINCIDENCE_TOL:
        raise ValueError("p = X puts a focus at 0, which is not admissible for a shifted pair")
    spec = spectrum(n)
    for focus in (p + X, p - X):
        if not spec.contains(focus):
            raise ValueError(f"Focus {float(focus):.12g} is not an eigenvalue of the {n}x{n} path matrix")


def _c_coefficients(poly) -> List:
    return list(lift(poly, CVAR).coeffs)


def _symbolic_split(values, p, X2) -> Tuple[EvenOddPair, int]:
    P = kippenhahn_poly(values)
    return even_odd_split(P, p, X2, C_SYMBOL), P.m


def _coefficient(poly: Poly, k: int) -> Poly:
    return lift(poly.coefficient(k), CVAR)


def shifted_pair_residuals(xi: XiVector, p, X, tol: Optional[float] = None, approximate: bool = False) -> CriterionReport:
    """
    Decide whether C(A) contains the shifted pair centered at ±p with half focal distance X.

    Args:
        xi (XiVector): Input invariants.
        p (Scalar): Center of the right ellipse, p > 0.
        X (Scalar): Half focal distance, X > 0 and X != p.
        tol (float, optional): Numeric residual threshold override.
        approximate (bool): Use the relaxed threshold for rounded inputs.

    Returns:
        CriterionReport: C, which equation fixed it, and the 2m - 2 residuals.
    """
    p, X = as_scalar(p), as_scalar(X)
    _validate_pair(xi.n, p, X)
    exact = exact_run(xi, approximate) and is_exact(p) and is_exact(X)
    tolerance = None if exact else residual_tolerance(xi, tol, approximate)
    values = working_values(xi, exact)
    if not exact:
        p, X = float(p), float(X)
    X2 = X * X

    split, m = _symbolic_split(values, p, X2)
    R_e, R_o = split.R_e, split.R_o

    leading = _c_coefficients(R_e.coefficient(m)) + _c_coefficients(R_o.coefficient(m - 1))
    if not all(vanishes(c, exact, tolerance or 1e-9) for c in leading):
        raise RuntimeError(f"Leading coefficients of R_e/R_o do not vanish for p={p}, X={X}")

    even_rows = [_coefficient(R_e, i) for i in range(m)]
    odd_rows = [_coefficient(R_o, i) for i in range(m - 1)]
    source = "R_e"
    pivot = even_rows[m - 1]
    if pivot.coefficient(1) == 0 and m >= 2:
        source = "R_o"
        pivot = odd_rows[m - 2]
    slope = pivot.coefficient(1)
    if slope == 0:
        raise RuntimeError(f"C cannot be recovered for p={p}, X={X}: both pivot rows are C-free")
    C = -pivot.coefficient(0) / slope

    if source == "R_e":
        equations = even_rows[: m - 1] + odd_rows
    else:
        equations = even_rows + odd_rows[: m - 2]
    residuals = [row(C) for row in equations]

    diagnostics: List[str] = []
    verdict = decide_verdict(residuals, [C], exact, tolerance, diagnostics)
    report = CriterionReport(
        criterion="shifted-pair",
        verdict=verdict,
        residuals=residuals,
        parameters={"p": p, "X": X, "C": C, "pivot": source},
        mode=mode_of(values + (p, X)) if exact else "real",
        tolerance=tolerance,
        approximate=approximate,
        diagnostics=diagnostics,
    )
    if report.holds:
        right = EllipseSpec(p, X, clamp_nonnegative(C, exact), label="E")
        report.specs.extend([right, right.mirrored()])

    if xi.n == 7:
        _cross_check_n7(report, values, split, p, X2, exact, tolerance)
    logger.debug("shifted pair p={} X={} C={} verdict={}", p, X, C, report.verdict.value)
    return report


def _closed_form_equations(split: EvenOddPair, p) -> List[Poly]:
    """The five n = 7 shifted-pair equations, as C-polynomials, read off R_e and R_o."""
    quarter_p = 1 / (4 * p)
    half = as_scalar(1) / 2
    return [
        _coefficient(split.R_e, 2),
        _coefficient(split.R_o, 1) * quarter_p,
        _coefficient(split.R_e, 1) * half,
        _coefficient(split.R_o, 0) * quarter_p,
        _coefficient(split.R_e, 0) * half,
    ]


def _cross_check_n7(report, values, split, p, X2, exact, tolerance) -> None:
    engine = _closed_form_equations(split, p)
    literal = systems_n7.shifted_pair_equations(values, C_SYMBOL, p * p, X2)
    agree = True
    for ours, theirs in zip(engine, literal):
        difference = ours - lift(theirs, CVAR)
        agree = agree and all(vanishes(c, exact, tolerance) for c in difference.coeffs)
    report.cross_checks["closed_form_equations"] = agree
    if not agree:
        logger.warning("n = 7 shifted-pair equations disagree with R_e/R_o for p={}", p)


@dataclass(frozen=True)
class LinearForm:
    """C-free linear condition c16(ξ1+ξ6) + c25(ξ2+ξ5) + c34(ξ3+ξ4) = 0 for n = 7."""

    coefficients: Tuple
    grouped: Tuple
    common_sign: bool

    def __call__(self, xi):
        return sum((c * v for c, v in zip(self.coefficients, xi)), as_scalar(0))


def eliminated_linear_form(n: int, p, X) -> List:
    """
    Eliminate C between the ρ^{m-1} row of R_e and the ρ^{m-2} row of R_o/(4p).

    Both rows are linear in C with ξ-free C coefficients A1, A2, so
    (A2 * row1 - A1 * row2) / 2 is a linear form in ξ.

    Returns:
        list: Its coefficients on ξ_1..ξ_{n-1}.
    """
    p, X = as_scalar(p), as_scalar(X)
    _validate_pair(n, p, X)
    if n < 4:
        raise ValueError("Eliminating C needs m >= 2")
    exact = is_exact(p) and is_exact(X)
    zero, one = (0, 1) if exact else (0.0, 1.0)

    def rows(values):
        split, m = _symbolic_split(values, p, X * X)
        return _coefficient(split.R_e, m - 1), _coefficient(split.R_o, m - 2) * (1 / (4 * p))

    row1, row2 = rows([zero] * (n - 1))
    A1, A2 = row1.coefficient(1), row2.coefficient(1)

    def form(unit):
        first, second = rows(unit)
        return (A2 * first.coefficient(0) - A1 * second.coefficient(0)) / 2

    return linear_form_coefficients(form, n - 1, zero, one)


def linear_form_n7(p, X) -> LinearForm:
    """
    The n = 7 linear form with its symmetric grouping.

    common_sign is True when the three grouped coefficients are all positive
    or all negative, so only ξ = 0 solves the form among nonnegative vectors.
    """
    coefficients = eliminated_linear_form(7, p, X)
    grouped = tuple(coefficients[:3])
    for j in range(3):
        a, b = coefficients[j], coefficients[5 - j]
        if not (a == b if is_exact(a) and is_exact(b) else abs(float(a) - float(b)) <= 1e-9 * max(1.0, abs(float(a)))):
            raise RuntimeError(f"Linear form is not symmetric under ξ_j <-> ξ_(7-j): {a} vs {b}")
    signs = {(float(c) > 0) - (float(c) < 0) for c in grouped}
    common_sign = len(signs) == 1 and 0 not in signs
    return LinearForm(tuple(coefficients), grouped, common_sign)


def tangent_line_candidates(xi: XiVector, tol: float = 1e-9) -> List[int]:
    """Indices k in 2..n-2 with ξ_k = 0; a shifted pair needs at least one."""
    exact = xi.is_exact
    return [k for k in range(2, xi.n - 1) if vanishes(xi[k - 1], exact, tol)]


class ShiftedPairCriterion(BaseCriterion):
    def __init__(self, tol=None, approximate=False):
        super().__init__(criterion_name="shifted-pair")
        self.tol = tol
        self.approximate = approximate

    def check(self, xi, **kwargs):
        tol = self.tol if kwargs.get("tol") is None else kwargs["tol"]
        if xi.m < 2:
            return []
        return [
            shifted_pair_residuals(xi, p, X, tol=tol, approximate=self.approximate)
            for p, X in admissible_shifted_pairs(xi.n)
        ]
