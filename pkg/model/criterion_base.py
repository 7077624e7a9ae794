from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

from utils.algebra import as_scalar, is_exact, sqrt_scalar
from utils.reciprocal import XiVector, spectrum

NUMERIC_TOL = 1e-8
APPROXIMATE_TOL = 1e-4


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    DEGENERATE = "holds-degenerately"


@dataclass(frozen=True)
class EllipseSpec:
    """
    Ellipse (x - p)²/(C + X²) + y²/C = 1 with foci p ± X.

    C = 0 is the degenerate case: the focal segment [p - X, p + X].
    """

    p: object
    X: object
    C: object
    label: str = ""

    def __post_init__(self) -> None:
        for name in ("p", "X", "C"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not float(self.X) > 0:
            raise ValueError(f"Half focal distance X must be positive, got {self.X}")
        if self.C < 0:
            raise ValueError(f"Squared minor half-axis C must be nonnegative, got {self.C}")

    @property
    def degenerate(self) -> bool:
        return self.C == 0

    @property
    def foci(self):
        return (self.p - self.X, self.p + self.X)

    @property
    def minor_axis(self):
        return sqrt_scalar(self.C)

    def mirrored(self) -> "EllipseSpec":
        return EllipseSpec(-self.p, self.X, self.C, label=f"-{self.label}" if self.label else "")

    def as_floats(self):
        return float(self.p), float(self.X), float(self.C)


@dataclass
class CriterionReport:
    criterion: str
    verdict: Verdict
    residuals: List = field(default_factory=list)
    parameters: Dict = field(default_factory=dict)
    mode: str = "exact"
    tolerance: Optional[float] = None
    approximate: bool = False
    specs: List[EllipseSpec] = field(default_factory=list)
    cross_checks: Dict[str, bool] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict != Verdict.FAILS

    @property
    def consistent(self) -> bool:
        return all(self.cross_checks.values())

    def residual_magnitudes(self) -> List[float]:
        return [abs(float(r)) for r in self.residuals]

    def max_residual(self) -> float:
        return max(self.residual_magnitudes(), default=0.0)


def residual_tolerance(xi: XiVector, tol: Optional[float] = None, approximate: bool = False) -> float:
    """Threshold base * (1 + |xi|_inf)^m for numeric mode."""
    if tol is not None:
        return tol
    base = APPROXIMATE_TOL if approximate else NUMERIC_TOL
    return base * (1.0 + xi.sup_norm) ** xi.m


def working_values(xi: XiVector, exact: bool) -> tuple:
    return tuple(xi.xi) if exact else tuple(float(v) for v in xi.xi)


def exact_run(xi: XiVector, approximate: bool = False) -> bool:
    """Criteria run exactly when xi is exact and the spectrum of n is cached exactly."""
    return xi.is_exact and spectrum(xi.n).is_exact and not approximate


def vanishes(value, exact: bool, tolerance: float) -> bool:
    if exact:
        return value == 0
    return abs(float(value)) < tolerance


def decide_verdict(
    residuals: Sequence,
    c_values: Sequence,
    exact: bool,
    tolerance: float,
    diagnostics: List[str],
) -> Verdict:
    """
    Turn residuals and recovered C values into a verdict.

    Args:
        residuals (list): Residual values, all must vanish.
        c_values (list): Recovered squared minor half-axes, all must be >= 0.
        exact (bool): Exact comparison instead of the tolerance.
        tolerance (float): Numeric threshold.
        diagnostics (list): Receives the reason for a failure.

    Returns:
        Verdict: HOLDS, DEGENERATE (some C is zero) or FAILS.
    """
    nonzero = [i for i, r in enumerate(residuals) if not vanishes(r, exact, tolerance)]
    if nonzero:
        diagnostics.append(f"{len(nonzero)} of {len(residuals)} residuals do not vanish")
        return Verdict.FAILS
    if any((c < 0) if exact else float(c) < -tolerance for c in c_values):
        diagnostics.append("negative squared minor half-axis")
        return Verdict.FAILS
    if any(vanishes(c, exact, tolerance) for c in c_values):
        return Verdict.DEGENERATE
    return Verdict.HOLDS


def clamp_nonnegative(c, exact: bool):
    """Numeric C values within tolerance of 0 from below become 0."""
    if exact:
        return c
    return max(float(c), 0.0)


class BaseCriterion:
    """
    Base class for the ellipse criteria.
    """
    def __init__(self, criterion_name, required_size=None):
        self.criterion_name = criterion_name
        self.required_size = required_size

    def supports(self, xi):
        return self.required_size is None or xi.n == self.required_size

    def check(self, xi, **kwargs):
        """
        Run the criterion on a xi vector.

        Args:
            xi (XiVector): Input invariants.

        Returns:
            list[CriterionReport]: One report per candidate the criterion tries.
        """
        raise NotImplementedError("Subclasses must implement this method.")
