"""
Check sampled curve points against predicted conics.
"""
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from model.criterion_base import EllipseSpec
from model.curve import CurveSample

CONIC_TOL = 1e-6
# share of the 2 * grid samples a whole ellipse collects (each direction hits it on both sides)
FULL_COVERAGE = 0.95
# leftover samples must stay this far from the predicted conics
SEPARATION = 1e-4


@dataclass
class ConicFit:
    spec: EllipseSpec
    max_residual: float
    count: int


@dataclass
class ConicVerification:
    fits: List[ConicFit]
    leftover: List[int] = field(default_factory=list)
    origin_hits: int = 0
    unreliable: int = 0
    separation: float = float("inf")

    @property
    def origin_only(self) -> bool:
        """True when every reliable sample lies on a conic or at the origin."""
        return not self.leftover

    @property
    def max_residual(self) -> float:
        return max((f.max_residual for f in self.fits if f.count), default=0.0)

    def covered(self, grid: int, share: float = FULL_COVERAGE) -> bool:
        """Every nondegenerate conic collected nearly all of its 2 * grid samples."""
        return all(f.spec.degenerate or f.count >= share * 2 * grid for f in self.fits)


def conic_residuals(spec: EllipseSpec, points: np.ndarray) -> np.ndarray:
    """
    Implicit-equation residuals of complex points against one conic.

    An ellipse gives |(x - p)²/(C + X²) + y²/C - 1|; the degenerate C = 0
    segment gives the distance to [p - X, p + X].
    """
    p, X, C = spec.as_floats()
    x = np.real(points) - p
    y = np.imag(points)
    if C <= 0.0:
        return np.abs(y) + np.maximum(np.abs(x) - X, 0.0)
    return np.abs(x * x / (C + X * X) + y * y / C - 1.0)


def verify_conics(samples: Sequence[CurveSample], specs: Sequence[EllipseSpec], tol: float = CONIC_TOL) -> ConicVerification:
    """
    Assign each reliable sample to the closest conic within tol.

    Args:
        samples (list[CurveSample]): Sampled envelope points.
        specs (list[EllipseSpec]): Predicted components.
        tol (float): Residual threshold.

    Returns:
        ConicVerification: per-conic fits, indices of samples off every conic
                           and away from the origin, origin/unreliable counts
                           and the smallest residual among the leftovers.
    """
    points = np.array([s.z for s in samples], dtype=complex)
    reliable = np.array([s.reliable for s in samples], dtype=bool)
    if specs:
        table = np.vstack([conic_residuals(spec, points) for spec in specs])
        best = np.argmin(table, axis=0)
        best_residual = table[best, np.arange(points.size)]
    else:
        best = np.zeros(points.size, dtype=int)
        best_residual = np.full(points.size, np.inf)
    assigned = reliable & (best_residual < tol)
    at_origin = reliable & ~assigned & (np.abs(points) < tol)

    fits = []
    for k, spec in enumerate(specs):
        mask = assigned & (best == k)
        fits.append(ConicFit(spec, float(best_residual[mask].max(initial=0.0)), int(mask.sum())))
    leftover_mask = reliable & ~assigned & ~at_origin
    leftover = np.nonzero(leftover_mask)[0].tolist()
    separation = float(best_residual[leftover_mask].min(initial=np.inf))
    return ConicVerification(fits, leftover, int(at_origin.sum()), int((~reliable).sum()), separation)
