"""
Known 7x7 families whose Kippenhahn curve contains a shifted ellipse pair.

Every family is t * ξ for t > 0. Entries carry the foci configuration, the
expected C, C_0 and minor half-axes. Exact entries live in Q(√2, c); the
rest are 6-significant-digit approximations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from loguru import logger
from tqdm import tqdm

from model.factorization import N7_CONFIGS, ShiftedPairConfig, factorization_check_n7
from model.criterion_base import CriterionReport
from model.shifted_pair import tangent_line_candidates
from utils.algebra import COS_PI_8 as c, SQRT2 as s2, sqrt_scalar
from utils.reciprocal import XiVector

APPROXIMATE_MATCH = 1e-4


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    label: str
    xi: XiVector
    config: ShiftedPairConfig
    C: object
    C0: object
    minor_axes: Tuple[float, float]
    exact: bool
    mirrored_from: Optional[str] = None

    @property
    def admissible(self) -> bool:
        return self.xi.admissible

    def scaled(self, t) -> "CatalogEntry":
        """The same family member at scale t; C, C0 scale by t, the axes by sqrt(t)."""
        root = float(sqrt_scalar(t))
        return CatalogEntry(
            self.family,
            f"{self.label}*{t}",
            self.xi.scaled(t),
            self.config,
            self.C * t,
            self.C0 * t,
            (self.minor_axes[0] * root, self.minor_axes[1] * root),
            self.exact,
            self.mirrored_from,
        )


@dataclass
class CatalogCheck:
    entry: CatalogEntry
    report: CriterionReport
    agrees: bool
    notes: List[str] = field(default_factory=list)


def _exact_entry(family, label, values, case, C, C0) -> CatalogEntry:
    xi = XiVector(7, tuple(values))
    axes = (float(sqrt_scalar(C)), float(sqrt_scalar(C0)))
    return CatalogEntry(family, label, xi, N7_CONFIGS[family].with_case(case), C, C0, axes, True)


def _approximate_entry(family, label, values, axes) -> CatalogEntry:
    xi = XiVector.unchecked(7, tuple(float(v) for v in values))
    C = xi[0] + xi[1]
    C0 = sum(xi[2:]) - C
    return CatalogEntry(family, label, xi, N7_CONFIGS[family].with_case("xi2xi3"), C, C0, tuple(axes), False)


def _mirror(entry: CatalogEntry, label: str) -> CatalogEntry:
    case = "xi4xi5" if entry.config.case == "xi2xi3" else "xi2xi3"
    return CatalogEntry(
        entry.family,
        label,
        entry.xi.transposed(),
        entry.config.with_case(case),
        entry.C,
        entry.C0,
        entry.minor_axes,
        entry.exact,
        mirrored_from=entry.label,
    )


def _central_family() -> List[CatalogEntry]:
    # foci c and -d, E0 with foci ±√2; the second vector is the (√2+1)-scaled mirror of the first
    return [
        _exact_entry("central", "central-1", (2 * s2 - 2, 3 - 2 * s2, 0, 1, 0, 1), "xi2xi3", 1, 1),
        _exact_entry("central", "central-2", (s2 + 1, 0, s2 + 1, 0, s2 - 1, 2), "xi2xi3", s2 + 1, s2 + 1),
    ]


def _inner_family() -> List[CatalogEntry]:
    # foci c and -√2, E0 with foci ±d
    base = [
        _exact_entry(
            "inner", "inner-1",
            (1, 0, 9 - 7 * s2 + 4 * (3 - 2 * s2) * c, 8 + 2 * s2 - 4 * s2 * c,
             5 - 8 * s2 + 6 * (2 - s2) * c, 4 * s2 - 6 + 2 * (3 * s2 - 4) * c),
            "xi2xi3", 1, 15 - 9 * s2 - 4 * (3 * s2 - 4) * c,
        ),
        _exact_entry(
            "inner", "inner-2",
            (1, 0, 2 + Fraction(3, 2) * s2 - 2 * c, s2 / 2 - 2 + 2 * (s2 - 1) * c,
             8 + 2 * s2 - 4 * s2 * c, -9 - 6 * s2 + 4 * (1 + s2) * c),
            "xi2xi3", 1, -2 - 2 * s2 + 2 * s2 * c,
        ),
        _approximate_entry("inner", "inner-3", (1, 1.69724, 0, 1.01396, 1.19026, 0.790003), (1.64233, 0.544959)),
        _approximate_entry("inner", "inner-4", (1, 1.51367, 0, 1.0412, 0.944947, 0.900544), (1.58546, 0.610752)),
    ]
    return base + [_mirror(entry, f"inner-{j}") for j, entry in enumerate(base, start=5)]


def _outer_family() -> List[CatalogEntry]:
    # foci √2 and -d, E0 with foci ±c; outer-3 keeps its negative entry
    base = [
        _exact_entry(
            "outer", "outer-1",
            (1, 0, 9 + 7 * s2 - 4 * (1 + s2) * c, 8 - 2 * s2 - 4 * (2 - s2) * c,
             5 + 8 * s2 - 6 * s2 * c, -6 - 4 * s2 + 2 * (2 + s2) * c),
            "xi2xi3", 1, 15 + 9 * s2 - 4 * (2 + s2) * c,
        ),
        _exact_entry(
            "outer", "outer-2",
            (1, 0, 2 - Fraction(3, 2) * s2 + 2 * (s2 - 1) * c, -2 - s2 / 2 + 2 * c,
             8 - 2 * s2 - 4 * (2 - s2) * c, -9 + 6 * s2 + 4 * (3 - 2 * s2) * c),
            "xi2xi3", 1, -2 + 2 * s2 + (4 - 2 * s2) * c,
        ),
        _approximate_entry("outer", "outer-3", (1, 0.447769, 0, 1.21903, -0.161745, 2.4715), (1.20323, 1.44257)),
    ]
    return base + [_mirror(entry, f"outer-{j}") for j, entry in enumerate(base, start=4)]


def catalog_n7() -> List[CatalogEntry]:
    """All sixteen families: 2 central, 8 inner, 6 outer."""
    return _central_family() + _inner_family() + _outer_family()


def find_entry(label: str) -> CatalogEntry:
    for entry in catalog_n7():
        if entry.label == label:
            return entry
    raise ValueError(f"Unknown catalog entry: {label!r}")


def _close(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(float(a) - float(b)) <= APPROXIMATE_MATCH * max(1.0, abs(float(b)))


def verify_entry(entry: CatalogEntry, tol: Optional[float] = None) -> CatalogCheck:
    """
    Re-derive an entry through the factorization check.

    Args:
        entry (CatalogEntry): Catalog entry.
        tol (float, optional): Numeric threshold override for approximate entries.

    Returns:
        CatalogCheck: agrees is True when the verdict holds and C, C0 and the
                      minor half-axes match the recorded values.
    """
    report = factorization_check_n7(entry.xi, entry.config, tol=tol, approximate=not entry.exact)
    notes = []
    if not report.holds:
        notes.append("factorization does not hold: " + "; ".join(report.diagnostics))
    else:
        if not _close(report.parameters["C"], entry.C, entry.exact):
            notes.append(f"C mismatch: {report.parameters['C']} vs {entry.C}")
        if not _close(report.parameters["C0"], entry.C0, entry.exact):
            notes.append(f"C0 mismatch: {report.parameters['C0']} vs {entry.C0}")
        axes = (float(sqrt_scalar(report.parameters["C"])), float(sqrt_scalar(report.parameters["C0"])))
        for got, want in zip(axes, entry.minor_axes):
            if abs(got - want) > APPROXIMATE_MATCH * max(1.0, want):
                notes.append(f"minor half-axis mismatch: {got:.6g} vs {want:.6g}")
    if not tangent_line_candidates(entry.xi, tol=1e-12):
        notes.append("no vanishing ξ_k with 2 <= k <= 5")
    if not entry.admissible:
        notes.append("negative entry; not realizable by a matrix")
    agrees = report.holds and not any("mismatch" in n or "no vanishing" in n for n in notes)
    return CatalogCheck(entry, report, agrees, notes)


def verify_catalog(entries: Optional[List[CatalogEntry]] = None, tol: Optional[float] = None) -> List[CatalogCheck]:
    entries = catalog_n7() if entries is None else entries
    checks = []
    for entry in tqdm(entries, desc="Verifying catalog", unit="entry"):
        check = verify_entry(entry, tol=tol)
        if not check.agrees:
            logger.warning("Catalog entry {} did not verify: {}", entry.label, check.notes)
        checks.append(check)
    return checks
