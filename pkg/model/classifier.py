import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
from loguru import logger
from tqdm import tqdm

from model.concentric import ConcentricCriterion
from model.conic_fit import FULL_COVERAGE, SEPARATION, ConicVerification, verify_conics
from model.criterion_base import CriterionReport, EllipseSpec
from model.curve import sample_curve
from model.factorization import FactorizationCriterion
from model.origin_ellipse import OriginEllipseCriterion, admissible_origin_specs
from model.shifted_pair import ShiftedPairCriterion
from utils.algebra import QCosPi8, QSqrt2
from utils.reciprocal import XiVector

MAX_CLASSIFY_N = 12
SIGNIFICANT_DIGITS = 15

NONE = "none"
ORIGIN_ELLIPSES = "origin-ellipses"
ALL_CONCENTRIC = "all-concentric"
SHIFTED_PAIR = "shifted-pair"

DEFAULT_CRITERIA = [
    {"name": "origin", "params": {}},
    {"name": "concentric", "params": {}},
    {"name": "shifted-pair", "params": {}},
    {"name": "factorization", "params": {}},
]


@dataclass
class Classification:
    xi: XiVector
    category: str
    specs: List[EllipseSpec]
    reports: Dict[str, List[CriterionReport]] = field(default_factory=dict)
    verification: Optional[Dict] = None

    @property
    def degenerate(self) -> bool:
        return bool(self.specs) and all(spec.degenerate for spec in self.specs)

    @property
    def consistent(self) -> bool:
        return all(r.consistent for reports in self.reports.values() for r in reports)


class CriterionManager:
    """
    A manager to run the ellipse criteria and combine their verdicts.
    """
    def __init__(self, criterion_configs=None):
        """
        Initialize the CriterionManager with specified criterion configurations.

        Args:
            criterion_configs (list of dict): List of {"name": ..., "params": {...}} dictionaries.
        """
        self.criteria = self._initialize_criteria(criterion_configs or DEFAULT_CRITERIA)

    def _initialize_criteria(self, criterion_configs):
        """
        Initialize criteria based on configuration.

        Args:
            criterion_configs (list of dict): Criterion configuration list.

        Returns:
            list: List of criterion instances.
        """
        criteria = []
        for config in criterion_configs:
            criterion_name = config.get("name")
            if criterion_name == "origin":
                criteria.append(OriginEllipseCriterion(**config.get("params", {})))
            elif criterion_name == "concentric":
                criteria.append(ConcentricCriterion(**config.get("params", {})))
            elif criterion_name == "shifted-pair":
                criteria.append(ShiftedPairCriterion(**config.get("params", {})))
            elif criterion_name == "factorization":
                criteria.append(FactorizationCriterion(**config.get("params", {})))
            else:
                raise ValueError(f"Unsupported criterion name: {criterion_name}")
        return criteria

    def classify(self, xi, tol=None):
        """
        Run every configured criterion on one xi vector.

        Args:
            xi (XiVector): Input invariants, n <= 12.
            tol (float, optional): Numeric residual threshold override.

        Returns:
            Classification: Category, the ellipses found and every report.
        """
        if xi.n > MAX_CLASSIFY_N:
            raise ValueError(f"classify supports n <= {MAX_CLASSIFY_N}, got n = {xi.n}")
        reports = {}
        for criterion in self.criteria:
            if criterion.supports(xi):
                reports[criterion.criterion_name] = criterion.check(xi, tol=tol)

        def holding(name):
            return [r for r in reports.get(name, []) if r.holds]

        origin = holding("origin")
        concentric = holding("concentric")
        pairs = holding("factorization") or holding("shifted-pair")
        if concentric:
            category, specs = ALL_CONCENTRIC, list(concentric[0].specs)
        elif pairs:
            category, specs = SHIFTED_PAIR, list(pairs[0].specs)
            if pairs[0].criterion == "shifted-pair":
                specs += [s for r in origin for s in r.specs]
        elif origin:
            category, specs = ORIGIN_ELLIPSES, [s for r in origin for s in r.specs]
        else:
            category, specs = NONE, []
        logger.info("xi={} classified as {}", [str(v) for v in xi], category)
        return Classification(xi, category, specs, reports)

    def verify(self, classification, grid=2048, threads=1, tol=1e-6, samples=None):
        """
        Sample the curve and check it against the classification.

        Args:
            classification (Classification): Result of classify.
            grid (int): Number of θ directions.
            threads (int): Worker threads for sampling.
            tol (float): Conic residual threshold.
            samples (list[CurveSample], optional): Reuse samples already taken on the same grid.

        Returns:
            dict: {"agrees": bool, "max_residual": float, ...}; also stored on the classification.
        """
        xi = classification.xi
        if samples is None:
            samples = sample_curve(xi, grid=grid, threads=threads)
        category = classification.category
        if category == NONE:
            specs = admissible_origin_specs(xi)
        else:
            specs = classification.specs
        result = verify_conics(samples, specs, tol=tol)
        covered = result.covered(grid)
        if category in (ALL_CONCENTRIC, SHIFTED_PAIR):
            agrees = result.origin_only and covered
        elif category == ORIGIN_ELLIPSES:
            # the remaining ovals are not conics and must stay clear of every predicted one
            agrees = covered and result.separation > SEPARATION
        else:
            agrees = not any(f.count >= FULL_COVERAGE * 2 * grid for f in result.fits if not f.spec.degenerate)
        summary = _verification_summary(result, agrees)
        if not agrees:
            logger.warning("Curve verification disagrees with category {}", category)
        classification.verification = summary
        return summary

    def classify_batch(self, xi_vectors, tol=None, verify=False, grid=2048, threads=1):
        """
        Classify a batch of xi vectors.

        Args:
            xi_vectors (list): List of XiVector objects or {"xi": XiVector, "file": ...} dicts.

        Returns:
            list of dict: One result per input; failures are kept as {"error": ...}.
        """
        unified_results = []
        for idx, item in tqdm(enumerate(xi_vectors), desc="Classification", total=len(xi_vectors)):
            xi = item["xi"] if isinstance(item, dict) else item
            result = {"index": idx}
            if isinstance(item, dict) and "file" in item:
                result["file"] = item["file"]
            try:
                classification = self.classify(xi, tol=tol)
                if verify:
                    self.verify(classification, grid=grid, threads=threads)
                result["classification"] = classification
            except Exception as e:
                result["error"] = str(e)
            unified_results.append(result)
        return unified_results

    @staticmethod
    def serialize_scalar(value):
        """Tag a scalar with its mode: rational, sqrt2, cos_pi_8 or real."""
        if isinstance(value, bool):
            return value
        if isinstance(value, (int, np.integer)):
            value = Fraction(int(value))
        if isinstance(value, Fraction):
            return {"rational": f"{value.numerator}/{value.denominator}"}
        if isinstance(value, QSqrt2):
            return {"sqrt2": [str(value.a), str(value.b)]}
        if isinstance(value, QCosPi8):
            return {"cos_pi_8": {"u": [str(value.u.a), str(value.u.b)], "v": [str(value.v.a), str(value.v.b)]}}
        return {"real": _round(float(value))}

    @staticmethod
    def serialize_report(report):
        scalar = CriterionManager.serialize_scalar
        return {
            "criterion": report.criterion,
            "verdict": report.verdict.value,
            "mode": report.mode,
            "tolerance": report.tolerance,
            "approximate": report.approximate,
            "residuals": [scalar(r) for r in report.residuals],
            "residual_magnitudes": [_round(r) for r in report.residual_magnitudes()],
            "max_residual": _round(report.max_residual()),
            "parameters": CriterionManager._serialize_parameters(report.parameters),
            "specs": [CriterionManager.serialize_spec(s) for s in report.specs],
            "cross_checks": dict(report.cross_checks),
            "consistent": report.consistent,
            "diagnostics": list(report.diagnostics),
        }

    @staticmethod
    def serialize_spec(spec):
        scalar = CriterionManager.serialize_scalar
        left, right = spec.foci
        return {
            "label": spec.label,
            "p": scalar(spec.p),
            "X": scalar(spec.X),
            "C": scalar(spec.C),
            "degenerate": spec.degenerate,
            "foci": [_round(float(left)), _round(float(right))],
            "minor_half_axis": _round(float(spec.minor_axis)),
        }

    @staticmethod
    def _serialize_parameters(parameters):
        out = {}
        for key, value in parameters.items():
            if isinstance(value, (list, tuple)):
                out[key] = [CriterionManager._serialize_parameters({key: v})[key] for v in value]
            elif isinstance(value, (str, type(None), bool)):
                out[key] = value
            elif isinstance(value, (int, np.integer)) and key in ("k", "vanishing"):
                out[key] = int(value)
            else:
                out[key] = CriterionManager.serialize_scalar(value)
        return out

    @staticmethod
    def serialize_results(results):
        """
        Serialize classification results to ensure JSON compatibility.
        """
        serialized = []
        for result in results:
            serialized_result = {}
            for key, value in result.items():
                if isinstance(value, Classification):
                    serialized_result[key] = CriterionManager.serialize_classification(value)
                elif isinstance(value, CriterionReport):
                    serialized_result[key] = CriterionManager.serialize_report(value)
                elif isinstance(value, np.ndarray):
                    serialized_result[key] = value.tolist()
                elif isinstance(value, (np.float32, np.float64, float)):
                    serialized_result[key] = _round(float(value))
                elif isinstance(value, (np.int32, np.int64)):
                    serialized_result[key] = int(value)
                elif isinstance(value, Enum):
                    serialized_result[key] = value.value
                elif isinstance(value, dict):
                    serialized_result[key] = CriterionManager.serialize_results([value])[0]
                elif isinstance(value, list):
                    serialized_result[key] = [
                        CriterionManager.serialize_results([{"v": v}])[0]["v"] for v in value
                    ]
                else:
                    serialized_result[key] = value
            serialized.append(serialized_result)
        return serialized

    @staticmethod
    def serialize_classification(classification):
        scalar = CriterionManager.serialize_scalar
        return {
            "n": classification.xi.n,
            "xi": [scalar(v) for v in classification.xi],
            "category": classification.category,
            "degenerate": classification.degenerate,
            "consistent": classification.consistent,
            "specs": [CriterionManager.serialize_spec(s) for s in classification.specs],
            "criteria": {
                name: [CriterionManager.serialize_report(r) for r in reports]
                for name, reports in classification.reports.items()
            },
            "verification": classification.verification,
        }

    def save_results(self, results, output_file):
        """
        Save classification results to a JSON file.
        """
        serialized_results = self.serialize_results(results)
        with open(output_file, "w") as f:
            json.dump(serialized_results, f, indent=4, sort_keys=True)


def _round(value):
    if value is None or not np.isfinite(value):
        return value
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def _verification_summary(result: ConicVerification, agrees: bool) -> Dict:
    return {
        "agrees": bool(agrees),
        "max_residual": _round(result.max_residual),
        "leftover": len(result.leftover),
        "origin_hits": result.origin_hits,
        "unreliable": result.unreliable,
        "separation": _round(result.separation),
        "fits": [{"label": f.spec.label, "count": f.count, "max_residual": _round(f.max_residual)} for f in result.fits],
    }
