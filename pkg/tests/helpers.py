"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
from scipy.stats import binom, norm

from woekit import (
    Adjustment,
    BaselineSource,
    OperatingCharacteristics,
    Provenance,
    ResultDirection,
    StudyAssessment,
    TwoGroupBinaryDesign,
    load_assessment_document,
)

SAMPLES_DIR = Path(__file__).resolve().parent.parent / "samples"
SAMPLE_NAMES = ("drug_positive", "drug_negative", "vitamin_d", "vitamin_d_degraded")


def sample_path(name: str) -> Path:
    return SAMPLES_DIR / f"{name}.json"


def load_sample(name: str):
    return load_assessment_document(str(sample_path(name)))


def read_sample_json(name: str) -> dict:
    with open(sample_path(name), "r", encoding="utf-8") as handle:
        return json.load(handle)


def numerically_equal(a, b, tolerance: float = 1e-12) -> bool:
    """Recursive equality where numbers compare within a tolerance."""
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(
            numerically_equal(a[k], b[k], tolerance) for k in a
        )
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(
            numerically_equal(x, y, tolerance) for x, y in zip(a, b)
        )
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return math.isclose(a, b, rel_tol=tolerance, abs_tol=tolerance)
    return a == b


def build_assessment(
    power: float,
    fpr: float,
    *,
    direction: ResultDirection = ResultDirection.POSITIVE,
    prior: float = 0.5,
    adjustments: tuple[Adjustment, ...] = (),
    assessment_id: str = "test",
) -> StudyAssessment:
    return StudyAssessment(
        id=assessment_id,
        title="Assessment built for tests",
        description="synthetic fixture",
        result_direction=direction,
        baseline=OperatingCharacteristics(power=power, fpr=fpr),
        baseline_provenance=Provenance(source=BaselineSource.FIELD_ESTIMATE),
        adjustments=adjustments,
        prior_p_h1=prior,
    )


def exact_two_group_rejection(d: TwoGroupBinaryDesign) -> float:
    """Exact rejection probability of the unpooled two-proportion z-test.

    Independent enumeration over all count pairs; used as the oracle the
    Monte Carlo estimator is calibrated against.  Degenerate pairs (both
    groups all-events or no-events in a cell pattern that zeroes the
    variance) never reject, matching the estimator's convention.
    """
    x1 = np.arange(d.n1 + 1)
    x2 = np.arange(d.n2 + 1)
    phat1 = (x1 / d.n1)[:, None]
    phat2 = (x2 / d.n2)[None, :]
    var = phat1 * (1.0 - phat1) / d.n1 + phat2 * (1.0 - phat2) / d.n2
    diff = phat1 - phat2
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(var > 0.0, diff / np.sqrt(var), 0.0)
    z_crit = norm.ppf(1.0 - d.alpha / 2.0)
    reject = np.abs(z) > z_crit
    pmf1 = binom.pmf(x1, d.n1, d.p1)[:, None]
    pmf2 = binom.pmf(x2, d.n2, d.p2)[None, :]
    return float((pmf1 * pmf2 * reject).sum())
