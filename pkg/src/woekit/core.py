"""Core calculus of likelihood ratios, decibel weights, and probabilities.

A study is treated like a diagnostic test for an effect: its power plays the
role of sensitivity and its false-positive rate the role of 1 - specificity.
A positive result then carries a likelihood ratio of power / fpr, a negative
result one of (1 - power) / (1 - fpr), and weights of evidence are decibel
(10 * log10) transforms of those ratios, which makes independent evidence
additive.

All functions are pure and operate on plain floats; compound values are
immutable dataclasses.  Division by zero and infinite weights are rejected
with typed errors -- the calculus never emits a silent +/-inf dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DegenerateProbabilityError,
    InvalidProbabilityError,
    NonPositiveOddsError,
    WeightOverflowError,
    ZeroDenominatorError,
)

# Type aliases used throughout the package.  A Probability is a float in
# [0, 1]; Odds are a positive finite float; Decibels is a signed finite float.
Probability = float
Odds = float
Decibels = float


def check_probability(value: float, name: str = "probability") -> float:
    """Validate that ``value`` is a probability in the closed interval [0, 1]."""
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise InvalidProbabilityError(f"{name} must be a real number, got {value!r}")
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise InvalidProbabilityError(f"{name} must be in [0, 1], got {value}")
    return float(value)


def check_interior_probability(value: float, name: str = "probability") -> float:
    """Validate that ``value`` is a probability strictly inside (0, 1)."""
    value = check_probability(value, name)
    if value == 0.0 or value == 1.0:
        raise DegenerateProbabilityError(
            f"{name} must be strictly between 0 and 1, got {value}"
        )
    return value


def _check_odds(value: float, name: str = "odds") -> float:
    if math.isnan(value) or math.isinf(value) or value <= 0.0:
        raise NonPositiveOddsError(
            f"{name} must be a positive finite ratio, got {value}"
        )
    return float(value)


@dataclass(frozen=True)
class OperatingCharacteristics:
    """A study summarised as a diagnostic test for an effect.

    ``power`` is the probability of a positive result when the effect is
    real; ``fpr`` is the probability of a positive result when it is not
    (the effective significance level after any inflation for bias).
    """

    power: Probability
    fpr: Probability

    def __post_init__(self):
        check_probability(self.power, "power")
        check_probability(self.fpr, "fpr")


def likelihood_ratio(p_given_h1: Probability, p_given_h0: Probability) -> Odds:
    """Ratio of the probability of the evidence under H1 to that under H0.

    Values above 1 favour H1, below 1 favour H0.  The denominator must be
    strictly positive: a zero denominator is an ill-posed comparison, not an
    overflow to be saturated.
    """
    p_given_h1 = check_probability(p_given_h1, "p_given_h1")
    p_given_h0 = check_probability(p_given_h0, "p_given_h0")
    if p_given_h0 == 0.0:
        raise ZeroDenominatorError(
            "probability of the evidence under H0 is zero; likelihood ratio undefined"
        )
    return p_given_h1 / p_given_h0


def positive_result_lr(oc: OperatingCharacteristics) -> Odds:
    """Likelihood ratio for H1 carried by a positive (significant) result.

    Equals power / fpr, by analogy with sensitivity / (1 - specificity) for
    a diagnostic test.
    """
    if oc.fpr == 0.0:
        raise ZeroDenominatorError(
            "false-positive rate is zero; positive-result likelihood ratio undefined"
        )
    return oc.power / oc.fpr


def negative_result_lr(oc: OperatingCharacteristics) -> Odds:
    """Likelihood ratio for H1 carried by a negative (non-significant) result.

    Equals (1 - power) / (1 - fpr).  Values below 1 favour H0; the ratio is
    still oriented toward H1 so that one canonical orientation is used
    everywhere (report layers may negate the decibel form to speak for H0).
    """
    if oc.fpr == 1.0:
        raise ZeroDenominatorError(
            "false-positive rate is one; negative-result likelihood ratio undefined"
        )
    return (1.0 - oc.power) / (1.0 - oc.fpr)


def woe_from_odds(lr: Odds) -> Decibels:
    """Weight of evidence in decibels: 10 * log10 of a likelihood ratio."""
    lr = _check_odds(lr, "likelihood ratio")
    return 10.0 * math.log10(lr)


def prior_weight(p_h1: Probability) -> Decibels:
    """Decibel weight of the prior: 10 * log10 of the prior odds for H1.

    Zero when both hypotheses are equally plausible a priori.  A prior of
    exactly 0 or 1 is dogmatic -- no evidence could ever move it -- and is
    rejected loudly rather than mapped to an infinity.
    """
    p_h1 = check_interior_probability(p_h1, "prior probability")
    return 10.0 * math.log10(p_h1 / (1.0 - p_h1))


def combine_woe(evidence_weights: Iterable[Decibels], prior: Decibels = 0.0) -> Decibels:
    """Total weight of evidence: sum of independent evidence weights plus the
    prior weight.  Addition on the decibel scale corresponds to multiplying
    the underlying likelihood ratios."""
    total = float(prior)
    _check_finite_weight(total, "prior weight")
    for i, w in enumerate(evidence_weights):
        _check_finite_weight(w, f"evidence weight {i}")
        total += w
    return total


def _check_finite_weight(w: float, name: str = "weight") -> float:
    if math.isnan(w) or math.isinf(w):
        raise WeightOverflowError(f"{name} must be finite, got {w}")
    return float(w)


def woe_to_odds(w: Decibels) -> Odds:
    """Convert a decibel weight back to odds: 10 ** (w / 10).

    Weights so large in magnitude that the odds overflow (or underflow to
    exactly zero) are input errors, not values to clamp.
    """
    _check_finite_weight(w)
    try:
        odds = 10.0 ** (w / 10.0)
    except OverflowError:
        raise WeightOverflowError(
            f"weight {w} dB overflows the representable odds range"
        ) from None
    if math.isinf(odds) or odds == 0.0:
        raise WeightOverflowError(
            f"weight {w} dB is outside the representable odds range"
        )
    return odds


def probability_to_odds(p: Probability) -> Odds:
    """Convert a strictly interior probability to odds p / (1 - p)."""
    p = check_interior_probability(p)
    return p / (1.0 - p)


def odds_to_probability(o: Odds) -> Probability:
    """Convert odds to a probability o / (1 + o)."""
    o = _check_odds(o)
    return o / (1.0 + o)


def woe_to_probability(w: Decibels) -> Probability:
    """Convert a decibel weight to the implied probability of H1."""
    return odds_to_probability(woe_to_odds(w))


CONVERTIBLE_UNITS = ("woe", "odds", "probability")


def convert_value(value: float, from_unit: str, to_unit: str) -> float:
    """Convert between decibel weights, odds, and probabilities.

    Probabilities must be strictly interior when converted to another unit
    (0 and 1 have no finite odds or weight).
    """
    for unit in (from_unit, to_unit):
        if unit not in CONVERTIBLE_UNITS:
            raise ValueError(
                f"unknown unit '{unit}'; expected one of {', '.join(CONVERTIBLE_UNITS)}"
            )
    if from_unit == to_unit:
        if from_unit == "woe":
            return _check_finite_weight(value)
        if from_unit == "odds":
            return _check_odds(value)
        return check_probability(value)
    if from_unit == "woe":
        odds = woe_to_odds(value)
    elif from_unit == "odds":
        odds = _check_odds(value)
    else:
        odds = probability_to_odds(value)
    if to_unit == "odds":
        return odds
    if to_unit == "woe":
        return woe_from_odds(odds)
    return odds_to_probability(odds)
