"""Exception types raised by the evidence calculus and its surrounding layers.

Every numeric failure mode gets its own class so callers (CLI, service) can
map it to the right diagnostic instead of pattern-matching message strings.
"""

from __future__ import annotations


class EvidenceError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidProbabilityError(EvidenceError):
    """A probability lies outside the closed interval [0, 1]."""


class DegenerateProbabilityError(EvidenceError):
    """A probability of exactly 0 or 1 where a strictly interior value is
    required (e.g. a dogmatic prior, which would make evidence irrelevant)."""


class ZeroDenominatorError(EvidenceError):
    """A likelihood-ratio denominator is exactly zero; the comparison is
    ill-posed rather than numerically large."""


class NonPositiveOddsError(EvidenceError):
    """An odds value is zero, negative, or non-finite where a strictly
    positive finite ratio is required."""


class WeightOverflowError(EvidenceError):
    """A decibel weight is too large in magnitude for the corresponding odds
    to be representable in 64-bit floating point."""


class InvalidAdjustmentError(EvidenceError):
    """An adjustment ledger entry is malformed (e.g. a set-to value outside
    the permitted interior interval, or an empty rationale)."""


class UnreachableTargetError(EvidenceError):
    """No power in [0, 1] can reach the requested weight of evidence at the
    given false-positive rate; the false-positive rate must drop instead."""


class InvalidCountsError(EvidenceError):
    """Case counts imply event rates outside the open interval (0, 1)."""


class InvalidDesignError(EvidenceError):
    """A study design fails its structural constraints (group sizes, rates,
    or significance level out of range)."""


class DocumentError(EvidenceError):
    """A document fails schema validation.

    ``field`` names the offending field (dotted path) when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
