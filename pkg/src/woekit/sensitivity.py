"""What-if machinery over assessments: sweeps, inverse solving, design
comparison, and per-adjustment impact attribution.

Sweeps substitute the targeted quantity after the ledger has been applied,
matching how a reviewer re-asks "and what if the power were really only X?"
about the final, adjusted characteristics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from . import core
from .assessment import (
    Adjustment,
    ResultDirection,
    StudyAssessment,
    effective_characteristics,
    evaluate,
)
from .core import Decibels, OperatingCharacteristics, Probability
from .errors import EvidenceError, UnreachableTargetError, ZeroDenominatorError


class SweepTarget(enum.Enum):
    POWER = "power"
    FPR = "fpr"
    PRIOR = "prior"


@dataclass(frozen=True)
class SweepSpec:
    """A grid of values to substitute for one quantity of an assessment."""

    target: SweepTarget
    grid: tuple[Probability, ...]
    base: StudyAssessment

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(self.grid))
        if not self.grid:
            raise ValueError("sweep grid must be non-empty")
        for v in self.grid:
            core.check_probability(v, f"{self.target.value} grid value")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError(f"sweep grid must be strictly increasing, got {self.grid}")


@dataclass(frozen=True)
class SweepPoint:
    """Evaluation at one grid value; ``error`` is set when that point failed."""

    value: Probability
    woe_total: Decibels | None
    posterior_p_h1: Probability | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    target: SweepTarget
    points: tuple[SweepPoint, ...]


def _woe_total_for(
    direction: ResultDirection,
    effective: OperatingCharacteristics,
    prior_p_h1: Probability,
) -> Decibels:
    if direction is ResultDirection.POSITIVE:
        lr = core.positive_result_lr(effective)
    else:
        lr = core.negative_result_lr(effective)
    return core.woe_from_odds(lr) + core.prior_weight(prior_p_h1)


def sweep(s: SweepSpec) -> SweepResult:
    """Evaluate the base assessment once per grid value.

    The targeted quantity is overridden after the ledger is applied.  A
    grid value that makes evaluation impossible (say, fpr = 0 for a
    positive study) is recorded as a per-point failure instead of aborting
    the rest of the sweep.
    """
    effective, _ = effective_characteristics(s.base)
    direction = s.base.result_direction
    points: list[SweepPoint] = []
    for v in s.grid:
        eff = effective
        prior = s.base.prior_p_h1
        try:
            if s.target is SweepTarget.POWER:
                eff = replace(effective, power=v)
            elif s.target is SweepTarget.FPR:
                eff = replace(effective, fpr=v)
            else:
                prior = v
            total = _woe_total_for(direction, eff, prior)
            points.append(
                SweepPoint(
                    value=v,
                    woe_total=total,
                    posterior_p_h1=core.woe_to_probability(total),
                )
            )
        except EvidenceError as exc:
            points.append(SweepPoint(value=v, woe_total=None, posterior_p_h1=None, error=str(exc)))
    return SweepResult(target=s.target, points=tuple(points))


def required_power(fpr: Probability, target_woe: Decibels) -> Probability:
    """Power needed for a positive result to carry ``target_woe`` decibels
    at the given false-positive rate.

    Inverts the positive-result likelihood ratio: power = fpr * 10^(w/10).
    If that exceeds 1 no power suffices and the false-positive rate itself
    must drop.
    """
    fpr = core.check_probability(fpr, "fpr")
    if fpr == 0.0:
        raise ZeroDenominatorError("fpr must be strictly positive")
    needed = fpr * core.woe_to_odds(target_woe)
    if needed > 1.0:
        raise UnreachableTargetError(
            f"no power in [0, 1] reaches {target_woe:g} dB at fpr {fpr:g} "
            f"(would need {needed:g}); decrease the false-positive rate"
        )
    return needed


@dataclass(frozen=True)
class DesignWoe:
    """One design-comparison row: characteristics, the WoE a result of the
    chosen direction would carry, and the difference against the base row."""

    characteristics: OperatingCharacteristics
    woe: Decibels
    delta_vs_base: Decibels
    is_base: bool = False


def design_compare(
    base: OperatingCharacteristics,
    variants: list[OperatingCharacteristics] | tuple[OperatingCharacteristics, ...],
    direction: ResultDirection = ResultDirection.POSITIVE,
) -> tuple[DesignWoe, ...]:
    """Compare candidate designs by the evidence a result would carry.

    Returns one row per design, base first then variants in input order.
    """

    def woe_of(oc: OperatingCharacteristics) -> Decibels:
        if direction is ResultDirection.POSITIVE:
            return core.woe_from_odds(core.positive_result_lr(oc))
        return core.woe_from_odds(core.negative_result_lr(oc))

    base_woe = woe_of(base)
    rows = [DesignWoe(characteristics=base, woe=base_woe, delta_vs_base=0.0, is_base=True)]
    for oc in variants:
        w = woe_of(oc)
        rows.append(DesignWoe(characteristics=oc, woe=w, delta_vs_base=w - base_woe))
    return tuple(rows)


@dataclass(frozen=True)
class AdjustmentImpact:
    """Effect of one ledger entry on the total WoE.

    ``woe_without`` is the total with this adjustment removed (others kept
    in order); ``delta_woe = woe_without - woe_full`` is how much the total
    would move if the adjustment were dropped.
    """

    index: int
    adjustment: Adjustment
    woe_without: Decibels
    delta_woe: Decibels


def adjustment_impacts(a: StudyAssessment) -> tuple[AdjustmentImpact, ...]:
    """Leave-one-out attribution over the adjustment ledger."""
    if not a.adjustments:
        return ()
    full = evaluate(a).woe_total
    impacts: list[AdjustmentImpact] = []
    for i, adj in enumerate(a.adjustments):
        reduced = a.adjustments[:i] + a.adjustments[i + 1 :]
        without = evaluate(replace(a, adjustments=reduced)).woe_total
        impacts.append(
            AdjustmentImpact(
                index=i, adjustment=adj, woe_without=without, delta_woe=without - full
            )
        )
    return tuple(impacts)
