"""Study assessments: an audited adjustment ledger over baseline
operating characteristics, evaluated into a weight-of-evidence report.

The ledger is the mechanism by which qualitative judgments about a study
(blinding, endpoint softness, dropout, ...) become numbers: each entry
replaces or shifts the baseline power or false-positive rate, carries a
mandatory free-text rationale, and is recorded step by step in the
report's audit trail.  Magnitudes are always elicited, never derived.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from . import core
from .core import Decibels, Odds, OperatingCharacteristics, Probability
from .errors import InvalidAdjustmentError

# Clamp bound for adjusted probabilities: adjustments may not push power or
# fpr closer than this to 0 or 1.
ADJUSTMENT_EPSILON = 1e-6

CURRENT_SCHEMA_VERSION = 1


class ResultDirection(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class AdjustmentTarget(enum.Enum):
    POWER = "power"
    FPR = "fpr"


class AdjustmentMode(enum.Enum):
    SET_TO = "set_to"
    ADD_DELTA = "add_delta"


class AdjustmentCategory(enum.Enum):
    """Tags the qualitative study feature an adjustment prices in."""

    BLINDING = "blinding"
    ENDPOINT_SOFTNESS = "endpoint_softness"
    DROPOUT = "dropout"
    CONFLICT_OF_INTEREST = "conflict_of_interest"
    PUBLICATION_VENUE = "publication_venue"
    REPLICATION = "replication"
    MECHANISM_PLAUSIBILITY = "mechanism_plausibility"
    DOSE_OR_DURATION = "dose_or_duration"
    POPULATION_DILUTION = "population_dilution"
    PROXY_MEASUREMENT = "proxy_measurement"
    MISCLASSIFICATION = "misclassification"
    RESIDUAL_CONFOUNDING = "residual_confounding"
    MULTIPLE_ANALYSES = "multiple_analyses"
    OTHER = "other"


class BaselineSource(enum.Enum):
    REPORTED = "reported"
    FIELD_ESTIMATE = "field_estimate"
    POWER_MODULE = "power_module"


class ReportFormat(enum.Enum):
    PLAIN_TEXT = "text"
    MARKDOWN = "markdown"


@dataclass(frozen=True)
class Provenance:
    """Where the baseline characteristics came from, plus a free-text note."""

    source: BaselineSource
    note: str = ""


@dataclass(frozen=True)
class Adjustment:
    """One audited edit to the baseline power or false-positive rate.

    ``value`` is an absolute probability for SET_TO (restricted to the
    interior interval [eps, 1 - eps]) and a signed delta for ADD_DELTA.
    The rationale is mandatory: every judgment must be auditable.
    """

    target: AdjustmentTarget
    mode: AdjustmentMode
    value: float
    rationale: str
    category: AdjustmentCategory = AdjustmentCategory.OTHER

    def __post_init__(self):
        if not isinstance(self.value, (int, float)) or isinstance(self.value, bool):
            raise InvalidAdjustmentError(f"adjustment value must be a real number, got {self.value!r}")
        if self.value != self.value:  # NaN
            raise InvalidAdjustmentError("adjustment value must not be NaN")
        if self.mode is AdjustmentMode.SET_TO:
            lo, hi = ADJUSTMENT_EPSILON, 1.0 - ADJUSTMENT_EPSILON
            if not lo <= self.value <= hi:
                raise InvalidAdjustmentError(
                    f"set_to value must be in [{lo}, {hi}], got {self.value}"
                )
        elif not -1.0 <= self.value <= 1.0:
            raise InvalidAdjustmentError(
                f"add_delta value must be in [-1, 1], got {self.value}"
            )
        if not self.rationale or not self.rationale.strip():
            raise InvalidAdjustmentError("adjustment rationale must be non-empty")


@dataclass(frozen=True)
class StudyAssessment:
    """A study under evaluation, as an immutable versioned document."""

    id: str
    title: str
    description: str
    result_direction: ResultDirection
    baseline: OperatingCharacteristics
    baseline_provenance: Provenance
    adjustments: tuple[Adjustment, ...]
    prior_p_h1: Probability
    schema_version: int = CURRENT_SCHEMA_VERSION

    def __post_init__(self):
        # Accept any iterable of adjustments, store a tuple.
        object.__setattr__(self, "adjustments", tuple(self.adjustments))
        core.check_interior_probability(self.prior_p_h1, "prior_p_h1")


@dataclass(frozen=True)
class AuditStep:
    """One applied adjustment with the characteristics before and after.

    ``clamped`` records that an add_delta pushed the value outside
    [eps, 1 - eps] and was pulled back to the boundary.
    """

    adjustment: Adjustment
    before: OperatingCharacteristics
    after: OperatingCharacteristics
    clamped: bool = False


@dataclass(frozen=True)
class WoeReport:
    """Full evaluation output for one assessment."""

    effective: OperatingCharacteristics
    lr_for_h1: Odds
    woe_evidence: Decibels
    woe_prior: Decibels
    woe_total: Decibels
    posterior_p_h1: Probability
    audit_trail: tuple[AuditStep, ...]


def effective_characteristics(
    a: StudyAssessment,
) -> tuple[OperatingCharacteristics, tuple[AuditStep, ...]]:
    """Apply the adjustment ledger to the baseline, in declared order.

    SET_TO replaces the targeted value outright; ADD_DELTA adds and then
    clamps to [eps, 1 - eps], flagging the step when the clamp fires.
    Returns the final characteristics and the step-by-step audit trail.
    """
    current = a.baseline
    trail: list[AuditStep] = []
    lo, hi = ADJUSTMENT_EPSILON, 1.0 - ADJUSTMENT_EPSILON
    for adj in a.adjustments:
        before = current
        old = current.power if adj.target is AdjustmentTarget.POWER else current.fpr
        clamped = False
        if adj.mode is AdjustmentMode.SET_TO:
            new = adj.value
        else:
            new = old + adj.value
            bounded = min(max(new, lo), hi)
            clamped = bounded != new
            new = bounded
        if adj.target is AdjustmentTarget.POWER:
            current = replace(current, power=new)
        else:
            current = replace(current, fpr=new)
        trail.append(AuditStep(adjustment=adj, before=before, after=current, clamped=clamped))
    return current, tuple(trail)


def evaluate(a: StudyAssessment) -> WoeReport:
    """Evaluate an assessment into a report.

    The likelihood ratio follows the result direction (power/fpr for a
    positive study, (1-power)/(1-fpr) for a negative one); evidence and
    prior weights are computed separately and summed.
    """
    effective, trail = effective_characteristics(a)
    if a.result_direction is ResultDirection.POSITIVE:
        lr = core.positive_result_lr(effective)
    else:
        lr = core.negative_result_lr(effective)
    woe_evidence = core.woe_from_odds(lr)
    woe_prior = core.prior_weight(a.prior_p_h1)
    woe_total = woe_evidence + woe_prior
    return WoeReport(
        effective=effective,
        lr_for_h1=lr,
        woe_evidence=woe_evidence,
        woe_prior=woe_prior,
        woe_total=woe_total,
        posterior_p_h1=core.woe_to_probability(woe_total),
        audit_trail=trail,
    )


def report_flags(r: WoeReport, a: StudyAssessment) -> tuple[str, ...]:
    """Anomaly flags worth surfacing alongside the numbers."""
    flags: list[str] = []
    if r.effective.fpr >= r.effective.power:
        flags.append(
            "futility: effective false-positive rate "
            f"({_num(r.effective.fpr)}) >= power ({_num(r.effective.power)}); "
            "a positive result from this study cannot support H1"
        )
    if a.result_direction is ResultDirection.NEGATIVE and r.woe_evidence < 0:
        flags.append(
            "negative-result study; evidence favors H0 by "
            f"{abs(r.woe_evidence):.2f} dB"
        )
    for step in r.audit_trail:
        if step.clamped:
            flags.append(
                f"adjustment '{step.adjustment.rationale}' clamped to keep "
                f"{step.adjustment.target.value} inside ({_num(ADJUSTMENT_EPSILON)}, "
                f"{_num(1.0 - ADJUSTMENT_EPSILON)})"
            )
    return tuple(flags)


def _num(x: float) -> str:
    """Compact deterministic number rendering for report text."""
    return f"{x:g}"


def _formula_line(r: WoeReport, a: StudyAssessment) -> str:
    if a.result_direction is ResultDirection.POSITIVE:
        num, den = r.effective.power, r.effective.fpr
    else:
        num, den = 1.0 - r.effective.power, 1.0 - r.effective.fpr
    return f"WoE = 10·log10({_num(num)}/{_num(den)}) = {r.woe_evidence:.2f} dB"


def _interpretation_line(r: WoeReport) -> str:
    # Present the favoured hypothesis with odds >= 1, mirroring the
    # symmetric decibel scale.
    if r.woe_total >= 0:
        odds = core.woe_to_odds(r.woe_total)
        return (
            f"total {r.woe_total:.2f} dB corresponds to odds {odds:.2f}:1 "
            f"(probability {r.posterior_p_h1:.3f}) for H1 over H0"
        )
    odds = core.woe_to_odds(-r.woe_total)
    return (
        f"total {r.woe_total:.2f} dB corresponds to odds {odds:.2f}:1 "
        f"(probability {1.0 - r.posterior_p_h1:.3f}) for H0 over H1"
    )


def _ledger_lines(r: WoeReport) -> list[str]:
    lines: list[str] = []
    for i, step in enumerate(r.audit_trail, start=1):
        adj = step.adjustment
        action = (
            f"set {adj.target.value} to {_num(adj.value)}"
            if adj.mode is AdjustmentMode.SET_TO
            else f"shift {adj.target.value} by {_num(adj.value)}"
        )
        clamp_note = " (clamped)" if step.clamped else ""
        lines.append(f"{i}. {action} [{adj.category.value}]{clamp_note}")
        lines.append(
            f"   power {_num(step.before.power)} -> {_num(step.after.power)}, "
            f"fpr {_num(step.before.fpr)} -> {_num(step.after.fpr)}"
        )
        lines.append(f"   rationale: {adj.rationale}")
    return lines


def render_report(
    r: WoeReport, a: StudyAssessment, fmt: ReportFormat = ReportFormat.PLAIN_TEXT
) -> str:
    """Render a report deterministically (byte-stable for identical inputs)."""
    if fmt is ReportFormat.MARKDOWN:
        return _render_markdown(r, a)
    return _render_plain(r, a)


def _render_plain(r: WoeReport, a: StudyAssessment) -> str:
    prov = a.baseline_provenance
    lines = [
        "WEIGHT OF EVIDENCE REPORT",
        "=========================",
        "",
        f"Study      : {a.title} ({a.id})",
    ]
    if a.description:
        lines.append(f"Description: {a.description}")
    lines += [
        f"Result     : {a.result_direction.value}",
        f"Prior      : P(H1) = {_num(a.prior_p_h1)}",
        "",
        f"Baseline characteristics ({prov.source.value})",
        f"  power = {_num(a.baseline.power)}, fpr = {_num(a.baseline.fpr)}",
    ]
    if prov.note:
        lines.append(f"  note: {prov.note}")
    lines += ["", "Adjustment ledger"]
    ledger = _ledger_lines(r)
    if ledger:
        lines += [f"  {line}" for line in ledger]
    else:
        lines.append("  no adjustments applied")
    lines += [
        "",
        "Effective characteristics",
        f"  power = {_num(r.effective.power)}, fpr = {_num(r.effective.fpr)}",
        "",
        "Evidence",
        f"  {_formula_line(r, a)}",
        f"  prior weight = {r.woe_prior:.2f} dB",
        f"  total WoE = {r.woe_total:.2f} dB",
        f"  posterior P(H1) = {r.posterior_p_h1:.3f}",
        "",
        "Interpretation",
        f"  {_interpretation_line(r)}",
    ]
    flags = report_flags(r, a)
    if flags:
        lines += ["", "Flags"]
        lines += [f"  - {flag}" for flag in flags]
    return "\n".join(lines) + "\n"


def _render_markdown(r: WoeReport, a: StudyAssessment) -> str:
    prov = a.baseline_provenance
    lines = [
        f"# Weight of evidence: {a.title}",
        "",
        f"- **Study**: {a.title} (`{a.id}`)",
    ]
    if a.description:
        lines.append(f"- **Description**: {a.description}")
    lines += [
        f"- **Result**: {a.result_direction.value}",
        f"- **Prior**: P(H1) = {_num(a.prior_p_h1)}",
        f"- **Baseline** ({prov.source.value}): power = {_num(a.baseline.power)}, "
        f"fpr = {_num(a.baseline.fpr)}"
        + (f" ({prov.note})" if prov.note else ""),
        "",
        "## Adjustment ledger",
        "",
    ]
    if r.audit_trail:
        lines += [
            "| # | adjustment | category | power | fpr | rationale |",
            "|---|------------|----------|-------|-----|-----------|",
        ]
        for i, step in enumerate(r.audit_trail, start=1):
            adj = step.adjustment
            action = (
                f"set {adj.target.value} to {_num(adj.value)}"
                if adj.mode is AdjustmentMode.SET_TO
                else f"shift {adj.target.value} by {_num(adj.value)}"
            )
            if step.clamped:
                action += " (clamped)"
            lines.append(
                f"| {i} | {action} | {adj.category.value} "
                f"| {_num(step.before.power)} -> {_num(step.after.power)} "
                f"| {_num(step.before.fpr)} -> {_num(step.after.fpr)} "
                f"| {adj.rationale} |"
            )
    else:
        lines.append("no adjustments applied")
    lines += [
        "",
        "## Evidence",
        "",
        f"- Effective characteristics: power = {_num(r.effective.power)}, "
        f"fpr = {_num(r.effective.fpr)}",
        f"- {_formula_line(r, a)}",
        f"- Prior weight = {r.woe_prior:.2f} dB",
        f"- **Total WoE = {r.woe_total:.2f} dB**",
        f"- Posterior P(H1) = {r.posterior_p_h1:.3f}",
        "",
        f"{_interpretation_line(r)}.",
    ]
    flags = report_flags(r, a)
    if flags:
        lines += ["", "## Flags", ""]
        lines += [f"- {flag}" for flag in flags]
    return "\n".join(lines) + "\n"
