"""woekit: weight-of-evidence evaluation for study results.

Converts a study's operating characteristics (power, false-positive rate),
elicited qualitative adjustments, and a prior into decibel-scale support for
one hypothesis over another, with sensitivity analysis, a power calculator,
a CLI, and an HTTP service.
"""

from .assessment import (
    Adjustment,
    AdjustmentCategory,
    AdjustmentMode,
    AdjustmentTarget,
    AuditStep,
    BaselineSource,
    Provenance,
    ReportFormat,
    ResultDirection,
    StudyAssessment,
    WoeReport,
    effective_characteristics,
    evaluate,
    render_report,
    report_flags,
)
from .core import (
    CONVERTIBLE_UNITS,
    OperatingCharacteristics,
    check_interior_probability,
    check_probability,
    combine_woe,
    convert_value,
    likelihood_ratio,
    negative_result_lr,
    odds_to_probability,
    positive_result_lr,
    prior_weight,
    probability_to_odds,
    woe_from_odds,
    woe_to_odds,
    woe_to_probability,
)
from .documents import (
    AssessmentDocument,
    assessment_document_to_dict,
    dump_assessment_document,
    load_assessment_document,
    parse_assessment_document,
    report_to_dict,
)
from .errors import (
    DegenerateProbabilityError,
    DocumentError,
    EvidenceError,
    InvalidAdjustmentError,
    InvalidCountsError,
    InvalidDesignError,
    InvalidProbabilityError,
    NonPositiveOddsError,
    UnreachableTargetError,
    WeightOverflowError,
    ZeroDenominatorError,
)
from .power import (
    PowerEstimate,
    PowerMethod,
    Sides,
    TwoGroupBinaryDesign,
    rates_from_case_split,
    simulate_two_group_power,
    two_proportion_power,
)
from .sensitivity import (
    AdjustmentImpact,
    DesignWoe,
    SweepPoint,
    SweepResult,
    SweepSpec,
    SweepTarget,
    adjustment_impacts,
    design_compare,
    required_power,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Adjustment",
    "AdjustmentCategory",
    "AdjustmentImpact",
    "AdjustmentMode",
    "AdjustmentTarget",
    "AssessmentDocument",
    "AuditStep",
    "BaselineSource",
    "CONVERTIBLE_UNITS",
    "DegenerateProbabilityError",
    "DesignWoe",
    "DocumentError",
    "EvidenceError",
    "InvalidAdjustmentError",
    "InvalidCountsError",
    "InvalidDesignError",
    "InvalidProbabilityError",
    "NonPositiveOddsError",
    "OperatingCharacteristics",
    "PowerEstimate",
    "PowerMethod",
    "Provenance",
    "ReportFormat",
    "ResultDirection",
    "Sides",
    "StudyAssessment",
    "SweepPoint",
    "SweepResult",
    "SweepSpec",
    "SweepTarget",
    "TwoGroupBinaryDesign",
    "UnreachableTargetError",
    "WeightOverflowError",
    "WoeReport",
    "ZeroDenominatorError",
    "adjustment_impacts",
    "assessment_document_to_dict",
    "check_interior_probability",
    "check_probability",
    "combine_woe",
    "convert_value",
    "design_compare",
    "dump_assessment_document",
    "effective_characteristics",
    "evaluate",
    "likelihood_ratio",
    "load_assessment_document",
    "negative_result_lr",
    "odds_to_probability",
    "parse_assessment_document",
    "positive_result_lr",
    "prior_weight",
    "probability_to_odds",
    "rates_from_case_split",
    "render_report",
    "report_flags",
    "report_to_dict",
    "required_power",
    "simulate_two_group_power",
    "sweep",
    "two_proportion_power",
    "woe_from_odds",
    "woe_to_odds",
    "woe_to_probability",
]
