"""Canonical JSON serialization for assessments, reports, and sweep results.

One schema family, one strict validator, shared by the CLI and the HTTP
service so the two surfaces cannot drift.  Validation is closed: unknown
fields are rejected by name (a silently ignored typo in a judgment document
would corrupt an audit), and documents from a newer schema version are
rejected outright rather than partially read.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Mapping, Sequence, TypeVar

from .assessment import (
    Adjustment,
    AdjustmentCategory,
    AdjustmentMode,
    AdjustmentTarget,
    AuditStep,
    BaselineSource,
    CURRENT_SCHEMA_VERSION,
    Provenance,
    ResultDirection,
    StudyAssessment,
    WoeReport,
    report_flags,
)
from .core import CONVERTIBLE_UNITS, OperatingCharacteristics
from .errors import DocumentError, EvidenceError
from .power import PowerEstimate, Sides, TwoGroupBinaryDesign
from .sensitivity import AdjustmentImpact, DesignWoe, SweepResult, SweepSpec, SweepTarget

E = TypeVar("E", bound=enum.Enum)


# ---------------------------------------------------------------------------
# Field readers.  Every reader names the offending field on failure.
# ---------------------------------------------------------------------------


def _as_object(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise DocumentError(f"field '{path}' must be a JSON object", field=path)
    return value


def _reject_unknown(obj: Mapping[str, Any], allowed: set[str], path: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        where = f"{path}.{unknown[0]}" if path else unknown[0]
        raise DocumentError(
            f"unknown field '{where}'; allowed fields: {', '.join(sorted(allowed))}",
            field=where,
        )


def _get(obj: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in obj:
        where = f"{path}.{key}" if path else key
        raise DocumentError(f"missing required field '{where}'", field=where)
    return obj[key]


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _as_string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise DocumentError(f"field '{path}' must be a string", field=path)
    return value


def _as_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"field '{path}' must be a number", field=path)
    return float(value)


def _as_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"field '{path}' must be an integer", field=path)
    return value


def _as_enum(value: Any, enum_type: type[E], path: str) -> E:
    value = _as_string(value, path)
    try:
        return enum_type(value)
    except ValueError:
        allowed = ", ".join(member.value for member in enum_type)
        raise DocumentError(
            f"field '{path}' must be one of: {allowed}; got '{value}'", field=path
        ) from None


def _check_rfc3339(value: str, path: str) -> str:
    candidate = value.replace("Z", "+00:00") if value.endswith("Z") else value
    try:
        parsed = datetime.fromisoformat(candidate)
    except ValueError:
        raise DocumentError(
            f"field '{path}' must be an RFC 3339 timestamp, got '{value}'", field=path
        ) from None
    if parsed.tzinfo is None:
        raise DocumentError(
            f"field '{path}' must carry a UTC offset (RFC 3339), got '{value}'",
            field=path,
        )
    return value


# ---------------------------------------------------------------------------
# Assessment documents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AssessmentDocument:
    """A study assessment plus file-level metadata."""

    assessment: StudyAssessment
    created_at: str | None = None
    tags: tuple[str, ...] = ()


_DOCUMENT_FIELDS = {
    "schema_version",
    "id",
    "title",
    "description",
    "result_direction",
    "baseline",
    "baseline_provenance",
    "adjustments",
    "prior_p_h1",
    "created_at",
    "tags",
}

_CHARACTERISTICS_FIELDS = {"power", "fpr"}
_PROVENANCE_FIELDS = {"source", "note"}
_ADJUSTMENT_FIELDS = {"target", "mode", "value", "rationale", "category"}


def _parse_characteristics(value: Any, path: str) -> OperatingCharacteristics:
    obj = _as_object(value, path)
    _reject_unknown(obj, _CHARACTERISTICS_FIELDS, path)
    power = _as_number(_get(obj, "power", path), _join(path, "power"))
    fpr = _as_number(_get(obj, "fpr", path), _join(path, "fpr"))
    return _wrap_domain_error(
        lambda: OperatingCharacteristics(power=power, fpr=fpr), path
    )


def _parse_adjustment(value: Any, path: str) -> Adjustment:
    obj = _as_object(value, path)
    _reject_unknown(obj, _ADJUSTMENT_FIELDS, path)
    target = _as_enum(_get(obj, "target", path), AdjustmentTarget, _join(path, "target"))
    mode = _as_enum(_get(obj, "mode", path), AdjustmentMode, _join(path, "mode"))
    amount = _as_number(_get(obj, "value", path), _join(path, "value"))
    rationale = _as_string(_get(obj, "rationale", path), _join(path, "rationale"))
    category = _as_enum(
        _get(obj, "category", path), AdjustmentCategory, _join(path, "category")
    )
    return _wrap_domain_error(
        lambda: Adjustment(
            target=target, mode=mode, value=amount, rationale=rationale, category=category
        ),
        path,
    )


def _wrap_domain_error(build, path: str):
    try:
        return build()
    except DocumentError:
        raise
    except EvidenceError as exc:
        raise DocumentError(f"invalid value at '{path}': {exc}", field=path) from exc


def check_schema_version(data: Mapping[str, Any]) -> int:
    """Validate the top-level schema_version before reading anything else."""
    version = _as_int(_get(data, "schema_version", ""), "schema_version")
    if version < 1:
        raise DocumentError(
            f"schema_version must be a positive integer, got {version}",
            field="schema_version",
        )
    if version > CURRENT_SCHEMA_VERSION:
        raise DocumentError(
            f"document schema_version {version} is newer than the supported "
            f"version {CURRENT_SCHEMA_VERSION}; refusing to read it",
            field="schema_version",
        )
    return version


def parse_assessment_document(data: Any) -> AssessmentDocument:
    """Parse and validate one assessment document (strict schema)."""
    obj = _as_object(data, "document")
    version = check_schema_version(obj)
    _reject_unknown(obj, _DOCUMENT_FIELDS, "")
    adjustments_raw = _get(obj, "adjustments", "")
    if not isinstance(adjustments_raw, list):
        raise DocumentError("field 'adjustments' must be a list", field="adjustments")
    adjustments = tuple(
        _parse_adjustment(item, f"adjustments[{i}]")
        for i, item in enumerate(adjustments_raw)
    )
    provenance_obj = _as_object(_get(obj, "baseline_provenance", ""), "baseline_provenance")
    _reject_unknown(provenance_obj, _PROVENANCE_FIELDS, "baseline_provenance")
    provenance = Provenance(
        source=_as_enum(
            _get(provenance_obj, "source", "baseline_provenance"),
            BaselineSource,
            "baseline_provenance.source",
        ),
        note=_as_string(provenance_obj.get("note", ""), "baseline_provenance.note"),
    )
    prior = _as_number(_get(obj, "prior_p_h1", ""), "prior_p_h1")
    identifier = _as_string(_get(obj, "id", ""), "id")
    title = _as_string(_get(obj, "title", ""), "title")
    description = _as_string(obj.get("description", ""), "description")
    direction = _as_enum(_get(obj, "result_direction", ""), ResultDirection, "result_direction")
    baseline = _parse_characteristics(_get(obj, "baseline", ""), "baseline")
    # The only domain check left at construction time is the interior prior.
    assessment = _wrap_domain_error(
        lambda: StudyAssessment(
            id=identifier,
            title=title,
            description=description,
            result_direction=direction,
            baseline=baseline,
            baseline_provenance=provenance,
            adjustments=adjustments,
            prior_p_h1=prior,
            schema_version=version,
        ),
        "prior_p_h1",
    )
    created_at = None
    if obj.get("created_at") is not None:
        created_at = _check_rfc3339(
            _as_string(obj["created_at"], "created_at"), "created_at"
        )
    tags_raw = obj.get("tags", [])
    if not isinstance(tags_raw, list):
        raise DocumentError("field 'tags' must be a list of strings", field="tags")
    tags = tuple(_as_string(t, f"tags[{i}]") for i, t in enumerate(tags_raw))
    return AssessmentDocument(assessment=assessment, created_at=created_at, tags=tags)


def characteristics_to_dict(oc: OperatingCharacteristics) -> dict[str, float]:
    return {"power": oc.power, "fpr": oc.fpr}


def adjustment_to_dict(adj: Adjustment) -> dict[str, Any]:
    return {
        "target": adj.target.value,
        "mode": adj.mode.value,
        "value": adj.value,
        "rationale": adj.rationale,
        "category": adj.category.value,
    }


def assessment_document_to_dict(doc: AssessmentDocument) -> dict[str, Any]:
    a = doc.assessment
    data: dict[str, Any] = {
        "schema_version": a.schema_version,
        "id": a.id,
        "title": a.title,
        "description": a.description,
        "result_direction": a.result_direction.value,
        "baseline": characteristics_to_dict(a.baseline),
        "baseline_provenance": {
            "source": a.baseline_provenance.source.value,
            "note": a.baseline_provenance.note,
        },
        "adjustments": [adjustment_to_dict(adj) for adj in a.adjustments],
        "prior_p_h1": a.prior_p_h1,
        "tags": list(doc.tags),
    }
    if doc.created_at is not None:
        data["created_at"] = doc.created_at
    return data


def load_assessment_document(path: str) -> AssessmentDocument:
    """Read and validate an assessment document from a JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path} is not valid JSON: {exc}") from exc
    return parse_assessment_document(data)


def dump_assessment_document(doc: AssessmentDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(assessment_document_to_dict(doc), handle, indent=2)
        handle.write("\n")


# ---------------------------------------------------------------------------
# Result serialization (reports, sweeps, power estimates, impacts)
# ---------------------------------------------------------------------------


def audit_step_to_dict(step: AuditStep) -> dict[str, Any]:
    return {
        "adjustment": adjustment_to_dict(step.adjustment),
        "before": characteristics_to_dict(step.before),
        "after": characteristics_to_dict(step.after),
        "clamped": step.clamped,
    }


def report_to_dict(report: WoeReport, a: StudyAssessment) -> dict[str, Any]:
    return {
        "schema_version": CURRENT_SCHEMA_VERSION,
        "kind": "woe_report",
        "assessment_id": a.id,
        "result_direction": a.result_direction.value,
        "effective": characteristics_to_dict(report.effective),
        "lr_for_h1": report.lr_for_h1,
        "woe_evidence": report.woe_evidence,
        "woe_prior": report.woe_prior,
        "woe_total": report.woe_total,
        "posterior_p_h1": report.posterior_p_h1,
        "audit_trail": [audit_step_to_dict(step) for step in report.audit_trail],
        "flags": list(report_flags(report, a)),
    }


def sweep_result_to_dict(result: SweepResult) -> dict[str, Any]:
    return {
        "schema_version": CURRENT_SCHEMA_VERSION,
        "kind": "sweep_result",
        "target": result.target.value,
        "points": [
            {
                "value": p.value,
                "woe_total": p.woe_total,
                "posterior_p_h1": p.posterior_p_h1,
                "error": p.error,
            }
            for p in result.points
        ],
    }


def power_estimate_to_dict(estimate: PowerEstimate) -> dict[str, Any]:
    data: dict[str, Any] = {
        "schema_version": CURRENT_SCHEMA_VERSION,
        "kind": "power_estimate",
        "power": estimate.power,
        "method": estimate.method.value,
        "warnings": list(estimate.warnings),
    }
    if estimate.iterations is not None:
        data["iterations"] = estimate.iterations
        data["seed"] = estimate.seed
        data["mc_standard_error"] = estimate.mc_standard_error
    return data


def impacts_to_dict(
    impacts: tuple[AdjustmentImpact, ...], woe_full: float
) -> dict[str, Any]:
    return {
        "schema_version": CURRENT_SCHEMA_VERSION,
        "kind": "adjustment_impacts",
        "woe_full": woe_full,
        "impacts": [
            {
                "index": imp.index,
                "adjustment": adjustment_to_dict(imp.adjustment),
                "woe_without": imp.woe_without,
                "delta_woe": imp.delta_woe,
            }
            for imp in impacts
        ],
    }


def design_rows_to_dict(rows: Sequence[DesignWoe]) -> dict[str, Any]:
    return {
        "schema_version": CURRENT_SCHEMA_VERSION,
        "kind": "design_comparison",
        "designs": [
            {
                "power": row.characteristics.power,
                "fpr": row.characteristics.fpr,
                "woe_db": row.woe,
                "delta_db": row.delta_vs_base,
                "is_base": row.is_base,
            }
            for row in rows
        ],
    }


# ---------------------------------------------------------------------------
# Request parsing shared by the HTTP service
# ---------------------------------------------------------------------------

_SWEEP_FIELDS = {"target", "grid", "base"}
_POWER_FIELDS = {"n1", "n2", "p1", "p2", "alpha", "sides", "simulate", "iterations", "seed"}
_CONVERT_FIELDS = {"value", "from", "to"}


@dataclass(frozen=True)
class PowerRequest:
    design: TwoGroupBinaryDesign
    simulate: bool = False
    iterations: int = 100_000
    seed: int = 0


def parse_power_request(data: Any) -> PowerRequest:
    obj = _as_object(data, "power request")
    _reject_unknown(obj, _POWER_FIELDS, "")
    design = _wrap_domain_error(
        lambda: TwoGroupBinaryDesign(
            n1=_as_int(_get(obj, "n1", ""), "n1"),
            n2=_as_int(_get(obj, "n2", ""), "n2"),
            p1=_as_number(_get(obj, "p1", ""), "p1"),
            p2=_as_number(_get(obj, "p2", ""), "p2"),
            alpha=_as_number(_get(obj, "alpha", ""), "alpha"),
            sides=_as_enum(obj.get("sides", Sides.TWO_SIDED.value), Sides, "sides"),
        ),
        "design",
    )
    simulate = obj.get("simulate", False)
    if not isinstance(simulate, bool):
        raise DocumentError("field 'simulate' must be a boolean", field="simulate")
    iterations = _as_int(obj.get("iterations", 100_000), "iterations")
    seed = _as_int(obj.get("seed", 0), "seed")
    return PowerRequest(design=design, simulate=simulate, iterations=iterations, seed=seed)


@dataclass(frozen=True)
class ConvertRequest:
    value: float
    from_unit: str
    to_unit: str


def parse_convert_request(data: Any) -> ConvertRequest:
    obj = _as_object(data, "convert request")
    _reject_unknown(obj, _CONVERT_FIELDS, "")
    value = _as_number(_get(obj, "value", ""), "value")
    from_unit = _as_string(_get(obj, "from", ""), "from")
    to_unit = _as_string(_get(obj, "to", ""), "to")
    for name, unit in (("from", from_unit), ("to", to_unit)):
        if unit not in CONVERTIBLE_UNITS:
            raise DocumentError(
                f"field '{name}' must be one of: {', '.join(CONVERTIBLE_UNITS)}; got '{unit}'",
                field=name,
            )
    return ConvertRequest(value=value, from_unit=from_unit, to_unit=to_unit)


def parse_sweep_spec(data: Any) -> SweepSpec:
    obj = _as_object(data, "sweep")
    _reject_unknown(obj, _SWEEP_FIELDS, "")
    target = _as_enum(_get(obj, "target", ""), SweepTarget, "target")
    grid_raw = _get(obj, "grid", "")
    if not isinstance(grid_raw, list) or not grid_raw:
        raise DocumentError("field 'grid' must be a non-empty list of numbers", field="grid")
    grid = tuple(_as_number(v, f"grid[{i}]") for i, v in enumerate(grid_raw))
    base = parse_assessment_document(_get(obj, "base", "")).assessment
    try:
        return SweepSpec(target=target, grid=grid, base=base)
    except (ValueError, EvidenceError) as exc:
        raise DocumentError(f"invalid sweep: {exc}", field="grid") from exc
