"""Command-line interface for the weight-of-evidence toolkit.

Every subcommand that produces structured output accepts ``--output json``
and emits the same canonical documents as the HTTP service, so scripts can
target either surface interchangeably.  Exit codes are stable: 1 for I/O
failures, 2 for validation failures (bad flags, bad documents, bad values),
3 for evaluation failures on otherwise well-formed input.
"""

from __future__ import annotations

import json
import sys
from typing import Any, Mapping, NoReturn, Sequence

import click

from .assessment import (
    ReportFormat,
    ResultDirection,
    StudyAssessment,
    WoeReport,
    evaluate,
    render_report,
)
from .core import (
    CONVERTIBLE_UNITS,
    OperatingCharacteristics,
    combine_woe,
    convert_value,
    prior_weight,
    woe_to_probability,
)
from .documents import (
    AssessmentDocument,
    design_rows_to_dict,
    impacts_to_dict,
    load_assessment_document,
    power_estimate_to_dict,
    report_to_dict,
    sweep_result_to_dict,
)
from .errors import (
    DocumentError,
    EvidenceError,
    InvalidAdjustmentError,
    InvalidCountsError,
    InvalidDesignError,
)
from .power import (
    Sides,
    TwoGroupBinaryDesign,
    simulate_two_group_power,
    two_proportion_power,
)
from .sensitivity import (
    SweepSpec,
    SweepTarget,
    adjustment_impacts,
    design_compare,
    sweep,
)

EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_EVALUATION = 3

_SIG_DIGITS = 6


def _fail(message: str, code: int) -> NoReturn:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _format_sig(value: float) -> str:
    # round-trips through float so 0.909091 prints without a trailing exponent
    return repr(float(f"{value:.{_SIG_DIGITS}g}"))


def _echo_json(payload: Mapping[str, Any]) -> None:
    click.echo(json.dumps(payload, indent=2))


def _echo_table(rows: Sequence[Sequence[str]]) -> None:
    for row in rows:
        click.echo("\t".join(row))


def _load_document(path: str) -> AssessmentDocument:
    try:
        return load_assessment_document(path)
    except OSError as exc:
        _fail(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO)
    except DocumentError as exc:
        _fail(str(exc), EXIT_VALIDATION)


def _evaluate_document(a: StudyAssessment) -> WoeReport:
    try:
        return evaluate(a)
    except InvalidAdjustmentError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    except EvidenceError as exc:
        _fail(str(exc), EXIT_EVALUATION)


@click.group()
@click.version_option(package_name="woekit")
def main() -> None:
    """Turn study operating characteristics into decibels of evidence."""


@main.command("evaluate")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option(
    "--output",
    type=click.Choice(["text", "markdown", "json"]),
    default="text",
    show_default=True,
    help="Report rendering.",
)
def evaluate_command(path: str, output: str) -> None:
    """Evaluate an assessment document and render its report."""
    document = _load_document(path)
    report = _evaluate_document(document.assessment)
    if output == "json":
        _echo_json(report_to_dict(report, document.assessment))
    else:
        fmt = ReportFormat.MARKDOWN if output == "markdown" else ReportFormat.PLAIN_TEXT
        click.echo(render_report(report, document.assessment, fmt))


@main.command("convert")
@click.argument("value", type=float)
@click.option(
    "--from",
    "from_unit",
    type=click.Choice(list(CONVERTIBLE_UNITS)),
    required=True,
    help="Unit of VALUE.",
)
@click.option(
    "--to",
    "to_unit",
    type=click.Choice(list(CONVERTIBLE_UNITS)),
    required=True,
    help="Unit to convert to.",
)
def convert_command(value: float, from_unit: str, to_unit: str) -> None:
    """Convert one value between decibels, odds, and probability."""
    try:
        result = convert_value(value, from_unit, to_unit)
    except EvidenceError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    click.echo(_format_sig(result))


@main.command("power")
@click.option("--n1", type=int, required=True, help="Group 1 size.")
@click.option("--n2", type=int, required=True, help="Group 2 size.")
@click.option("--p1", type=float, required=True, help="Group 1 event rate.")
@click.option("--p2", type=float, required=True, help="Group 2 event rate.")
@click.option("--alpha", type=float, default=0.05, show_default=True, help="Test size.")
@click.option(
    "--sides",
    type=click.Choice([s.value for s in Sides]),
    default=Sides.TWO_SIDED.value,
    show_default=True,
)
@click.option("--simulate", is_flag=True, help="Estimate by Monte Carlo instead.")
@click.option("--iterations", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--output",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def power_command(
    n1: int,
    n2: int,
    p1: float,
    p2: float,
    alpha: float,
    sides: str,
    simulate: bool,
    iterations: int,
    seed: int,
    output: str,
) -> None:
    """Estimate power for a two-group binary-outcome design."""
    try:
        design = TwoGroupBinaryDesign(
            n1=n1, n2=n2, p1=p1, p2=p2, alpha=alpha, sides=Sides(sides)
        )
        if simulate:
            estimate = simulate_two_group_power(design, iterations=iterations, seed=seed)
        else:
            estimate = two_proportion_power(design)
    except InvalidDesignError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    except EvidenceError as exc:
        _fail(str(exc), EXIT_EVALUATION)
    if output == "json":
        _echo_json(power_estimate_to_dict(estimate))
        return
    click.echo(f"power = {estimate.power:.4f}")
    if estimate.mc_standard_error is not None:
        click.echo(f"mc_standard_error = {estimate.mc_standard_error:.4f}")
    for warning in estimate.warnings:
        click.echo(f"warning: {warning}")


@main.command("sweep")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option(
    "--target",
    type=click.Choice([t.value for t in SweepTarget]),
    required=True,
    help="Quantity to vary.",
)
@click.option("--grid", required=True, help="Comma-separated values, increasing.")
@click.option(
    "--output",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def sweep_command(path: str, target: str, grid: str, output: str) -> None:
    """Sweep one input of an assessment over a grid."""
    document = _load_document(path)
    try:
        values = tuple(float(part) for part in grid.split(","))
    except ValueError:
        _fail(f"--grid must be comma-separated numbers, got '{grid}'", EXIT_VALIDATION)
    try:
        spec = SweepSpec(
            target=SweepTarget(target), grid=values, base=document.assessment
        )
    except (ValueError, EvidenceError) as exc:
        _fail(str(exc), EXIT_VALIDATION)
    try:
        result = sweep(spec)
    except EvidenceError as exc:
        _fail(str(exc), EXIT_EVALUATION)
    if output == "json":
        _echo_json(sweep_result_to_dict(result))
        return
    rows = [["value", "woe_total", "posterior_p_h1", "error"]]
    for point in result.points:
        if point.error is not None:
            rows.append([_format_sig(point.value), "", "", point.error])
        else:
            rows.append(
                [
                    _format_sig(point.value),
                    _format_sig(point.woe_total),
                    _format_sig(point.posterior_p_h1),
                    "",
                ]
            )
    _echo_table(rows)


def _parse_characteristics_flag(text: str, flag: str) -> OperatingCharacteristics:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2:
        _fail(f"{flag} must look like POWER,FPR; got '{text}'", EXIT_VALIDATION)
    try:
        power, fpr = float(parts[0]), float(parts[1])
    except ValueError:
        _fail(f"{flag} must be two numbers; got '{text}'", EXIT_VALIDATION)
    try:
        return OperatingCharacteristics(power=power, fpr=fpr)
    except EvidenceError as exc:
        _fail(f"{flag}: {exc}", EXIT_VALIDATION)


@main.command("design")
@click.option("--base", "base_text", required=True, help="Baseline as POWER,FPR.")
@click.option(
    "--variant",
    "variant_texts",
    multiple=True,
    required=True,
    help="Alternative as POWER,FPR; repeatable.",
)
@click.option(
    "--direction",
    type=click.Choice([d.value for d in ResultDirection]),
    default="positive",
    show_default=True,
    help="Study outcome the comparison assumes.",
)
@click.option(
    "--output",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def design_command(
    base_text: str, variant_texts: tuple[str, ...], direction: str, output: str
) -> None:
    """Compare the evidential yield of candidate designs."""
    base = _parse_characteristics_flag(base_text, "--base")
    variants = tuple(
        _parse_characteristics_flag(text, "--variant") for text in variant_texts
    )
    try:
        rows = design_compare(base, variants, direction=ResultDirection(direction))
    except EvidenceError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    if output == "json":
        _echo_json(design_rows_to_dict(rows))
        return
    table = [["power", "fpr", "woe_db", "delta_db", "role"]]
    for row in rows:
        table.append(
            [
                _format_sig(row.characteristics.power),
                _format_sig(row.characteristics.fpr),
                _format_sig(row.woe),
                _format_sig(row.delta_vs_base),
                "base" if row.is_base else "variant",
            ]
        )
    _echo_table(table)


@main.command("impacts")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option(
    "--output",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def impacts_command(path: str, output: str) -> None:
    """Rank each adjustment by its leave-one-out effect on the total."""
    document = _load_document(path)
    report = _evaluate_document(document.assessment)
    try:
        impacts = adjustment_impacts(document.assessment)
    except EvidenceError as exc:
        _fail(str(exc), EXIT_EVALUATION)
    if output == "json":
        _echo_json(impacts_to_dict(impacts, report.woe_total))
        return
    click.echo(f"woe_total = {_format_sig(report.woe_total)}")
    if not impacts:
        click.echo("no adjustments")
        return
    table = [["index", "target", "mode", "value", "category", "woe_without", "delta_woe"]]
    for imp in impacts:
        table.append(
            [
                str(imp.index),
                imp.adjustment.target.value,
                imp.adjustment.mode.value,
                _format_sig(imp.adjustment.value),
                imp.adjustment.category.value,
                _format_sig(imp.woe_without),
                _format_sig(imp.delta_woe),
            ]
        )
    _echo_table(table)


@main.command("combine", context_settings={"ignore_unknown_options": True})
@click.argument("sources", nargs=-1, required=True)
@click.option(
    "--prior",
    type=float,
    default=0.5,
    show_default=True,
    help="Prior probability of H1.",
)
@click.option(
    "--output",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def combine_command(sources: tuple[str, ...], prior: float, output: str) -> None:
    """Sum evidence weights from numbers or report JSON files."""
    weights = []
    for source in sources:
        try:
            weights.append(float(source))
            continue
        except ValueError:
            pass
        try:
            with open(source, "r", encoding="utf-8") as handle:
                payload = json.load(handle)
        except OSError as exc:
            _fail(f"cannot read {source}: {exc.strerror or exc}", EXIT_IO)
        except json.JSONDecodeError as exc:
            _fail(f"{source} is not valid JSON: {exc}", EXIT_VALIDATION)
        if not isinstance(payload, dict) or not isinstance(
            payload.get("woe_evidence"), (int, float)
        ):
            _fail(
                f"{source} does not contain a numeric 'woe_evidence' field",
                EXIT_VALIDATION,
            )
        weights.append(float(payload["woe_evidence"]))
    try:
        woe_prior = prior_weight(prior)
    except EvidenceError as exc:
        _fail(f"--prior: {exc}", EXIT_VALIDATION)
    try:
        woe_evidence = combine_woe(weights)
        woe_total = combine_woe(weights, prior=woe_prior)
        posterior = woe_to_probability(woe_total)
    except EvidenceError as exc:
        _fail(str(exc), EXIT_EVALUATION)
    if output == "json":
        _echo_json(
            {
                "schema_version": 1,
                "kind": "woe_combination",
                "inputs": weights,
                "woe_evidence": woe_evidence,
                "woe_prior": woe_prior,
                "woe_total": woe_total,
                "posterior_p_h1": posterior,
            }
        )
        return
    click.echo(f"woe_evidence = {_format_sig(woe_evidence)} dB")
    click.echo(f"woe_prior = {_format_sig(woe_prior)} dB")
    click.echo(f"woe_total = {_format_sig(woe_total)} dB")
    click.echo(f"posterior_p_h1 = {_format_sig(posterior)}")


@main.command("serve")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--bind", default="127.0.0.1", show_default=True, help="Interface to bind.")
def serve_command(port: int, bind: str) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=bind, port=port)


if __name__ == "__main__":
    main()
