"""Acceptance gate: one test per release criterion.

Each test prints exactly one PASS/FAIL line (visible regardless of pytest
capture settings) and then asserts, so a plain ``pytest`` run doubles as
the release checklist.
"""

import json
import sys

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from woekit import (
    OperatingCharacteristics,
    ResultDirection,
    design_compare,
    evaluate,
    rates_from_case_split,
    simulate_two_group_power,
    two_proportion_power,
    woe_to_odds,
    woe_to_probability,
)
from woekit.cli import main
from woekit.power import TwoGroupBinaryDesign
from woekit.service import create_app

from helpers import (
    SAMPLE_NAMES,
    build_assessment,
    load_sample,
    numerically_equal,
    read_sample_json,
    sample_path,
)

import test_properties


def report(capsys, label: str, ok: bool) -> None:
    # Suspend capture so the line shows up in any pytest invocation.
    with capsys.disabled():
        print(f"{'PASS' if ok else 'FAIL'}: {label}", flush=True)
    assert ok, label


def within(value: float, expected: float, tolerance: float) -> bool:
    return abs(value - expected) <= tolerance


def test_criterion_1_drug_example_positive_result(capsys):
    result = evaluate(load_sample("drug_positive").assessment)
    ok = within(result.woe_total, 6.02, 0.01) and within(
        result.posterior_p_h1, 0.800, 0.005
    )
    report(capsys, "drug example, positive result: 6.02 dB, posterior 0.800", ok)


def test_criterion_2_drug_example_negative_result(capsys):
    result = evaluate(load_sample("drug_negative").assessment)
    ok = within(result.woe_total, -3.27, 0.01) and within(
        1.0 - result.posterior_p_h1, 0.680, 0.005
    )
    report(capsys, "drug example, negative result: -3.27 dB, P(H0) 0.680", ok)


def test_criterion_3_vitamin_d_baseline(capsys):
    result = evaluate(load_sample("vitamin_d").assessment)
    ok = within(result.woe_total, -4.10, 0.01) and within(
        1.0 - result.posterior_p_h1, 0.720, 0.005
    )
    report(capsys, "vitamin-D baseline: -4.10 dB, P(H0) 0.720", ok)


def test_criterion_4_vitamin_d_degraded_power(capsys):
    degraded = evaluate(load_sample("vitamin_d_degraded").assessment)
    companion = evaluate(
        build_assessment(0.20, 0.05, direction=ResultDirection.NEGATIVE)
    )
    ok = (
        within(degraded.woe_total, -0.51, 0.01)
        and within(1.0 - degraded.posterior_p_h1, 0.53, 0.005)
        and within(companion.woe_total, -0.75, 0.01)
        and within(1.0 - companion.posterior_p_h1, 0.543, 0.005)
    )
    report(capsys, "vitamin-D degraded power: -0.51 dB at fpr 0.10, -0.75 dB at fpr 0.05", ok)


def test_criterion_5_decibel_table(capsys):
    printed_rows = [
        (0.0, 1.0, 0.50),
        (3.0, 2.0, 0.67),
        (6.0, 4.0, 0.80),
        (10.0, 10.0, 0.91),
        (20.0, 100.0, 0.99),
        (30.0, 1000.0, 0.999),
    ]
    ok = all(
        abs(woe_to_odds(db) - odds) <= 0.005 * odds
        and within(woe_to_probability(db), probability, 0.005)
        for db, odds, probability in printed_rows
    )
    # The 12 dB row is pinned at the computed values, not the commonly
    # quoted rounding to 19:1 and 0.95.
    ok = ok and round(woe_to_odds(12.0), 2) == 15.85
    ok = ok and round(woe_to_probability(12.0), 3) == 0.941
    report(capsys, "decibel table rows 0/3/6/10/12/20/30 reproduce printed values", ok)


def test_criterion_6_power_reproduction(capsys):
    p1, p2 = rates_from_case_split(348_598, 449, 50)
    design = TwoGroupBinaryDesign(n1=174_299, n2=174_299, p1=p1, p2=p2, alpha=0.05)
    analytic = two_proportion_power(design)
    mc = simulate_two_group_power(design, iterations=100_000, seed=20240822)
    odds_ratio = (p2 / (1.0 - p2)) / (p1 / (1.0 - p1))
    ok = (
        within(analytic.power, 0.65, 0.02)
        and within(mc.power, analytic.power, max(0.01, 3.0 * mc.mc_standard_error))
        and within(odds_ratio, 0.80, 0.01)
    )
    report(capsys, "trial power 0.65 analytic, Monte Carlo agrees, odds ratio 0.80", ok)


def test_criterion_7_design_comparisons(capsys):
    rows = design_compare(
        OperatingCharacteristics(power=0.8, fpr=0.05),
        [
            OperatingCharacteristics(power=0.95, fpr=0.05),
            OperatingCharacteristics(power=0.8, fpr=0.01),
        ],
    )
    ok = (
        within(rows[0].woe, 12.04, 0.05)
        and within(rows[1].woe, 12.79, 0.05)
        and within(rows[2].woe, 19.03, 0.05)
    )
    report(capsys, "design comparisons: 12.04, 12.79, 19.03 dB", ok)


def test_criterion_8_property_suites(capsys):
    # Each call reruns the decorated search (1,000 randomized cases) or,
    # for the calibration check, the fixed-seed 1,000-case oracle sweep.
    suites = [
        test_properties.test_woe_antisymmetric_under_hypothesis_swap,
        test_properties.test_decibel_additivity_matches_odds_multiplication,
        test_properties.test_probability_odds_round_trip,
        test_properties.test_woe_odds_round_trip,
        test_properties.test_probability_woe_round_trip,
        test_properties.test_futility_bound,
        test_properties.test_sweep_monotone_in_power,
        test_properties.test_sweep_monotone_in_fpr,
        test_properties.test_required_power_inverts_forward_woe,
        test_properties.test_null_design_monte_carlo_calibration,
    ]
    failed = []
    for suite in suites:
        try:
            suite()
        except BaseException:
            failed.append(suite.__name__)
    report(capsys, "property suites: 1,000 randomized cases each", not failed)


def test_criterion_9_interface_parity(capsys):
    client = TestClient(create_app())
    runner = CliRunner()
    ok = True
    for name in SAMPLE_NAMES:
        cli = runner.invoke(main, ["evaluate", str(sample_path(name)), "--output", "json"])
        response = client.post("/v1/evaluate", json=read_sample_json(name))
        ok = ok and cli.exit_code == 0 and response.status_code == 200
        ok = ok and numerically_equal(json.loads(cli.output), response.json())
    # Strict-schema rejection through both surfaces.
    raw = read_sample_json("drug_positive")
    raw["extra_field"] = 1
    rejected = client.post("/v1/evaluate", json=raw)
    ok = ok and rejected.status_code == 400
    ok = ok and "extra_field" in rejected.json()["message"]
    with runner.isolated_filesystem():
        with open("bad.json", "w", encoding="utf-8") as handle:
            json.dump(raw, handle)
        cli = runner.invoke(main, ["evaluate", "bad.json"])
    ok = ok and cli.exit_code == 2 and "extra_field" in cli.output
    report(capsys, "interface parity: CLI and service agree to 1e-12, both reject strictly", ok)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
