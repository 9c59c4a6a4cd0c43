import { describe, expect, it } from "vitest";

import { renderEmptyGauge, renderGauge } from "../src/gauge.js";
import { ScenarioSet } from "../src/scenarios.js";
import { renderSweepChart } from "../src/sweepchart.js";
import { AssessmentDocument, SweepResult, WoeReport, freshDocument } from "../src/types.js";

function reportFor(woe: number, posterior: number, power = 0.8, fpr = 0.05): WoeReport {
  return {
    schema_version: 1,
    kind: "woe_report",
    assessment_id: "scenario",
    result_direction: "positive",
    effective: { power, fpr },
    lr_for_h1: 16,
    woe_evidence: woe,
    woe_prior: 0,
    woe_total: woe,
    posterior_p_h1: posterior,
    audit_trail: [],
    flags: [],
  };
}

describe("ScenarioSet", () => {
  it("requires unique non-blank names", () => {
    const set = new ScenarioSet();
    const doc: AssessmentDocument = freshDocument();
    expect(set.add("base", doc, reportFor(12.04, 0.941))).toBeNull();
    expect(set.add("base", doc, reportFor(12.79, 0.95))).toMatch(/already in use/);
    expect(set.add("   ", doc, reportFor(12.79, 0.95))).toMatch(/must not be blank/);
    expect(set.names).toEqual(["base"]);
  });

  it("stores a copy of the document", () => {
    const set = new ScenarioSet();
    const doc = freshDocument();
    set.add("snapshot", doc, reportFor(6.02, 0.8));
    doc.baseline.power = 0.01;
    expect(set.get("snapshot")?.document.baseline.power).toBe(0.8);
  });

  it("renders one row per scenario with service numbers", () => {
    const set = new ScenarioSet();
    set.add("standard", freshDocument(), reportFor(12.04, 0.941, 0.8, 0.05));
    set.add("high power", freshDocument(), reportFor(12.79, 0.95, 0.95, 0.05));
    set.add("strict alpha", freshDocument(), reportFor(19.03, 0.988, 0.8, 0.01));
    const table = set.renderTable();
    expect(table).toContain("12.04");
    expect(table).toContain("12.79");
    expect(table).toContain("19.03");
    expect(table).toContain("<td>0.950</td>");
    expect(table).toContain("vs standard");
    expect(table).toContain("+0.75");
    expect(table).toContain("+6.99");
  });

  it("renders a single scenario without a diff column", () => {
    const set = new ScenarioSet();
    set.add("only", freshDocument(), reportFor(6.02, 0.8));
    const table = set.renderTable();
    expect(table).not.toContain("vs ");
    expect((table.match(/<tr>/g) ?? []).length).toBe(2);
  });

  it("shows zero diff for a duplicate of the baseline", () => {
    const set = new ScenarioSet();
    set.add("base", freshDocument(), reportFor(12.04, 0.941));
    set.add("copy", freshDocument(), reportFor(12.04, 0.941));
    expect(set.renderTable()).toContain("<td>0.00</td>");
  });

  it("reassigns the baseline when it is removed", () => {
    const set = new ScenarioSet();
    set.add("a", freshDocument(), reportFor(1, 0.5));
    set.add("b", freshDocument(), reportFor(2, 0.6));
    expect(set.baselineName).toBe("a");
    set.remove("a");
    expect(set.baselineName).toBe("b");
  });
});

describe("gauge rendering", () => {
  it("shows the empty state before any evidence", () => {
    const html = renderEmptyGauge();
    expect(html).toContain("0.00 dB");
    expect(html).toContain("no evidence entered");
  });

  it("formats every number straight from the report", () => {
    const html = renderGauge(reportFor(6.020599913279624, 0.8, 0.6, 0.15));
    expect(html).toContain("6.02 dB");
    expect(html).toContain("0.800");
    expect(html).toContain("0.600");
    expect(html).toContain("0.150");
    expect(html).not.toContain("stale");
  });

  it("marks stale renders", () => {
    expect(renderGauge(reportFor(1, 0.5), { stale: true })).toContain("stale");
  });
});

describe("sweep chart rendering", () => {
  const result: SweepResult = {
    schema_version: 1,
    kind: "sweep_result",
    target: "power",
    points: [
      { value: 0.2, woe_total: -0.51, posterior_p_h1: 0.47, error: null },
      { value: 0.4, woe_total: null, posterior_p_h1: null, error: "fpr must stay below power" },
      { value: 0.65, woe_total: -4.1, posterior_p_h1: 0.28, error: null },
    ],
  };

  it("breaks lines at error points and explains the gap", () => {
    const svg = renderSweepChart(result, 0.65);
    expect((svg.match(/<polyline class="series-woe"/g) ?? []).length).toBe(2);
    expect(svg).toContain("gap-marker");
    expect(svg).toContain("fpr must stay below power");
  });

  it("exposes point values for adopt-on-click and marks the current value", () => {
    const svg = renderSweepChart(result, 0.65);
    expect(svg).toContain('data-value="0.2"');
    expect(svg).toContain('data-value="0.65"');
    expect(svg).toContain("current-marker");
  });

  it("degenerates cleanly for a single point", () => {
    const single: SweepResult = {
      schema_version: 1,
      kind: "sweep_result",
      target: "prior",
      points: [{ value: 0.5, woe_total: 6.02, posterior_p_h1: 0.8, error: null }],
    };
    const svg = renderSweepChart(single, 0.5);
    expect(svg).toContain('data-value="0.5"');
    expect(svg).toContain("6.02 dB");
  });
});
