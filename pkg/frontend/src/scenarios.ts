import { AssessmentDocument, WoeReport, cloneDocument } from "./types.js";

export interface Scenario {
  name: string;
  document: AssessmentDocument;
  report: WoeReport;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

// Named list of evaluated documents held for side-by-side comparison.
// Every number in the table comes from the stored service reports; the
// diff column is presentation of those numbers against the chosen baseline.
export class ScenarioSet {
  private scenarios: Scenario[] = [];
  baselineName: string | null = null;

  get names(): string[] {
    return this.scenarios.map((s) => s.name);
  }

  get size(): number {
    return this.scenarios.length;
  }

  get(name: string): Scenario | undefined {
    return this.scenarios.find((s) => s.name === name);
  }

  add(name: string, document: AssessmentDocument, report: WoeReport): string | null {
    const trimmed = name.trim();
    if (trimmed === "") {
      return "scenario name must not be blank";
    }
    if (this.get(trimmed)) {
      return `scenario name already in use: ${trimmed}`;
    }
    this.scenarios.push({ name: trimmed, document: cloneDocument(document), report });
    if (this.baselineName === null) {
      this.baselineName = trimmed;
    }
    return null;
  }

  remove(name: string): boolean {
    const index = this.scenarios.findIndex((s) => s.name === name);
    if (index < 0) {
      return false;
    }
    this.scenarios.splice(index, 1);
    if (this.baselineName === name) {
      this.baselineName = this.scenarios.length > 0 ? this.scenarios[0].name : null;
    }
    return true;
  }

  setBaseline(name: string): boolean {
    if (!this.get(name)) {
      return false;
    }
    this.baselineName = name;
    return true;
  }

  renderTable(): string {
    if (this.scenarios.length === 0) {
      return `<p class="muted">no scenarios saved</p>`;
    }
    const baseline = this.baselineName ? this.get(this.baselineName) : undefined;
    const withDiff = this.scenarios.length > 1 && baseline !== undefined;
    const header = withDiff
      ? `<tr><th>name</th><th>power</th><th>fpr</th><th>WoE (dB)</th><th>posterior</th><th>vs ${escapeHtml(baseline.name)}</th></tr>`
      : `<tr><th>name</th><th>power</th><th>fpr</th><th>WoE (dB)</th><th>posterior</th></tr>`;
    const rows = this.scenarios
      .map((s) => {
        const r = s.report;
        const isBaseline = baseline !== undefined && s.name === baseline.name;
        const cells = [
          `<td>${escapeHtml(s.name)}${isBaseline ? " *" : ""}</td>`,
          `<td>${r.effective.power.toFixed(3)}</td>`,
          `<td>${r.effective.fpr.toFixed(3)}</td>`,
          `<td>${r.woe_total.toFixed(2)}</td>`,
          `<td>${r.posterior_p_h1.toFixed(3)}</td>`,
        ];
        if (withDiff) {
          const diff = r.woe_total - (baseline as Scenario).report.woe_total;
          const sign = diff > 0 ? "+" : "";
          const highlight = Math.abs(diff) >= 0.005 ? ` class="diff"` : "";
          cells.push(`<td${highlight}>${sign}${diff.toFixed(2)}</td>`);
        }
        return `<tr>${cells.join("")}</tr>`;
      })
      .join("");
    return `<table class="scenario-table"><thead>${header}</thead><tbody>${rows}</tbody></table>`;
  }
}
