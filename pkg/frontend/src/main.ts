import { ApiClient, LatestGate, ServiceCallError, ServiceUnreachableError, debounce } from "./api.js";
import { renderAuditTrail, renderEmptyGauge, renderGauge } from "./gauge.js";
import { ScenarioSet } from "./scenarios.js";
import { EditorState } from "./state.js";
import { renderSweepChart } from "./sweepchart.js";
import {
  ADJUSTMENT_CATEGORIES,
  Adjustment,
  AssessmentDocument,
  BASELINE_SOURCES,
  SweepResult,
  SweepTarget,
  WoeReport,
} from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing element #${id}`);
  }
  return element as T;
}

function apiBaseUrl(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return (override ?? "http://127.0.0.1:8000").replace(/\/$/, "");
}

const api = new ApiClient(apiBaseUrl());
const state = new EditorState();
const scenarios = new ScenarioSet();
const evaluateGate = new LatestGate();
const sweepGate = new LatestGate();

let lastReport: WoeReport | null = null;
let lastSweep: SweepResult | null = null;

const banner = byId<HTMLDivElement>("banner");
const gaugePanel = byId<HTMLDivElement>("gauge");
const auditPanel = byId<HTMLDivElement>("audit");
const ledgerPanel = byId<HTMLDivElement>("ledger");
const sweepPanel = byId<HTMLDivElement>("sweep-chart");
const scenarioPanel = byId<HTMLDivElement>("scenario-table");

function showBanner(message: string): void {
  banner.textContent = message;
  banner.hidden = false;
}

function clearBanner(): void {
  banner.hidden = true;
  banner.textContent = "";
}

function clearFieldErrors(): void {
  for (const slot of document.querySelectorAll<HTMLElement>("[data-field-error]")) {
    slot.textContent = "";
  }
}

// Inline placement: first path segment picks the control group, ledger
// entries collapse onto the adjustments slot.
function showFieldError(field: string | null, message: string): void {
  clearFieldErrors();
  const segment = field ? field.split(/[.[]/)[0] : "";
  const slot =
    document.querySelector<HTMLElement>(`[data-field-error="${segment}"]`) ??
    document.querySelector<HTMLElement>(`[data-field-error="document"]`);
  if (slot) {
    slot.textContent = message;
  }
}

function markStale(): void {
  if (lastReport) {
    gaugePanel.innerHTML = renderGauge(lastReport, { stale: true });
  }
}

function renderReport(report: WoeReport): void {
  lastReport = report;
  gaugePanel.innerHTML = renderGauge(report);
  auditPanel.innerHTML = renderAuditTrail(report);
}

async function evaluateNow(): Promise<void> {
  if (!state.touched) {
    gaugePanel.innerHTML = renderEmptyGauge();
    auditPanel.innerHTML = "";
    return;
  }
  const doc = structuredClone(state.document);
  try {
    const report = await evaluateGate.run(() => api.evaluate(doc));
    if (report === null) {
      return;
    }
    clearBanner();
    clearFieldErrors();
    renderReport(report);
  } catch (error) {
    if (error instanceof ServiceCallError) {
      showFieldError(error.field, error.message);
      markStale();
    } else if (error instanceof ServiceUnreachableError) {
      showBanner("service unreachable; displayed numbers are stale");
      markStale();
    } else {
      throw error;
    }
  }
}

const scheduleEvaluate = debounce(150, () => {
  void evaluateNow();
});

function renderLedger(): void {
  const ledger = state.document.adjustments;
  if (ledger.length === 0) {
    ledgerPanel.innerHTML = `<p class="muted">ledger is empty</p>`;
    return;
  }
  ledgerPanel.innerHTML = ledger
    .map((adj, i) => {
      const label = `${adj.target} ${adj.mode === "set_to" ? "=" : "+"} ${adj.value}`;
      return `
        <div class="ledger-row">
          <span class="ledger-label">${i + 1}. ${label} <em>[${adj.category}]</em></span>
          <span class="ledger-buttons">
            <button data-action="up" data-index="${i}" ${i === 0 ? "disabled" : ""}>up</button>
            <button data-action="down" data-index="${i}" ${i === ledger.length - 1 ? "disabled" : ""}>down</button>
            <button data-action="remove" data-index="${i}">remove</button>
          </span>
        </div>
      `;
    })
    .join("");
}

function refreshControls(): void {
  const doc = state.document;
  byId<HTMLInputElement>("doc-id").value = doc.id;
  byId<HTMLInputElement>("doc-title").value = doc.title;
  byId<HTMLTextAreaElement>("doc-description").value = doc.description ?? "";
  byId<HTMLSelectElement>("direction").value = doc.result_direction;
  byId<HTMLInputElement>("baseline-power").value = String(doc.baseline.power);
  byId<HTMLInputElement>("baseline-power-num").value = String(doc.baseline.power);
  byId<HTMLInputElement>("baseline-fpr").value = String(doc.baseline.fpr);
  byId<HTMLInputElement>("baseline-fpr-num").value = String(doc.baseline.fpr);
  byId<HTMLSelectElement>("prov-source").value = doc.baseline_provenance.source;
  byId<HTMLInputElement>("prov-note").value = doc.baseline_provenance.note ?? "";
  byId<HTMLInputElement>("prior").value = String(doc.prior_p_h1);
  byId<HTMLInputElement>("prior-num").value = String(doc.prior_p_h1);
  byId<HTMLButtonElement>("undo-btn").disabled = !state.canUndo;
  renderLedger();
}

function afterEdit(): void {
  refreshControls();
  scheduleEvaluate();
}

function bindSliderPair(rangeId: string, numberId: string, apply: (value: number) => void): void {
  const range = byId<HTMLInputElement>(rangeId);
  const num = byId<HTMLInputElement>(numberId);
  const handler = (raw: string) => {
    const value = Number.parseFloat(raw);
    if (Number.isFinite(value)) {
      apply(value);
      afterEdit();
    }
  };
  range.addEventListener("change", () => handler(range.value));
  num.addEventListener("change", () => handler(num.value));
}

function populateSelect(id: string, values: readonly string[]): void {
  byId<HTMLSelectElement>(id).innerHTML = values
    .map((v) => `<option value="${v}">${v.replace(/_/g, " ")}</option>`)
    .join("");
}

function setupEditor(): void {
  populateSelect("adj-category", ADJUSTMENT_CATEGORIES);
  populateSelect("prov-source", BASELINE_SOURCES);

  bindSliderPair("baseline-power", "baseline-power-num", (v) => state.setBaseline("power", v));
  bindSliderPair("baseline-fpr", "baseline-fpr-num", (v) => state.setBaseline("fpr", v));
  bindSliderPair("prior", "prior-num", (v) => state.setPrior(v));

  byId<HTMLInputElement>("doc-id").addEventListener("change", (e) => {
    state.setMeta("id", (e.target as HTMLInputElement).value);
    afterEdit();
  });
  byId<HTMLInputElement>("doc-title").addEventListener("change", (e) => {
    state.setMeta("title", (e.target as HTMLInputElement).value);
    afterEdit();
  });
  byId<HTMLTextAreaElement>("doc-description").addEventListener("change", (e) => {
    state.setMeta("description", (e.target as HTMLTextAreaElement).value);
    afterEdit();
  });
  byId<HTMLSelectElement>("direction").addEventListener("change", (e) => {
    state.setDirection((e.target as HTMLSelectElement).value as "positive" | "negative");
    afterEdit();
  });
  const provHandler = () => {
    state.setProvenance(
      byId<HTMLSelectElement>("prov-source").value as AssessmentDocument["baseline_provenance"]["source"],
      byId<HTMLInputElement>("prov-note").value,
    );
    afterEdit();
  };
  byId<HTMLSelectElement>("prov-source").addEventListener("change", provHandler);
  byId<HTMLInputElement>("prov-note").addEventListener("change", provHandler);

  byId<HTMLButtonElement>("undo-btn").addEventListener("click", () => {
    if (state.undo()) {
      afterEdit();
    }
  });

  const rationale = byId<HTMLTextAreaElement>("adj-rationale");
  const commitButton = byId<HTMLButtonElement>("adj-commit");
  const syncCommitEnabled = () => {
    commitButton.disabled = rationale.value.trim() === "";
  };
  rationale.addEventListener("input", syncCommitEnabled);
  syncCommitEnabled();

  commitButton.addEventListener("click", () => {
    const problem = state.commitAdjustment({
      target: byId<HTMLSelectElement>("adj-target").value as Adjustment["target"],
      mode: byId<HTMLSelectElement>("adj-mode").value as Adjustment["mode"],
      value: Number.parseFloat(byId<HTMLInputElement>("adj-value").value),
      rationale: rationale.value,
      category: byId<HTMLSelectElement>("adj-category").value as Adjustment["category"],
    });
    const slot = byId<HTMLSpanElement>("adj-error");
    if (problem) {
      slot.textContent = problem;
      return;
    }
    slot.textContent = "";
    rationale.value = "";
    syncCommitEnabled();
    afterEdit();
  });

  ledgerPanel.addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest("button[data-action]");
    if (!button) {
      return;
    }
    const index = Number(button.getAttribute("data-index"));
    const action = button.getAttribute("data-action");
    let changed = false;
    if (action === "remove") {
      changed = state.removeAdjustment(index);
    } else if (action === "up") {
      changed = state.moveAdjustment(index, -1);
    } else if (action === "down") {
      changed = state.moveAdjustment(index, 1);
    }
    if (changed) {
      afterEdit();
    }
  });
}

function gridFromInputs(): number[] | string {
  const min = Number.parseFloat(byId<HTMLInputElement>("sweep-min").value);
  const max = Number.parseFloat(byId<HTMLInputElement>("sweep-max").value);
  const steps = Number.parseInt(byId<HTMLInputElement>("sweep-steps").value, 10);
  if (!Number.isFinite(min) || !Number.isFinite(max) || !Number.isInteger(steps)) {
    return "sweep range must be numeric";
  }
  if (steps < 1 || steps > 200) {
    return "steps must be between 1 and 200";
  }
  if (steps === 1) {
    return [min];
  }
  if (!(max > min)) {
    return "max must be greater than min";
  }
  const grid: number[] = [];
  for (let i = 0; i < steps; i++) {
    grid.push(min + ((max - min) * i) / (steps - 1));
  }
  return grid;
}

function currentSweepValue(target: SweepTarget): number {
  const doc = state.document;
  if (target === "power") {
    return doc.baseline.power;
  }
  if (target === "fpr") {
    return doc.baseline.fpr;
  }
  return doc.prior_p_h1;
}

function setupWhatIf(): void {
  byId<HTMLButtonElement>("sweep-run").addEventListener("click", () => {
    void (async () => {
      const target = byId<HTMLSelectElement>("sweep-target").value as SweepTarget;
      state.activeSweepTarget = target;
      const grid = gridFromInputs();
      const slot = byId<HTMLSpanElement>("sweep-error");
      if (typeof grid === "string") {
        slot.textContent = grid;
        return;
      }
      slot.textContent = "";
      const doc = structuredClone(state.document);
      try {
        const result = await sweepGate.run(() => api.sweep(target, grid, doc));
        if (result === null) {
          return;
        }
        clearBanner();
        lastSweep = result;
        sweepPanel.innerHTML = renderSweepChart(result, currentSweepValue(target));
      } catch (error) {
        if (error instanceof ServiceCallError) {
          slot.textContent = error.message;
        } else if (error instanceof ServiceUnreachableError) {
          showBanner("service unreachable; displayed numbers are stale");
        } else {
          throw error;
        }
      }
    })();
  });

  // Clicking a sweep point offers its value as a ledger entry; the user
  // still has to supply the rationale before it can be committed.
  sweepPanel.addEventListener("click", (event) => {
    const point = (event.target as Element).closest("circle.point");
    if (!point || !lastSweep) {
      return;
    }
    const value = Number(point.getAttribute("data-value"));
    if (lastSweep.target === "prior") {
      state.setPrior(value);
      afterEdit();
      return;
    }
    byId<HTMLSelectElement>("adj-target").value = lastSweep.target;
    byId<HTMLSelectElement>("adj-mode").value = "set_to";
    byId<HTMLInputElement>("adj-value").value = String(value);
    byId<HTMLSpanElement>("adj-error").textContent = "adopting this value needs a rationale";
    byId<HTMLTextAreaElement>("adj-rationale").focus();
  });
}

function setupScenarios(): void {
  const nameInput = byId<HTMLInputElement>("scenario-name");
  const slot = byId<HTMLSpanElement>("scenario-error");
  const refresh = () => {
    scenarioPanel.innerHTML = scenarios.renderTable();
    const picker = byId<HTMLSelectElement>("scenario-baseline");
    picker.innerHTML = scenarios.names.map((n) => `<option value="${n}">${n}</option>`).join("");
    if (scenarios.baselineName) {
      picker.value = scenarios.baselineName;
    }
  };
  byId<HTMLButtonElement>("scenario-save").addEventListener("click", () => {
    if (!lastReport) {
      slot.textContent = "evaluate an assessment before saving a scenario";
      return;
    }
    const problem = scenarios.add(nameInput.value, state.document, lastReport);
    if (problem) {
      slot.textContent = problem;
      return;
    }
    slot.textContent = "";
    nameInput.value = "";
    refresh();
  });
  byId<HTMLSelectElement>("scenario-baseline").addEventListener("change", (e) => {
    scenarios.setBaseline((e.target as HTMLSelectElement).value);
    refresh();
  });
  scenarioPanel.addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest("button[data-remove]");
    if (button) {
      scenarios.remove(button.getAttribute("data-remove") ?? "");
      refresh();
    }
  });
}

function setupImportExport(): void {
  byId<HTMLButtonElement>("export-btn").addEventListener("click", () => {
    const slot = byId<HTMLSpanElement>("io-error");
    const problems = state.exportProblems();
    if (problems.length > 0) {
      slot.textContent = problems.join("; ");
      return;
    }
    slot.textContent = "";
    const doc = state.exportDocument();
    const blob = new Blob([JSON.stringify(doc, null, 2) + "\n"], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${doc.id}.json`;
    link.click();
    URL.revokeObjectURL(link.href);
  });

  byId<HTMLInputElement>("import-file").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files && input.files[0];
    if (!file) {
      return;
    }
    void (async () => {
      const slot = byId<HTMLSpanElement>("io-error");
      let doc: AssessmentDocument;
      try {
        doc = JSON.parse(await file.text()) as AssessmentDocument;
      } catch {
        slot.textContent = "file is not valid JSON";
        return;
      }
      try {
        // Validate through the service before adopting the document.
        const report = await api.evaluate(doc);
        slot.textContent = "";
        state.importDocument(doc);
        refreshControls();
        clearFieldErrors();
        renderReport(report);
      } catch (error) {
        if (error instanceof ServiceCallError) {
          slot.textContent = error.message;
        } else if (error instanceof ServiceUnreachableError) {
          showBanner("service unreachable; import needs the service for validation");
        } else {
          throw error;
        }
      } finally {
        input.value = "";
      }
    })();
  });
}

async function checkHealth(): Promise<void> {
  const badge = byId<HTMLSpanElement>("health-badge");
  try {
    const health = await api.health();
    badge.textContent = `service ${health.version} at ${api.baseUrl}`;
    badge.className = "health ok";
    clearBanner();
  } catch {
    badge.textContent = `no service at ${api.baseUrl}`;
    badge.className = "health down";
    showBanner("service unreachable; start it with: woekit serve");
  }
}

setupEditor();
setupWhatIf();
setupScenarios();
setupImportExport();
refreshControls();
gaugePanel.innerHTML = renderEmptyGauge();
void checkHealth();
setInterval(() => void checkHealth(), 15000);
