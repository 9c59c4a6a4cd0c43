import { WoeReport } from "./types.js";

export interface GaugeOptions {
  stale?: boolean;
}

const GAUGE_MIN_DB = -20;
const GAUGE_MAX_DB = 20;

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

// Maps a decibel value to a needle position; display geometry only.
function needlePercent(woe: number): number {
  const clamped = Math.min(GAUGE_MAX_DB, Math.max(GAUGE_MIN_DB, woe));
  return ((clamped - GAUGE_MIN_DB) / (GAUGE_MAX_DB - GAUGE_MIN_DB)) * 100;
}

export function renderEmptyGauge(): string {
  return `
    <div class="gauge-value">0.00 dB</div>
    <div class="gauge-note">no evidence entered</div>
    <div class="gauge-bar"><div class="gauge-needle" style="left: 50%"></div></div>
  `;
}

export function renderGauge(report: WoeReport, options: GaugeOptions = {}): string {
  const staleClass = options.stale ? " stale" : "";
  const staleNote = options.stale ? `<div class="gauge-note">(stale)</div>` : "";
  const favored = report.woe_total >= 0 ? "favors H1" : "favors H0";
  const flags = report.flags
    .map((flag) => `<li>${escapeHtml(flag)}</li>`)
    .join("");
  const flagList = flags === "" ? "" : `<ul class="flag-list">${flags}</ul>`;
  return `
    <div class="gauge-value${staleClass}">${report.woe_total.toFixed(2)} dB</div>
    <div class="gauge-note">${favored}</div>
    ${staleNote}
    <div class="gauge-bar"><div class="gauge-needle" style="left: ${needlePercent(report.woe_total).toFixed(1)}%"></div></div>
    <dl class="gauge-readout">
      <dt>posterior P(H1)</dt><dd>${report.posterior_p_h1.toFixed(3)}</dd>
      <dt>evidence</dt><dd>${report.woe_evidence.toFixed(2)} dB</dd>
      <dt>prior weight</dt><dd>${report.woe_prior.toFixed(2)} dB</dd>
      <dt>likelihood ratio</dt><dd>${report.lr_for_h1.toFixed(3)}</dd>
      <dt>effective power</dt><dd>${report.effective.power.toFixed(3)}</dd>
      <dt>effective fpr</dt><dd>${report.effective.fpr.toFixed(3)}</dd>
    </dl>
    ${flagList}
  `;
}

export function renderAuditTrail(report: WoeReport): string {
  if (report.audit_trail.length === 0) {
    return `<p class="muted">no adjustments applied</p>`;
  }
  const rows = report.audit_trail
    .map((step, i) => {
      const adj = step.adjustment;
      const clamped = step.clamped ? " (clamped)" : "";
      return `
        <tr>
          <td>${i + 1}</td>
          <td>${adj.target}</td>
          <td>${adj.mode === "set_to" ? "set to" : "add"} ${adj.value}</td>
          <td>${escapeHtml(adj.category)}</td>
          <td>${step.before.power.toFixed(3)}/${step.before.fpr.toFixed(3)}</td>
          <td>${step.after.power.toFixed(3)}/${step.after.fpr.toFixed(3)}${clamped}</td>
          <td class="rationale">${escapeHtml(adj.rationale)}</td>
        </tr>
      `;
    })
    .join("");
  return `
    <table class="audit-table">
      <thead>
        <tr><th>#</th><th>target</th><th>edit</th><th>category</th><th>before p/f</th><th>after p/f</th><th>rationale</th></tr>
      </thead>
      <tbody>${rows}</tbody>
    </table>
  `;
}
