import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderGauge } from "../src/gauge.js";
import { ScenarioSet } from "../src/scenarios.js";
import { EditorState } from "../src/state.js";
import { AssessmentDocument, freshDocument } from "../src/types.js";

const cliAvailable = spawnSync("woekit", ["--version"], { encoding: "utf-8" }).status === 0;

function samplePath(name: string): string {
  return fileURLToPath(new URL(`../../samples/${name}.json`, import.meta.url));
}

function readSample(name: string): AssessmentDocument {
  return JSON.parse(readFileSync(samplePath(name), "utf-8")) as AssessmentDocument;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.on("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port assigned"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

async function waitHealthy(api: ApiClient, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const health = await api.health();
      if (health.status === "ok") {
        return;
      }
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service did not become healthy: ${lastError}`);
}

// Spawns the real service; skipped when the CLI is not installed.
describe.skipIf(!cliAvailable)("service integration", () => {
  let server: ChildProcess;
  let api: ApiClient;
  let workDir: string;

  beforeAll(async () => {
    const port = await freePort();
    server = spawn("woekit", ["serve", "--port", String(port)], { stdio: "ignore" });
    api = new ApiClient(`http://127.0.0.1:${port}`);
    await waitHealthy(api, 15000);
    workDir = mkdtempSync(join(tmpdir(), "woekit-ui-"));
  }, 30000);

  afterAll(() => {
    server?.kill();
    if (workDir) {
      rmSync(workDir, { recursive: true, force: true });
    }
  });

  it("drives the gauge from the service response for the drug assessment", async () => {
    const report = await api.evaluate(readSample("drug_positive"));
    expect(report.woe_total).toBeCloseTo(6.02, 2);
    expect(report.posterior_p_h1).toBeCloseTo(0.8, 3);
    const gauge = renderGauge(report);
    expect(gauge).toContain(`${report.woe_total.toFixed(2)} dB`);
    expect(gauge).toContain(report.posterior_p_h1.toFixed(3));
  });

  it("flips the gauge when the result direction is toggled", async () => {
    const state = new EditorState(readSample("drug_positive"));
    state.setDirection("negative");
    const report = await api.evaluate(state.document);
    expect(report.woe_total).toBeCloseTo(-3.27, 2);
    expect(renderGauge(report)).toContain("-3.27 dB");
  });

  it("reproduces the design comparison in the scenario table", async () => {
    const designs: Array<[string, number, number]> = [
      ["standard", 0.8, 0.05],
      ["high power", 0.95, 0.05],
      ["strict alpha", 0.8, 0.01],
    ];
    const set = new ScenarioSet();
    for (const [name, power, fpr] of designs) {
      const doc = freshDocument();
      doc.id = name.replace(/ /g, "-");
      doc.baseline = { power, fpr };
      const report = await api.evaluate(doc);
      expect(set.add(name, doc, report)).toBeNull();
    }
    const table = set.renderTable();
    expect(table).toContain("12.04");
    expect(table).toContain("12.79");
    expect(table).toContain("19.03");
  });

  it("sweeps vitamin-D power through the documented band", async () => {
    const result = await api.sweep("power", [0.2, 0.65], readSample("vitamin_d"));
    const byValue = new Map(result.points.map((p) => [p.value, p.woe_total]));
    expect(byValue.get(0.2)).toBeCloseTo(-0.51, 2);
    expect(byValue.get(0.65)).toBeCloseTo(-4.1, 2);
  });

  it("exports a document the CLI evaluates to the displayed numbers", async () => {
    const state = new EditorState(readSample("drug_positive"));
    state.setMeta("description", "exported from the workbench");
    const viaService = await api.evaluate(state.document);

    const exported = state.exportDocument();
    const path = join(workDir, "exported.json");
    writeFileSync(path, JSON.stringify(exported, null, 2));
    const cli = spawnSync("woekit", ["evaluate", path, "--output", "json"], {
      encoding: "utf-8",
    });
    expect(cli.status).toBe(0);
    const viaCli = JSON.parse(cli.stdout) as { woe_total: number; posterior_p_h1: number };
    expect(viaCli.woe_total.toFixed(2)).toBe(viaService.woe_total.toFixed(2));
    expect(viaCli.posterior_p_h1.toFixed(3)).toBe(viaService.posterior_p_h1.toFixed(3));
    expect(Math.abs(viaCli.woe_total - viaService.woe_total)).toBeLessThan(1e-9);
  });

  it("surfaces field-level diagnostics for an invalid import", async () => {
    const doc = readSample("drug_positive") as AssessmentDocument & Record<string, unknown>;
    doc["surprise"] = true;
    const failure = await api.evaluate(doc).catch((e) => e);
    expect(failure.body.code).toBe("ValidationFailed");
    expect(failure.message).toContain("surprise");
  });
});

describe.skipIf(cliAvailable)("service integration (skipped)", () => {
  it("is skipped because the woekit CLI is not installed", () => {
    expect(cliAvailable).toBe(false);
  });
});
