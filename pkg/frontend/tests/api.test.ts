import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient, LatestGate, ServiceCallError, ServiceUnreachableError, debounce } from "../src/api.js";
import { freshDocument } from "../src/types.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("LatestGate", () => {
  it("discards a response overtaken by a newer request", async () => {
    const gate = new LatestGate();
    let releaseFirst: (value: string) => void = () => {};
    const first = gate.run(
      () => new Promise<string>((resolve) => (releaseFirst = resolve)),
    );
    const second = gate.run(() => Promise.resolve("second"));
    expect(await second).toBe("second");
    releaseFirst("first");
    expect(await first).toBeNull();
  });

  it("returns results when uncontested", async () => {
    const gate = new LatestGate();
    expect(await gate.run(() => Promise.resolve(41))).toBe(41);
    expect(await gate.run(() => Promise.resolve(42))).toBe(42);
  });
});

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("collapses rapid calls into the last one", () => {
    const seen: number[] = [];
    const fn = debounce(150, (value: number) => seen.push(value));
    fn(1);
    vi.advanceTimersByTime(100);
    fn(2);
    vi.advanceTimersByTime(100);
    fn(3);
    expect(seen).toEqual([]);
    vi.advanceTimersByTime(150);
    expect(seen).toEqual([3]);
  });

  it("supports cancel and flush", () => {
    const seen: number[] = [];
    const fn = debounce(150, (value: number) => seen.push(value));
    fn(1);
    fn.cancel();
    vi.advanceTimersByTime(500);
    expect(seen).toEqual([]);
    fn(2);
    fn.flush();
    expect(seen).toEqual([2]);
    fn.flush();
    expect(seen).toEqual([2]);
  });
});

describe("ApiClient", () => {
  it("parses a successful evaluate response", async () => {
    const payload = { kind: "woe_report", woe_total: 6.02 };
    const fetchFn = vi.fn(async () => jsonResponse(200, payload));
    const client = new ApiClient("http://service", fetchFn);
    const report = await client.evaluate(freshDocument());
    expect(report.woe_total).toBe(6.02);
    expect(fetchFn).toHaveBeenCalledWith(
      "http://service/v1/evaluate",
      expect.objectContaining({ method: "POST" }),
    );
  });

  it("throws ServiceCallError carrying code and field", async () => {
    const body = {
      code: "ValidationFailed",
      message: "prior_p_h1 must be strictly between 0 and 1",
      detail: { field: "prior_p_h1" },
    };
    const client = new ApiClient("http://service", async () => jsonResponse(400, body));
    const failure = await client.evaluate(freshDocument()).catch((e) => e);
    expect(failure).toBeInstanceOf(ServiceCallError);
    expect(failure.status).toBe(400);
    expect(failure.body.code).toBe("ValidationFailed");
    expect(failure.field).toBe("prior_p_h1");
  });

  it("wraps an unrecognized error body", async () => {
    const client = new ApiClient("http://service", async () => jsonResponse(502, { oops: true }));
    const failure = await client.convert(1, "woe", "odds").catch((e) => e);
    expect(failure).toBeInstanceOf(ServiceCallError);
    expect(failure.body.code).toBe("Internal");
  });

  it("signals network failure as ServiceUnreachableError", async () => {
    const client = new ApiClient("http://service", async () => {
      throw new TypeError("connection refused");
    });
    await expect(client.health()).rejects.toBeInstanceOf(ServiceUnreachableError);
    await expect(client.evaluate(freshDocument())).rejects.toBeInstanceOf(
      ServiceUnreachableError,
    );
  });

  it("sends sweep requests in the service shape", async () => {
    const fetchFn = vi.fn(async () => jsonResponse(200, { kind: "sweep_result", points: [] }));
    const client = new ApiClient("http://service", fetchFn);
    const base = freshDocument();
    await client.sweep("fpr", [0.05, 0.1], base);
    const [, init] = fetchFn.mock.calls[0] as [string, RequestInit];
    expect(JSON.parse(init.body as string)).toEqual({ target: "fpr", grid: [0.05, 0.1], base });
  });
});
