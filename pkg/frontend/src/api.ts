import {
  AssessmentDocument,
  Conversion,
  ImpactsResult,
  PowerEstimate,
  ServiceError,
  SweepResult,
  SweepTarget,
  WoeReport,
  isServiceError,
} from "./types.js";

export class ServiceCallError extends Error {
  constructor(
    readonly status: number,
    readonly body: ServiceError,
  ) {
    super(body.message);
  }

  get field(): string | null {
    return this.body.detail ? this.body.detail.field : null;
  }
}

export class ServiceUnreachableError extends Error {
  constructor(cause: unknown) {
    super(`service unreachable: ${cause}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async health(): Promise<{ status: string; version: string }> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}/v1/health`);
    } catch (cause) {
      throw new ServiceUnreachableError(cause);
    }
    return (await response.json()) as { status: string; version: string };
  }

  evaluate(doc: AssessmentDocument): Promise<WoeReport> {
    return this.post("/v1/evaluate", doc);
  }

  sweep(target: SweepTarget, grid: number[], base: AssessmentDocument): Promise<SweepResult> {
    return this.post("/v1/sweep", { target, grid, base });
  }

  power(request: Record<string, unknown>): Promise<PowerEstimate> {
    return this.post("/v1/power", request);
  }

  convert(value: number, from: string, to: string): Promise<Conversion> {
    return this.post("/v1/convert", { value, from, to });
  }

  impacts(doc: AssessmentDocument): Promise<ImpactsResult> {
    return this.post("/v1/impacts", doc);
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (cause) {
      throw new ServiceUnreachableError(cause);
    }
    const payload: unknown = await response.json();
    if (!response.ok) {
      const error: ServiceError = isServiceError(payload)
        ? payload
        : { code: "Internal", message: `unexpected response (HTTP ${response.status})` };
      throw new ServiceCallError(response.status, error);
    }
    return payload as T;
  }
}

// Keyed by a monotonically increasing sequence so responses that were
// overtaken by a newer request are discarded, not rendered.
export class LatestGate {
  private sequence = 0;

  async run<T>(task: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.sequence;
    const result = await task();
    return ticket === this.sequence ? result : null;
  }

  get inFlightTicket(): number {
    return this.sequence;
  }
}

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
}

export function debounce<A extends unknown[]>(
  delayMs: number,
  fn: (...args: A) => void,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: A | null = null;
  const wrapped = (...args: A) => {
    pending = args;
    if (timer !== null) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = null;
      const args2 = pending as A;
      pending = null;
      fn(...args2);
    }, delayMs);
  };
  wrapped.cancel = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
      pending = null;
    }
  };
  wrapped.flush = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
      const args = pending as A;
      pending = null;
      fn(...args);
    }
  };
  return wrapped;
}
