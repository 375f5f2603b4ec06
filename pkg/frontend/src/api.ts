import type {
  ElectionDef,
  MethodsInfo,
  NormalizeRequest,
  NormalizedBallot,
  TallyReport,
  TallyRequest,
} from "./types.js";

/** Server-side rejection; message is the server's own error text. */
export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchFn = typeof fetch;

async function unwrap<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let message = `${resp.status} ${resp.statusText}`;
    try {
      const body = (await resp.json()) as { error?: string };
      if (body && typeof body.error === "string") message = body.error;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(message, resp.status);
  }
  return (await resp.json()) as T;
}

export class Api {
  private fetchFn: FetchFn;

  constructor(readonly base: string = "", fetchFn?: FetchFn) {
    this.fetchFn = fetchFn ?? ((...args) => fetch(...args));
  }

  private async get<T>(path: string): Promise<T> {
    return unwrap<T>(await this.fetchFn(this.base + path));
  }

  private async post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const resp = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    return unwrap<T>(resp);
  }

  methods(): Promise<MethodsInfo> {
    return this.get<MethodsInfo>("/methods");
  }

  election(): Promise<ElectionDef> {
    return this.get<ElectionDef>("/election");
  }

  tally(req: TallyRequest, signal?: AbortSignal): Promise<TallyReport> {
    return this.post<TallyReport>("/tally", req, signal);
  }

  normalize(req: NormalizeRequest, signal?: AbortSignal): Promise<NormalizedBallot> {
    return this.post<NormalizedBallot>("/normalize", req, signal);
  }
}

/** A request resolved to undefined because a newer one superseded it. */
export const SUPERSEDED = Symbol("superseded");

/**
 * Keeps at most one request in flight: starting a new one aborts the
 * previous. A superseded call resolves to SUPERSEDED so stale responses
 * never reach the DOM.
 */
export class LatestWins {
  private ctrl: AbortController | null = null;

  async run<T>(fn: (signal: AbortSignal) => Promise<T>): Promise<T | typeof SUPERSEDED> {
    this.ctrl?.abort();
    const ctrl = new AbortController();
    this.ctrl = ctrl;
    try {
      const value = await fn(ctrl.signal);
      if (ctrl.signal.aborted) return SUPERSEDED;
      return value;
    } catch (err) {
      if (ctrl.signal.aborted) return SUPERSEDED;
      throw err;
    } finally {
      if (this.ctrl === ctrl) this.ctrl = null;
    }
  }

  cancel(): void {
    this.ctrl?.abort();
    this.ctrl = null;
  }
}
