// Thin session client. Every mutation carries If-Revision so concurrent
// edits surface as 409s; responses older than the last seen revision are
// flagged stale and must be discarded by the caller.

import type {
  ComparePayload,
  GeometryPayload,
  HistogramsPayload,
  MitigatePayload,
  ResultPayload,
  SessionInfo,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  revision = 0;

  constructor(
    private baseUrl: string,
    private sessionId: string,
    private fetchFn: FetchLike = fetch,
  ) {}

  private async request<T extends { revision?: number }>(
    method: string,
    path: string,
    body?: unknown,
    withRevision = false,
  ): Promise<T> {
    const headers: Record<string, string> = { "content-type": "application/json" };
    if (withRevision) {
      headers["If-Revision"] = String(this.revision);
    }
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    const payload = (await resp.json()) as T;
    if (typeof payload.revision === "number" && payload.revision > this.revision) {
      this.revision = payload.revision;
    }
    return payload;
  }

  /** True when a payload predates the newest revision seen by the client. */
  isStale(payload: { revision?: number }): boolean {
    return typeof payload.revision === "number" && payload.revision < this.revision;
  }

  session(): Promise<SessionInfo> {
    return this.request("GET", `/sessions/${this.sessionId}`);
  }

  results(model: string): Promise<ResultPayload> {
    return this.request("GET", `/sessions/${this.sessionId}/results/${model}`);
  }

  histograms(model: string): Promise<HistogramsPayload> {
    return this.request("GET", `/sessions/${this.sessionId}/histograms/${model}`);
  }

  geometry(model: string, collection: number, opts: { dotBudget?: number; outline?: number } = {}): Promise<GeometryPayload> {
    const params = new URLSearchParams();
    if (opts.dotBudget !== undefined) params.set("dot_budget", String(opts.dotBudget));
    if (opts.outline !== undefined) params.set("outline", String(opts.outline));
    const qs = params.size ? `?${params.toString()}` : "";
    return this.request("GET", `/sessions/${this.sessionId}/geometry/${model}/${collection}${qs}`);
  }

  compare(m1: string, m2: string): Promise<ComparePayload> {
    return this.request("GET", `/sessions/${this.sessionId}/compare?m1=${m1}&m2=${m2}`);
  }

  patchConfig(changes: Record<string, unknown>): Promise<{ revision: number }> {
    return this.request("PATCH", `/sessions/${this.sessionId}/config`, changes, true);
  }

  mitigate(model: string, selected: string[], tauTarget: number, preview: boolean): Promise<MitigatePayload> {
    return this.request(
      "POST",
      `/sessions/${this.sessionId}/mitigate`,
      { model, selected, tau_target: tauTarget, preview },
      true,
    );
  }
}
