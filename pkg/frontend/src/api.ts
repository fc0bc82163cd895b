/** Typed client for the review service; the only way the UI touches state. */

import type {
  Correspondence,
  CoverageStats,
  DecisionResult,
  FieldError,
  LemmaCreated,
  LemmaPayload,
  LemmaSummary,
  Page,
  RelationStats,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string | FieldError[],
  ) {
    super(typeof detail === "string" ? detail : `${detail.length} field error(s)`);
  }

  get fieldErrors(): FieldError[] {
    return typeof this.detail === "string" ? [] : this.detail;
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private token: string | null = null,
  ) {}

  private headers(json = false): Record<string, string> {
    const h: Record<string, string> = {};
    if (json) h["Content-Type"] = "application/json";
    if (this.token) h["Authorization"] = `Bearer ${this.token}`;
    return h;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.baseUrl + path, init);
    const body = await res.json().catch(() => ({ detail: res.statusText }));
    if (!res.ok) {
      throw new ApiError(res.status, (body as { detail: string | FieldError[] }).detail);
    }
    return body as T;
  }

  searchLemmas(
    q: string,
    opts: { pos?: string; lexicon?: string; page?: number } = {},
  ): Promise<Page<LemmaSummary>> {
    const params = new URLSearchParams();
    if (q) params.set("q", q);
    if (opts.pos) params.set("pos", opts.pos);
    if (opts.lexicon) params.set("lexicon", opts.lexicon);
    if (opts.page) params.set("page", String(opts.page));
    const query = params.toString();
    return this.request(`/api/lemmas${query ? "?" + query : ""}`, {
      headers: this.headers(),
    });
  }

  queue(status = "auto", page = 1): Promise<Page<Correspondence>> {
    return this.request(`/api/mappings?status=${status}&page=${page}`, {
      headers: this.headers(),
    });
  }

  decide(
    id: number,
    decision: { relation?: string; reject?: boolean; force?: boolean },
    reviewer: string,
  ): Promise<DecisionResult> {
    return this.request(`/api/mappings/${id}/decision`, {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify({ ...decision, reviewer }),
    });
  }

  createLemma(payload: LemmaPayload): Promise<LemmaCreated> {
    return this.request("/api/lemmas", {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify(payload),
    });
  }

  relationStats(): Promise<RelationStats> {
    return this.request("/api/stats/relations", { headers: this.headers() });
  }

  coverageStats(): Promise<CoverageStats> {
    return this.request("/api/stats/coverage", { headers: this.headers() });
  }
}
