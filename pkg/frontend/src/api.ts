/** Typed client for the analytics API plus stale-response gating.
 *
 * Each widget keeps at most one request in flight; when a newer request
 * starts, the older response is discarded by sequence number.
 */

import type {
  ApiError,
  Dimension,
  FilterSetBody,
  Metric,
  TopicJobStatus,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiError,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

export interface AggregateParams {
  dimension?: Dimension;
  metric?: Metric;
  filters?: FilterSetBody;
  k?: number;
  direction?: "in" | "out";
  selected_value?: string;
  window?: [number, number];
  full_range?: [number, number];
  limit?: number;
  exclude_others?: boolean;
}

export class ApiClient {
  private token: string | null = null;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  hasToken(): boolean {
    return this.token !== null;
  }

  async register(username: string, password: string): Promise<void> {
    await this.request("POST", "/auth/register", { username, password });
  }

  async login(username: string, password: string): Promise<string> {
    const body = await this.request<{ token: string }>("POST", "/auth/login", {
      username,
      password,
    });
    this.token = body.token;
    return body.token;
  }

  async suggest(field: string, pattern: string, limit = 10): Promise<string[]> {
    const query = new URLSearchParams({ pattern, limit: String(limit) });
    const body = await this.request<{ values: string[] }>(
      "GET",
      `/suggest/${field}?${query}`,
    );
    return body.values;
  }

  async aggregate<T>(operation: string, params: AggregateParams): Promise<T> {
    return this.request<T>("POST", `/aggregate/${operation}`, params);
  }

  async submitTopicJob(filters: FilterSetBody, k: number, seed: number): Promise<string> {
    const body = await this.request<{ job_id: string }>("POST", "/topics/jobs", {
      filters,
      k,
      seed,
    });
    return body.job_id;
  }

  async pollTopicJob(jobId: string): Promise<TopicJobStatus> {
    return this.request<TopicJobStatus>("GET", `/topics/jobs/${jobId}`);
  }

  exportUrl(operation: string, params: Record<string, string>): string {
    const query = new URLSearchParams(params);
    return `${this.baseUrl}/export?operation=${operation}&${query}`;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.token !== null) {
      headers["Authorization"] = `Bearer ${this.token}`;
    }
    const init: RequestInit = { method, headers };
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : {};
    if (!response.ok) {
      const error: ApiError =
        typeof parsed.code === "string"
          ? parsed
          : { code: "http_error", message: `status ${response.status}` };
      throw new ApiRequestError(response.status, error);
    }
    return parsed as T;
  }
}

/** Discards responses that were superseded by a newer request. */
export class RequestGate {
  private sequence = 0;

  async run<T>(task: () => Promise<T>): Promise<T | undefined> {
    const ticket = ++this.sequence;
    const result = await task();
    if (ticket !== this.sequence) {
      return undefined; // a newer request took over while this one ran
    }
    return result;
  }
}
