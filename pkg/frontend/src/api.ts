/**
 * Typed client for the detection service.
 *
 * Verdict posts are de-duplicated per (reportId, steamId): while one is in
 * flight, further calls for the same key return the same promise, so a
 * double-clicked confirm button issues exactly one request.
 */

import type {
  FlaggedResponse,
  MvinSettings,
  ObjectivePayload,
  OptimizerResponse,
  VerdictRecord,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

export interface ApiConfig {
  baseUrl: string;
  token?: string;
}

export function configFromEnvironment(): ApiConfig {
  // the host page (or test) sets these globals; at build time they can be
  // injected from HAWK_API_URL / HAWK_TOKEN
  const g = globalThis as Record<string, unknown>;
  const env = (g["process"] as { env?: Record<string, string> } | undefined)?.env ?? {};
  const baseUrl =
    (g["HAWK_API_URL"] as string | undefined) ?? env["HAWK_API_URL"] ?? "http://127.0.0.1:8080";
  const token = (g["HAWK_TOKEN"] as string | undefined) ?? env["HAWK_TOKEN"];
  return { baseUrl, token };
}

export class ApiClient {
  private inFlightVerdicts = new Map<string, Promise<VerdictRecord>>();

  constructor(private config: ApiConfig) {}

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.config.token) headers["Authorization"] = `Bearer ${this.config.token}`;
    return headers;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(`${this.config.baseUrl}${path}`, {
        method,
        headers: this.headers(),
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    const payload = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      const detail =
        typeof payload === "object" && payload !== null && "detail" in payload
          ? String((payload as { detail: unknown }).detail)
          : resp.statusText;
      throw new ApiError(resp.status, detail);
    }
    return payload as T;
  }

  getFlagged(status = "pending"): Promise<FlaggedResponse> {
    return this.request<FlaggedResponse>("GET", `/flagged?status=${status}`);
  }

  postVerdict(
    reportId: string,
    steamId: string,
    verdict: "confirmed" | "rejected",
    gmId: string,
  ): Promise<VerdictRecord> {
    const key = `${reportId}:${steamId}`;
    const existing = this.inFlightVerdicts.get(key);
    if (existing) return existing;
    const promise = this.request<VerdictRecord>("POST", "/verdicts", {
      reportId,
      steamId,
      verdict,
      gmId,
    }).finally(() => this.inFlightVerdicts.delete(key));
    this.inFlightVerdicts.set(key, promise);
    return promise;
  }

  getOptimizer(): Promise<MvinSettings> {
    return this.request<MvinSettings>("GET", "/optimizer");
  }

  postOptimizer(objective: ObjectivePayload, dryRun: boolean): Promise<OptimizerResponse> {
    return this.request<OptimizerResponse>("POST", "/optimizer", { objective, dryRun });
  }
}
