/** Shared test plumbing: recorded fixtures and a scripted fetch stub. */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { vi } from "vitest";

import type { FlaggedResponse, OptimizerResponse } from "../src/types.js";

export function fixture<T>(name: string): T {
  const path = join(__dirname, "..", "fixtures", `${name}.json`);
  return JSON.parse(readFileSync(path, "utf-8")) as T;
}

export const flaggedFixture = () => fixture<FlaggedResponse>("flagged");
export const flaggedAfterFixture = () => fixture<FlaggedResponse>("flagged_after_optimizer");
export const optimizerFixture = () => fixture<OptimizerResponse>("optimizer");
export const optimizerPreviewFixture = () => fixture<OptimizerResponse>("optimizer_preview");
export const verdictFixture = () => fixture<Record<string, string>>("verdict");

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
  headers: Record<string, string>;
}

export interface FetchScript {
  calls: RecordedCall[];
  /** queue a response for the next matching (method, path-prefix) request */
  respond(method: string, path: string, status: number, payload: unknown): void;
}

export function stubFetch(): FetchScript {
  const calls: RecordedCall[] = [];
  const queue: { method: string; path: string; status: number; payload: unknown }[] = [];

  const script: FetchScript = {
    calls,
    respond(method, path, status, payload) {
      queue.push({ method, path, status, payload });
    },
  };

  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
    const method = init?.method ?? "GET";
    calls.push({
      url,
      method,
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
      headers: (init?.headers as Record<string, string>) ?? {},
    });
    const idx = queue.findIndex((q) => q.method === method && url.includes(q.path));
    if (idx < 0) throw new Error(`no scripted response for ${method} ${url}`);
    const scripted = queue.splice(idx, 1)[0]!;
    return {
      ok: scripted.status >= 200 && scripted.status < 300,
      status: scripted.status,
      statusText: String(scripted.status),
      json: async () => scripted.payload,
    } as Response;
  });
  return script;
}
