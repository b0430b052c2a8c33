/*
 * api.ts
 *
 * Thin client for the /api/v1 endpoints. Every response is kept both
 * as raw text and as a raw-number-preserving parse, so views can show
 * the server's numbers byte-for-byte. No scoring happens here.
 */

import { parseRawJson, asObject, asString, RawValue } from "./rawjson.js";
import { QueryDocument } from "./model.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly path?: string,
  ) {
    super(message);
  }
}

export interface ApiResponse {
  raw: string;
  payload: RawValue;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<ApiResponse> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const raw = await response.text();
    if (!response.ok) {
      let code = "http_error";
      let message = `HTTP ${response.status}`;
      let errorPath: string | undefined;
      try {
        const body = asObject(parseRawJson(raw), "error body");
        const error = asObject(body["error"], "error");
        code = asString(error["code"], "error.code");
        message = asString(error["message"], "error.message");
        if (typeof error["path"] === "string") errorPath = error["path"];
      } catch {
        // keep the generic message when the body is not structured
      }
      throw new ApiError(response.status, code, message, errorPath);
    }
    return { raw, payload: parseRawJson(raw) };
  }

  health(): Promise<ApiResponse> {
    return this.request("/api/v1/health");
  }

  neighborhood(classId: string, lang = "en", limit = 50, signal?: AbortSignal): Promise<ApiResponse> {
    const params = new URLSearchParams({ lang, limit: String(limit) });
    return this.request(
      `/api/v1/classes/${encodeURIComponent(classId)}/neighborhood?${params}`,
      { signal },
    );
  }

  listClasses(prefix: string, lang = "en"): Promise<ApiResponse> {
    const params = new URLSearchParams({ prefix, lang });
    return this.request(`/api/v1/classes?${params}`);
  }

  search(query: QueryDocument, topK = 20, signal?: AbortSignal): Promise<ApiResponse> {
    return this.request(`/api/v1/search?top_k=${topK}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(query),
      signal,
    });
  }

  explain(docId: string, query: QueryDocument, signal?: AbortSignal): Promise<ApiResponse> {
    return this.request("/api/v1/explain", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ doc_id: docId, query }),
      signal,
    });
  }

  document(docId: string): Promise<ApiResponse> {
    return this.request(`/api/v1/documents/${encodeURIComponent(docId)}`);
  }
}
