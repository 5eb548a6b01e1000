// Thin typed client for the blueprint service. All persistence flows
// through here; the view layer never touches files or version counters
// directly. PUT outcomes are a discriminated union so callers must
// handle conflict / validation / forbidden explicitly.

import type {
  Blueprint,
  ExtractionRecordWire,
  QueueItem,
  SystemIndexEntry,
  ValidationReport,
} from "./types.js";

export interface FetchedSystem {
  doc: Blueprint;
  version: number;
}

export type SaveResult =
  | { outcome: "saved"; version: number }
  | { outcome: "conflict"; currentVersion: number | null }
  | { outcome: "invalid"; report: ValidationReport }
  | { outcome: "forbidden" };

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

export class BlueprintApi {
  constructor(public baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.url(path));
    if (!response.ok) {
      throw new ApiError(`GET ${path} failed: ${response.status}`, response.status);
    }
    return (await response.json()) as T;
  }

  async listSystems(): Promise<SystemIndexEntry[]> {
    return this.getJson("/systems");
  }

  async fetchSystem(key: string): Promise<FetchedSystem> {
    const response = await fetch(this.url(`/systems/${encodeURIComponent(key)}`));
    if (!response.ok) {
      throw new ApiError(`system ${key} not found`, response.status);
    }
    const etag = response.headers.get("ETag") ?? '"0"';
    return {
      doc: (await response.json()) as Blueprint,
      version: parseInt(etag.replaceAll('"', ""), 10),
    };
  }

  async saveSystem(key: string, doc: Blueprint, version: number | null): Promise<SaveResult> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (version !== null) headers["If-Match"] = `"${version}"`;
    const response = await fetch(this.url(`/systems/${encodeURIComponent(key)}`), {
      method: "PUT",
      headers,
      body: JSON.stringify(doc),
    });
    if (response.status === 409) {
      const body = (await response.json()) as { current_version?: number };
      return { outcome: "conflict", currentVersion: body.current_version ?? null };
    }
    if (response.status === 400) {
      return { outcome: "invalid", report: (await response.json()) as ValidationReport };
    }
    if (response.status === 403) {
      return { outcome: "forbidden" };
    }
    if (!response.ok) {
      throw new ApiError(`PUT ${key} failed: ${response.status}`, response.status);
    }
    const body = (await response.json()) as { version: number };
    return { outcome: "saved", version: body.version };
  }

  async fetchGraph(key: string): Promise<unknown> {
    return this.getJson(`/systems/${encodeURIComponent(key)}/graph`);
  }

  async fetchQueue(): Promise<QueueItem[]> {
    return this.getJson("/queue");
  }

  async review(
    key: string,
    action: "accept" | "needs_revision",
    instructions = "",
  ): Promise<ExtractionRecordWire> {
    const response = await fetch(this.url(`/systems/${encodeURIComponent(key)}/review`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ action, instructions }),
    });
    if (!response.ok) {
      throw new ApiError(`review of ${key} failed: ${response.status}`, response.status);
    }
    const body = (await response.json()) as { record: ExtractionRecordWire };
    return body.record;
  }

  async extract(key: string, paperText: string): Promise<ExtractionRecordWire> {
    const response = await fetch(this.url("/extract"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ key, paper_text: paperText }),
    });
    if (!response.ok) {
      throw new ApiError(`extraction failed: ${response.status}`, response.status);
    }
    const body = (await response.json()) as { record: ExtractionRecordWire };
    return body.record;
  }
}
