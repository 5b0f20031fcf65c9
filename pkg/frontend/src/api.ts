// Typed HTTP client for the tagging service. All requests and responses
// are JSON; service failures carry {"error", "stage"} and surface here as
// ApiError.

import type {
  ActionsResult,
  AnalyzeResult,
  DiffPredicate,
  DiffReport,
  GraphResult,
  MbfResult,
  Project,
  TagsResult,
  TagSpan,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public stage: string,
    public status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

interface RunOptions {
  maxSteps?: number;
}

export class Client {
  constructor(public baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const raw = await response.text();
    let data: unknown = null;
    try {
      data = raw ? JSON.parse(raw) : null;
    } catch {
      // fall through; non-JSON body handled below
    }
    if (!response.ok) {
      const err = (data ?? {}) as { error?: string; stage?: string };
      throw new ApiError(
        err.error ?? `request failed with status ${response.status}`,
        err.stage ?? "load",
        response.status,
      );
    }
    return data as T;
  }

  getProject(): Promise<Project> {
    return this.request("GET", "/project");
  }

  putProject(project: Project): Promise<Project> {
    return this.request("PUT", "/project", project);
  }

  analyze(text: string): Promise<AnalyzeResult> {
    return this.request("POST", "/analyze", { text });
  }

  simulateMbf(text: string): Promise<MbfResult> {
    return this.request("POST", "/simulate/mbf", { text });
  }

  simulateMre(text: string, options: RunOptions = {}): Promise<TagsResult> {
    return this.request("POST", "/simulate/mre", { text, ...options });
  }

  runActions(text: string, options: RunOptions = {}): Promise<ActionsResult> {
    return this.request("POST", "/actions/run", { text, ...options });
  }

  extractRelations(text: string, options: RunOptions = {}): Promise<GraphResult> {
    return this.request("POST", "/extract/relations", { text, ...options });
  }

  diff(a: TagSpan[], b: TagSpan[], predicate: DiffPredicate = "exact"): Promise<DiffReport> {
    return this.request("POST", "/diff", { a, b, predicate });
  }
}
