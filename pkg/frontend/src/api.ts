// Typed client for the seqcomp service. Every call is appended to an
// interaction log, so a session can be replayed request-for-request.

import type {
  AlignmentView,
  GridResponse,
  MatrixOpName,
  PatternQuery,
  PatternsResponse,
  Pick,
  SelectionResponse,
  SessionResponse,
  SortMetric,
  SortOrder,
} from "./types.js";

export interface LoggedRequest {
  method: "GET" | "POST";
  path: string;
  body?: unknown;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  readonly log: LoggedRequest[] = [];

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async send<T>(method: "GET" | "POST", path: string, body?: unknown): Promise<T> {
    this.log.push(body === undefined ? { method, path } : { method, path, body });
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const doc = (await resp.json()) as { detail?: unknown };
        if (doc.detail !== undefined) detail = JSON.stringify(doc.detail);
      } catch {
        // non-JSON error body; keep statusText
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  createSession(dataset: string): Promise<SessionResponse> {
    return this.send("POST", "/sessions", { dataset });
  }

  getMatrix(sessionId: string): Promise<GridResponse> {
    return this.send("GET", `/sessions/${sessionId}/matrix`);
  }

  matrixOp(
    sessionId: string,
    op: MatrixOpName,
    paths: { rowPath?: string[]; colPath?: string[] } = {},
  ): Promise<GridResponse> {
    return this.send("POST", `/sessions/${sessionId}/matrix`, { op, ...paths });
  }

  sort(sessionId: string, metric: SortMetric, order: SortOrder): Promise<GridResponse> {
    return this.send("POST", `/sessions/${sessionId}/matrix/sort`, { metric, order });
  }

  filter(sessionId: string, minLen: number, maxLen?: number): Promise<GridResponse> {
    const body: { minLen: number; maxLen?: number } = { minLen };
    if (maxLen !== undefined) body.maxLen = maxLen;
    return this.send("POST", `/sessions/${sessionId}/matrix/filter`, body);
  }

  select(sessionId: string, picksA: Pick[], picksB: Pick[]): Promise<SelectionResponse> {
    return this.send("POST", `/sessions/${sessionId}/selection`, { picksA, picksB });
  }

  getPatterns(sessionId: string, query: PatternQuery = {}): Promise<PatternsResponse> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query)) {
      if (value !== undefined) params.set(key, String(value));
    }
    const suffix = params.size > 0 ? `?${params.toString()}` : "";
    return this.send("GET", `/sessions/${sessionId}/patterns${suffix}`);
  }

  getSequences(sessionId: string, patternId: string, alignEvent?: string): Promise<AlignmentView> {
    const suffix = alignEvent ? `?alignEvent=${encodeURIComponent(alignEvent)}` : "";
    return this.send("GET", `/sessions/${sessionId}/patterns/${patternId}/sequences${suffix}`);
  }
}

/** Re-issue a logged interaction sequence against another client. */
export async function replay(log: LoggedRequest[], client: ApiClient): Promise<void> {
  for (const entry of log) {
    await client.send(entry.method, entry.path, entry.body);
  }
}
