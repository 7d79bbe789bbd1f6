/**
 * Typed client for the sol2eb HTTP API.
 *
 * Values on the wire are integers, booleans, address atom names, sorted
 * arrays for sets and sorted [key, value] pair arrays for maps; the client
 * passes them through untouched.
 */

export type Value = number | boolean | string | Value[];

export interface InvariantStatus {
  label: string;
  holds: boolean;
}

export interface StatePayload {
  event: string | null;
  params: Record<string, Value>;
  variables: Record<string, Value>;
  previous: Record<string, Value> | null;
  invariants: InvariantStatus[];
  step: number;
}

export interface OpenSessionResponse {
  session_id: string;
  project: string;
  machine: string;
  state: StatePayload;
}

export interface EventOffer {
  event: string;
  params: Record<string, Value>[];
  overflow: boolean;
}

export interface TraceStep {
  event: string;
  params: Record<string, Value>;
  state: Record<string, Value>;
}

export interface TraceDocument {
  machine: string;
  bounds: { addr: number; int_lo: number; int_hi: number };
  constants: Record<string, Value>;
  steps: TraceStep[];
}

export interface ProjectInfo {
  name: string;
  machines: string[];
}

export interface PoEntry {
  name: string;
  machine?: string;
  kind: "INV" | "WD" | "GRD" | "SIM";
  status: "discharged" | "violated" | "unsupported";
  cases: number;
  counterexample: Record<string, Value> | null;
  source_span: { file: string | null; line: number; col: number } | null;
}

export interface PoReport {
  project: string;
  bounds: { addr: number; int_lo: number; int_hi: number };
  pos: PoEntry[];
}

export interface Bounds {
  addr: number;
  int_lo: number;
  int_hi: number;
}

/** Error carrying the structured body of a non-2xx API response. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: Record<string, unknown>,
  ) {
    super(describeApiError(status, body));
  }

  /** Guard label when the server refused to fire an event. */
  get failedGuard(): string | null {
    const guard = this.body["failed_guard"];
    return typeof guard === "string" ? guard : null;
  }
}

function describeApiError(status: number, body: Record<string, unknown>): string {
  if (typeof body["failed_guard"] === "string") {
    return `guard failed: ${body["failed_guard"]}`;
  }
  if (typeof body["event_error"] === "string") {
    return `event error: ${body["event_error"]}`;
  }
  if (typeof body["error"] === "string") return String(body["error"]);
  if (typeof body["detail"] === "string") return String(body["detail"]);
  return `API error (${status})`;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchImpl(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = (await resp.json()) as Record<string, unknown>;
    if (resp.status < 200 || resp.status >= 300) {
      throw new ApiError(resp.status, data);
    }
    return data as T;
  }

  listProjects(): Promise<ProjectInfo[]> {
    return this.request("GET", "/api/projects");
  }

  openSession(body: {
    project?: string;
    files?: string[];
    machine?: string;
    constants?: Record<string, Value>;
    bounds?: Bounds;
  }): Promise<OpenSessionResponse> {
    return this.request("POST", "/api/sessions", body);
  }

  getState(sessionId: string): Promise<StatePayload> {
    return this.request("GET", `/api/sessions/${sessionId}/state`);
  }

  getEvents(sessionId: string): Promise<EventOffer[]> {
    return this.request("GET", `/api/sessions/${sessionId}/events`);
  }

  fire(sessionId: string, event: string, params: Record<string, Value>): Promise<StatePayload> {
    return this.request("POST", `/api/sessions/${sessionId}/fire`, { event, params });
  }

  undo(sessionId: string): Promise<StatePayload> {
    return this.request("POST", `/api/sessions/${sessionId}/undo`);
  }

  reset(sessionId: string): Promise<StatePayload> {
    return this.request("POST", `/api/sessions/${sessionId}/reset`);
  }

  getTrace(sessionId: string): Promise<TraceDocument> {
    return this.request("GET", `/api/sessions/${sessionId}/trace`);
  }

  getPoReport(project: string, bounds: Bounds, all = false): Promise<PoReport> {
    const query = new URLSearchParams({
      addr: String(bounds.addr),
      lo: String(bounds.int_lo),
      hi: String(bounds.int_hi),
      all: String(all),
    });
    return this.request("GET", `/api/projects/${encodeURIComponent(project)}/pos?${query}`);
  }
}
