/**
 * View state for one animation session plus the obligation dashboard.
 *
 * Every mutation round-trips to the server: firing an offer never touches
 * local state until the response arrives, and the offers themselves come
 * verbatim from the server (the client evaluates no guards).
 */

import {
  ApiClient,
  ApiError,
  Bounds,
  EventOffer,
  PoEntry,
  PoReport,
  StatePayload,
  TraceStep,
  Value,
} from "./api.js";
import { formatParams, formatValue } from "./format.js";

export interface VariableRow {
  name: string;
  value: string;
  previous: string;
  changed: boolean;
}

export interface BannerState {
  ok: boolean;
  text: string;
  violated: string[];
}

export interface PoRow {
  name: string;
  machine: string;
  kind: string;
  status: "discharged" | "violated" | "unsupported";
  cases: number;
  counterexample: { name: string; value: string }[] | null;
  source: string | null;
}

export interface Notice {
  kind: "info" | "error";
  text: string;
}

export class SessionView {
  sessionId: string | null = null;
  project: string | null = null;
  machine: string | null = null;
  state: StatePayload | null = null;
  offers: EventOffer[] = [];
  trace: TraceStep[] = [];
  notice: Notice | null = null;

  constructor(private readonly api: ApiClient) {}

  async open(project: string, bounds?: Bounds): Promise<void> {
    const opened = await this.api.openSession({ project, bounds });
    this.sessionId = opened.session_id;
    this.project = opened.project;
    this.machine = opened.machine;
    this.state = opened.state;
    this.notice = null;
    await this.refreshDerived();
  }

  private requireSession(): string {
    if (this.sessionId === null) throw new Error("no open session");
    return this.sessionId;
  }

  private async refreshDerived(): Promise<void> {
    const sid = this.requireSession();
    this.offers = await this.api.getEvents(sid);
    this.trace = (await this.api.getTrace(sid)).steps;
  }

  /** Fire one server-provided offer; guard failures become inline notices. */
  async fire(event: string, params: Record<string, Value>): Promise<void> {
    const sid = this.requireSession();
    try {
      this.state = await this.api.fire(sid, event, params);
      this.notice = { kind: "info", text: `fired ${event}` };
    } catch (err) {
      if (err instanceof ApiError) {
        this.notice = { kind: "error", text: err.message };
        return;
      }
      throw err;
    }
    await this.refreshDerived();
  }

  async undo(): Promise<void> {
    const sid = this.requireSession();
    try {
      this.state = await this.api.undo(sid);
      this.notice = null;
    } catch (err) {
      if (err instanceof ApiError) {
        this.notice = { kind: "error", text: err.message };
        return;
      }
      throw err;
    }
    await this.refreshDerived();
  }

  async reset(): Promise<void> {
    const sid = this.requireSession();
    this.state = await this.api.reset(sid);
    this.notice = null;
    await this.refreshDerived();
  }

  /** Name / Value / Previous value rows, in the server's variable order. */
  variableRows(): VariableRow[] {
    if (this.state === null) return [];
    const previous = this.state.previous;
    return Object.entries(this.state.variables).map(([name, value]) => {
      const before = previous === null ? undefined : previous[name];
      return {
        name,
        value: formatValue(value),
        previous: before === undefined ? "" : formatValue(before),
        changed: before !== undefined && formatValue(before) !== formatValue(value),
      };
    });
  }

  banner(): BannerState {
    if (this.state === null) return { ok: false, text: "no session", violated: [] };
    const violated = this.state.invariants.filter((i) => !i.holds).map((i) => i.label);
    return violated.length === 0
      ? { ok: true, text: "invariants ok", violated: [] }
      : { ok: false, text: `invariant violation: ${violated.join(", ")}`, violated };
  }

  offerLabel(offer: EventOffer, valuation: Record<string, Value>): string {
    const params = formatParams(valuation);
    return params === "" ? offer.event : `${offer.event}(${params})`;
  }
}

/** Rows for the obligation dashboard, most severe first within server order. */
export function poRows(report: PoReport): PoRow[] {
  return report.pos.map((po: PoEntry) => ({
    name: po.name,
    machine: po.machine ?? "",
    kind: po.kind,
    status: po.status,
    cases: po.cases,
    counterexample:
      po.counterexample === null
        ? null
        : Object.entries(po.counterexample).map(([name, value]) => ({
            name,
            value: formatValue(value),
          })),
    source:
      po.source_span === null
        ? null
        : `${po.source_span.file ?? "<source>"}:${po.source_span.line}:${po.source_span.col}`,
  }));
}

export function violatedCount(report: PoReport): number {
  return report.pos.filter((po) => po.status === "violated").length;
}
