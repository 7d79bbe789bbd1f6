/**
 * Minimal in-memory stand-in for `sol2eb serve`, speaking the captured wire
 * format. It replays the Gift session: NewAccount(ADDRESS1, 3), then
 * SetPass(hash=2, msg_sender=ADDRESS1, msg_value=1); a SetPass with
 * msg_value=4 fails grd4 like the real checker does.
 */

import type { FetchLike } from "../src/api.js";
import {
  EVENTS_AFTER_NEW_ACCOUNT,
  EVENTS_INITIAL,
  FIRE_NEW_ACCOUNT,
  FIRE_SETPASS,
  GUARD_FAILED,
  OPEN_SESSION,
  POS_REFINED,
  PROJECTS,
  TRACE_AFTER_TWO_STEPS,
} from "./fixtures.js";

type Json = Record<string, unknown> | unknown[];

function respond(status: number, body: Json) {
  return Promise.resolve({ status, json: () => Promise.resolve(body) });
}

export class MockServer {
  step = 0;
  requests: { method: string; url: string; body?: unknown }[] = [];

  readonly fetch: FetchLike = (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body === undefined ? undefined : JSON.parse(init.body);
    this.requests.push({ method, url, body });

    if (url === "/api/projects") return respond(200, PROJECTS);
    if (url.startsWith("/api/projects/Gift_refined/pos")) {
      return respond(200, POS_REFINED);
    }
    if (url === "/api/sessions" && method === "POST") {
      this.step = 0;
      return respond(200, OPEN_SESSION);
    }
    if (url === "/api/sessions/fixture-session/events") {
      return respond(200, this.step === 0 ? EVENTS_INITIAL : EVENTS_AFTER_NEW_ACCOUNT);
    }
    if (url === "/api/sessions/fixture-session/trace") {
      const steps = TRACE_AFTER_TWO_STEPS.steps.slice(0, this.step);
      return respond(200, { ...TRACE_AFTER_TWO_STEPS, steps });
    }
    if (url === "/api/sessions/fixture-session/fire" && method === "POST") {
      const fired = body as { event: string; params: Record<string, unknown> };
      if (fired.event === "NewAccount") {
        this.step = 1;
        return respond(200, FIRE_NEW_ACCOUNT);
      }
      if (fired.event === "SetPass" && fired.params["msg_value"] === 4) {
        return respond(GUARD_FAILED.status, GUARD_FAILED.body);
      }
      if (fired.event === "SetPass") {
        this.step = 2;
        return respond(200, FIRE_SETPASS);
      }
    }
    if (url === "/api/sessions/fixture-session/undo" && method === "POST") {
      if (this.step === 0) return respond(409, { error: "nothing to undo" });
      this.step -= 1;
      return respond(200, this.step === 1 ? FIRE_NEW_ACCOUNT : OPEN_SESSION.state);
    }
    if (url === "/api/sessions/fixture-session/reset" && method === "POST") {
      this.step = 0;
      return respond(200, OPEN_SESSION.state);
    }
    return respond(404, { detail: `no fixture for ${method} ${url}` });
  };
}
