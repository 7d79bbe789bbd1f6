/**
 * The end-to-end walkthrough the UI must support: open the Gift project,
 * fire SetPass from a server offer, watch both value columns move under an
 * "invariants ok" banner, and see exactly one red row (with an expandable
 * counterexample) on the refined project's obligation dashboard.
 */

import { beforeEach, describe, expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import { poRows, SessionView, violatedCount } from "../src/viewmodel.js";
import { MockServer } from "./mockServer.js";
import { POS_REFINED } from "./fixtures.js";

let server: MockServer;
let view: SessionView;

beforeEach(async () => {
  server = new MockServer();
  view = new SessionView(new ApiClient("", server.fetch));
  await view.open("Gift_1_ETH");
});

describe("variables table", () => {
  test("shows name, value and previous-value columns", () => {
    const rows = view.variableRows();
    expect(rows.map((r) => r.name)).toEqual([
      "address_tem", "balanceof", "hashPass", "passHasBeenSet",
    ]);
    const balance = rows.find((r) => r.name === "balanceof")!;
    expect(balance.value).toBe("{this ↦ 1}");
    expect(balance.previous).toBe(""); // nothing before INITIALISATION
  });

  test("banner reads invariants ok", () => {
    const banner = view.banner();
    expect(banner.ok).toBe(true);
    expect(banner.text).toBe("invariants ok");
  });
});

describe("firing offers", () => {
  test("SetPass is offered only after an account exists", async () => {
    expect(view.offers.map((o) => o.event)).not.toContain("SetPass");
    await view.fire("NewAccount", { a: "ADDRESS1", b: 3 });
    expect(view.offers.map((o) => o.event)).toContain("SetPass");
  });

  test("firing SetPass updates value and previous columns side by side", async () => {
    await view.fire("NewAccount", { a: "ADDRESS1", b: 3 });
    const offer = view.offers.find((o) => o.event === "SetPass")!;
    const valuation = offer.params.find(
      (p) => p["hash"] === 2 && p["msg_value"] === 1,
    )!;
    await view.fire("SetPass", valuation);

    const balance = view.variableRows().find((r) => r.name === "balanceof")!;
    expect(balance.value).toBe("{this ↦ 2, ADDRESS1 ↦ 2}");
    expect(balance.previous).toBe("{this ↦ 1, ADDRESS1 ↦ 3}");
    expect(balance.changed).toBe(true);

    const hash = view.variableRows().find((r) => r.name === "hashPass")!;
    expect(hash.value).toBe("2");
    expect(hash.previous).toBe("0");

    expect(view.banner().text).toBe("invariants ok");
    expect(view.trace.map((s) => s.event)).toEqual(["NewAccount", "SetPass"]);
  });

  test("a refused guard becomes an inline notice, state untouched", async () => {
    await view.fire("NewAccount", { a: "ADDRESS1", b: 3 });
    const before = view.variableRows();
    await view.fire("SetPass", { hash: 2, msg_sender: "ADDRESS1", msg_value: 4 });
    expect(view.notice).toEqual({ kind: "error", text: "guard failed: grd4" });
    expect(view.variableRows()).toEqual(before);
  });

  test("undo walks back to the previous state", async () => {
    await view.fire("NewAccount", { a: "ADDRESS1", b: 3 });
    await view.undo();
    expect(view.state?.step).toBe(0);
    expect(view.trace).toEqual([]);
  });
});

describe("obligation dashboard", () => {
  test("refined project shows exactly one red row", async () => {
    const api = new ApiClient("", server.fetch);
    const report = await api.getPoReport("Gift_refined",
      { addr: 2, int_lo: 0, int_hi: 3 });
    expect(violatedCount(report)).toBe(1);

    const rows = poRows(report);
    const red = rows.filter((r) => r.status === "violated");
    expect(red.map((r) => r.name)).toEqual(["SetPass/act2/SIM"]);
    expect(rows.filter((r) => r.status === "discharged").length).toBe(
      rows.length - 1);
  });

  test("the red row expands to the replayable counterexample", () => {
    const rows = poRows(POS_REFINED as never);
    const red = rows.find((r) => r.status === "violated")!;
    expect(red.counterexample).not.toBeNull();
    const bindings = new Map(red.counterexample!.map((b) => [b.name, b.value]));
    expect(bindings.get("passHasBeenSet")).toBe("TRUE");
    expect(Number(bindings.get("msg_value"))).toBeGreaterThanOrEqual(1);
    expect(bindings.get("balanceof")).toMatch(/↦/);
  });

  test("discharged rows carry no counterexample", () => {
    const rows = poRows(POS_REFINED as never);
    for (const row of rows.filter((r) => r.status === "discharged")) {
      expect(row.counterexample).toBeNull();
    }
  });
});
