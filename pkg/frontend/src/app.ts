/**
 * DOM wiring: one session per tab, driven entirely by server responses.
 */

import { ApiClient, Bounds, PoReport, ProjectInfo } from "./api.js";
import { poRows, SessionView } from "./viewmodel.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) node.append(child);
  return node;
}

function clear(node: HTMLElement): HTMLElement {
  node.replaceChildren();
  return node;
}

export class App {
  private view: SessionView;
  private projects: ProjectInfo[] = [];
  private report: PoReport | null = null;
  private reportError: string | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {
    this.view = new SessionView(api);
  }

  async start(): Promise<void> {
    this.projects = await this.api.listProjects();
    this.renderShell();
    const first = this.projects[0];
    if (first !== undefined) {
      await this.openProject(first.name);
    }
  }

  private bounds(): Bounds {
    const read = (id: string, fallback: number) => {
      const input = document.getElementById(id) as HTMLInputElement | null;
      const parsed = input === null ? NaN : parseInt(input.value, 10);
      return Number.isNaN(parsed) ? fallback : parsed;
    };
    return { addr: read("bound-addr", 3), int_lo: read("bound-lo", 0), int_hi: read("bound-hi", 4) };
  }

  private async openProject(name: string): Promise<void> {
    await this.view.open(name, this.bounds());
    this.report = null;
    this.reportError = null;
    this.renderSession();
    this.renderReport();
  }

  private renderShell(): void {
    const picker = el("select", { id: "project-picker" });
    for (const project of this.projects) {
      picker.append(el("option", { value: project.name }, [project.name]));
    }
    picker.addEventListener("change", () => {
      void this.openProject(picker.value);
    });

    const boundsBox = el("span", { class: "bounds" }, [
      "addr ",
      el("input", { id: "bound-addr", type: "number", value: "3", min: "1" }),
      " ints [",
      el("input", { id: "bound-lo", type: "number", value: "0" }),
      ", ",
      el("input", { id: "bound-hi", type: "number", value: "4" }),
      "]",
    ]);
    const reopen = el("button", {}, ["open session"]);
    reopen.addEventListener("click", () => {
      void this.openProject(picker.value);
    });

    clear(this.root).append(
      el("header", {}, [
        el("h1", {}, ["sol2eb animator"]),
        el("div", { class: "controls" }, [picker, boundsBox, reopen]),
      ]),
      el("div", { id: "notice" }),
      el("main", {}, [
        el("section", { id: "state-panel" }, [el("h2", {}, ["Machine state"])]),
        el("section", { id: "events-panel" }, [el("h2", {}, ["Enabled events"])]),
        el("section", { id: "trace-panel" }, [el("h2", {}, ["Trace"])]),
        el("section", { id: "po-panel" }, [el("h2", {}, ["Proof obligations"])]),
      ]),
    );
  }

  private renderNotice(): void {
    const box = clear(document.getElementById("notice") as HTMLElement);
    const notice = this.view.notice;
    if (notice !== null) {
      box.append(el("div", { class: `toast ${notice.kind}` }, [notice.text]));
    }
  }

  private renderSession(): void {
    this.renderNotice();
    const panel = clear(document.getElementById("state-panel") as HTMLElement);
    panel.append(el("h2", {}, [`Machine state — ${this.view.machine ?? ""}`]));

    const banner = this.view.banner();
    panel.append(
      el("div", { class: banner.ok ? "banner ok" : "banner bad", id: "invariant-banner" }, [
        banner.ok ? `${banner.text} — no event errors detected` : banner.text,
      ]),
    );

    const head = el("tr", {}, [
      el("th", {}, ["Name"]),
      el("th", {}, ["Value"]),
      el("th", {}, ["Previous value"]),
    ]);
    const table = el("table", { class: "variables" }, [head]);
    for (const row of this.view.variableRows()) {
      table.append(
        el("tr", { class: row.changed ? "changed" : "" }, [
          el("td", {}, [row.name]),
          el("td", {}, [row.value]),
          el("td", {}, [row.previous]),
        ]),
      );
    }
    panel.append(table);

    const undoBtn = el("button", {}, ["undo"]);
    undoBtn.addEventListener("click", () => {
      void this.view.undo().then(() => this.renderSession());
    });
    const resetBtn = el("button", {}, ["reset"]);
    resetBtn.addEventListener("click", () => {
      void this.view.reset().then(() => this.renderSession());
    });
    panel.append(el("div", { class: "controls" }, [
      undoBtn, resetBtn, el("span", { class: "step" }, [`step ${this.view.state?.step ?? 0}`]),
    ]));

    this.renderEvents();
    this.renderTrace();
  }

  private renderEvents(): void {
    const panel = clear(document.getElementById("events-panel") as HTMLElement);
    panel.append(el("h2", {}, ["Enabled events"]));
    if (this.view.offers.length === 0) {
      panel.append(el("p", { class: "muted" }, ["no enabled events (deadlock)"]));
      return;
    }
    for (const offer of this.view.offers) {
      const box = el("details", { class: "offer", open: "" }, [
        el("summary", {}, [
          `${offer.event} — ${offer.params.length} offer(s)` +
            (offer.overflow ? " (more…)" : ""),
        ]),
      ]);
      for (const valuation of offer.params) {
        const button = el("button", { class: "fire" }, [
          this.view.offerLabel(offer, valuation),
        ]);
        button.addEventListener("click", () => {
          void this.view.fire(offer.event, valuation).then(() => this.renderSession());
        });
        box.append(button);
      }
      panel.append(box);
    }
  }

  private renderTrace(): void {
    const panel = clear(document.getElementById("trace-panel") as HTMLElement);
    panel.append(el("h2", {}, ["Trace"]));
    const list = el("ol", { class: "trace" });
    for (const step of this.view.trace) {
      list.append(el("li", {}, [this.view.offerLabel(
        { event: step.event, params: [], overflow: false }, step.params)]));
    }
    panel.append(this.view.trace.length === 0
      ? el("p", { class: "muted" }, ["INITIALISATION only"])
      : list);
  }

  private renderReport(): void {
    const panel = clear(document.getElementById("po-panel") as HTMLElement);
    panel.append(el("h2", {}, ["Proof obligations"]));
    const run = el("button", {}, ["run check"]);
    run.addEventListener("click", () => {
      const project = this.view.project;
      if (project === null) return;
      run.setAttribute("disabled", "");
      this.api
        .getPoReport(project, this.bounds())
        .then((report) => {
          this.report = report;
          this.reportError = null;
        })
        .catch((err: Error) => {
          this.reportError = err.message;
        })
        .finally(() => {
          run.removeAttribute("disabled");
          this.renderReport();
        });
    });
    panel.append(el("div", { class: "controls" }, [run]));

    if (this.reportError !== null) {
      panel.append(el("div", { class: "toast error" }, [this.reportError]));
      return;
    }
    if (this.report === null) return;

    const head = el("tr", {}, [
      el("th", {}, ["Obligation"]),
      el("th", {}, ["Kind"]),
      el("th", {}, ["Status"]),
      el("th", {}, ["Cases"]),
    ]);
    const table = el("table", { class: "pos" }, [head]);
    for (const row of poRows(this.report)) {
      const statusCell = el("td", { class: `status ${row.status}` }, [
        row.status === "discharged" ? "discharged" : row.status.toUpperCase(),
      ]);
      const tr = el("tr", { class: `po ${row.status}` }, [
        el("td", {}, [row.name]),
        el("td", {}, [row.kind]),
        statusCell,
        el("td", {}, [String(row.cases)]),
      ]);
      table.append(tr);
      if (row.counterexample !== null) {
        const body = el("dl", { class: "counterexample" });
        for (const binding of row.counterexample) {
          body.append(el("dt", {}, [binding.name]), el("dd", {}, [binding.value]));
        }
        const details = el("details", {}, [el("summary", {}, ["counterexample"]), body]);
        if (row.source !== null) {
          details.append(el("p", { class: "muted" }, [`source: ${row.source}`]));
        }
        table.append(el("tr", { class: "po-detail" }, [
          el("td", { colspan: "4" }, [details]),
        ]));
      }
    }
    panel.append(table);
  }
}
