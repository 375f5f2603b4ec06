import { Api, ApiError, LatestWins, SUPERSEDED } from "./api.js";
import { clear, el } from "./dom.js";
import { EMPTY_READOUT, fmtHeight, fmtShare } from "./format.js";
import type { ElectionDef, NormalizedParts } from "./types.js";

export interface AllocationOptions {
  api: Api;
  election: ElectionDef;
  ballotId?: string;
  /** Called with a ready-to-save ballots.jsonl line on export. */
  onExport?: (line: string) => void;
}

/**
 * Parts editor: one row per candidate with up/down arrows, live share and
 * (quadratic) balloon-height readouts. Every number shown comes from
 * POST /normalize; the panel itself only counts button clicks.
 */
export class AllocationPanel {
  readonly root: HTMLElement;
  readonly parts = new Map<string, number>();

  private readonly api: Api;
  private readonly election: ElectionDef;
  private readonly ballotId: string;
  private readonly onExport?: (line: string) => void;
  private readonly inflight = new LatestWins();
  private readonly quadratic: boolean;
  private lastBumped: string | null = null;
  /** Resolves when the readouts match the current parts; for tests. */
  settled: Promise<void> = Promise.resolve();

  constructor(opts: AllocationOptions) {
    this.api = opts.api;
    this.election = opts.election;
    this.ballotId = opts.ballotId ?? "studio";
    this.onExport = opts.onExport;
    this.quadratic = opts.election.method === "quadratic";
    for (const c of opts.election.candidates) this.parts.set(c, 0);
    this.root = this.build();
    this.applyEmpty();
  }

  private build(): HTMLElement {
    const rows = this.election.candidates.map((c) => {
      const down = el("button", { class: "down", type: "button" }, "−");
      const up = el("button", { class: "up", type: "button" }, "+");
      down.addEventListener("click", () => this.bump(c, -1));
      up.addEventListener("click", () => this.bump(c, +1));
      return el(
        "tr",
        { "data-candidate": c },
        el("td", { class: "name" }, c),
        el("td", {}, down, el("span", { class: "count" }, "0"), up),
        el("td", { class: "share" }, EMPTY_READOUT),
        el("td", { class: "height" }, this.quadratic ? EMPTY_READOUT : ""),
        el("td", { class: "visual" }, this.visualFor(0)),
        el("td", { class: "row-error" }, ""),
      );
    });
    const exportBtn = el("button", { class: "export", type: "button" }, "export ballot");
    exportBtn.addEventListener("click", () => this.onExport?.(this.exportLine()));
    return el(
      "div",
      { class: `allocation ${this.quadratic ? "balloons" : "beakers"}` },
      el(
        "table",
        {},
        el(
          "thead",
          {},
          el(
            "tr",
            {},
            el("th", {}, "candidate"),
            el("th", {}, "parts"),
            el("th", {}, "share"),
            el("th", {}, this.quadratic ? "height" : ""),
            el("th", {}, ""),
            el("th", {}, ""),
          ),
        ),
        el("tbody", {}, ...rows),
      ),
      el("div", { class: "panel-error" }, ""),
      exportBtn,
    );
  }

  private visualFor(fraction: number): HTMLElement {
    if (this.quadratic) {
      const size = Math.round(fraction * 40);
      return el("span", {
        class: "balloon",
        style: `width:${size}px;height:${size}px`,
      });
    }
    const pct = Math.round(fraction * 100);
    return el("span", { class: "beaker" }, el("span", { class: "fill", style: `height:${pct}%` }));
  }

  private row(candidate: string): HTMLElement {
    const row = this.root.querySelector(`tr[data-candidate="${candidate}"]`);
    if (!row) throw new Error(`no row for candidate ${candidate}`);
    return row as HTMLElement;
  }

  private setCell(candidate: string, cls: string, text: string): void {
    const cell = this.row(candidate).querySelector(`.${cls}`);
    if (cell) cell.textContent = text;
  }

  bump(candidate: string, delta: number): void {
    const next = Math.max(0, (this.parts.get(candidate) ?? 0) + delta);
    this.parts.set(candidate, next);
    this.lastBumped = candidate;
    const counter = this.row(candidate).querySelector(".count");
    if (counter) counter.textContent = String(next);
    this.settled = this.refresh();
  }

  nonzeroParts(): Record<string, number> {
    const out: Record<string, number> = {};
    for (const [c, n] of this.parts) if (n > 0) out[c] = n;
    return out;
  }

  exportLine(): string {
    return JSON.stringify({ id: this.ballotId, parts: this.nonzeroParts() });
  }

  private applyEmpty(): void {
    for (const c of this.election.candidates) {
      this.setCell(c, "share", EMPTY_READOUT);
      if (this.quadratic) this.setCell(c, "height", EMPTY_READOUT);
      this.replaceVisual(c, 0);
    }
    this.clearErrors();
  }

  private clearErrors(): void {
    for (const c of this.election.candidates) this.setCell(c, "row-error", "");
    const panel = this.root.querySelector(".panel-error");
    if (panel) panel.textContent = "";
  }

  private replaceVisual(candidate: string, fraction: number): void {
    const cell = this.row(candidate).querySelector(".visual");
    if (!cell) return;
    clear(cell);
    cell.append(this.visualFor(fraction));
  }

  private async refresh(): Promise<void> {
    const parts = this.nonzeroParts();
    if (Object.keys(parts).length === 0) {
      this.inflight.cancel();
      this.applyEmpty();
      return;
    }
    let normalized;
    try {
      normalized = await this.inflight.run((signal) =>
        this.api.normalize(
          { ballot: { id: this.ballotId, parts }, election: this.election },
          signal,
        ),
      );
    } catch (err) {
      if (err instanceof ApiError) {
        this.showError(err.message);
        return;
      }
      throw err;
    }
    if (normalized === SUPERSEDED) return;
    this.apply(normalized as NormalizedParts);
  }

  private apply(n: NormalizedParts): void {
    this.clearErrors();
    for (const c of this.election.candidates) {
      if (c in n.shares) {
        this.setCell(c, "share", fmtShare(n.shares[c], n.shares_decimal[c]));
        if (this.quadratic) this.setCell(c, "height", fmtHeight(n.balloon_heights[c]));
        this.replaceVisual(
          c,
          this.quadratic
            ? n.balloon_heights[c] / Math.sqrt(n.parts_budget)
            : n.shares_decimal[c],
        );
      } else {
        this.setCell(c, "share", EMPTY_READOUT);
        if (this.quadratic) this.setCell(c, "height", EMPTY_READOUT);
        this.replaceVisual(c, 0);
      }
    }
  }

  private showError(message: string): void {
    this.clearErrors();
    // Server messages name the offending candidate in single quotes;
    // ballot-wide errors land on the row whose click triggered them.
    const named = [...message.matchAll(/'([^']*)'/g)]
      .map((m) => m[1])
      .filter((name) => this.parts.has(name));
    if (named.length > 0) {
      for (const c of named) this.setCell(c, "row-error", message);
    } else if (this.lastBumped !== null) {
      this.setCell(this.lastBumped, "row-error", message);
    } else {
      const panel = this.root.querySelector(".panel-error");
      if (panel) panel.textContent = message;
    }
  }
}
