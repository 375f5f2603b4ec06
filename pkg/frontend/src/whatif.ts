import { Api, ApiError, LatestWins, SUPERSEDED } from "./api.js";
import { diffReports, isEmptyDiff, type ReportDiff } from "./diff.js";
import { clear, el } from "./dom.js";
import { RoundPlayback } from "./playback.js";
import type { BallotInput, ElectionDef, TallyReport } from "./types.js";

export interface WhatIfOptions {
  api: Api;
  election?: ElectionDef;
  ballots: BallotInput[];
}

/**
 * Ballot editor with re-tally and diff: edit any line, run, and see which
 * rounds and winners changed against the last good result. A failed tally
 * keeps the previous result on screen.
 */
export class WhatIfPanel {
  readonly root: HTMLElement;
  lastReport: TallyReport | null = null;
  lastDiff: ReportDiff | null = null;

  private readonly api: Api;
  private readonly election?: ElectionDef;
  private readonly editor: HTMLTextAreaElement;
  private readonly errorBox: HTMLElement;
  private readonly diffBox: HTMLElement;
  private readonly stage: HTMLElement;
  private readonly inflight = new LatestWins();
  /** Resolves when the latest run has been applied; for tests. */
  settled: Promise<void> = Promise.resolve();

  constructor(opts: WhatIfOptions) {
    this.api = opts.api;
    this.election = opts.election;
    this.editor = el("textarea", { class: "ballot-editor", rows: "10", spellcheck: "false" });
    this.editor.value = opts.ballots.map((b) => JSON.stringify(b)).join("\n");
    this.errorBox = el("div", { class: "whatif-error" });
    this.diffBox = el("div", { class: "diff" });
    this.stage = el("div", { class: "whatif-stage" });
    const run = el("button", { class: "retally", type: "button" }, "re-tally");
    run.addEventListener("click", () => {
      this.settled = this.retally();
    });
    this.root = el(
      "div",
      { class: "whatif" },
      this.editor,
      run,
      this.errorBox,
      this.diffBox,
      this.stage,
    );
  }

  parseBallots(): BallotInput[] {
    const lines = this.editor.value
      .split("\n")
      .map((line) => line.trim())
      .filter((line) => line.length > 0);
    return lines.map((line, i) => {
      try {
        return JSON.parse(line) as BallotInput;
      } catch {
        throw new Error(`line ${i + 1}: not valid JSON`);
      }
    });
  }

  async retally(): Promise<void> {
    this.errorBox.textContent = "";
    let ballots: BallotInput[];
    try {
      ballots = this.parseBallots();
    } catch (err) {
      this.errorBox.textContent = (err as Error).message;
      return;
    }
    let report;
    try {
      report = await this.inflight.run((signal) =>
        this.api.tally({ election: this.election, ballots }, signal),
      );
    } catch (err) {
      if (err instanceof ApiError) {
        this.errorBox.textContent = err.message;
        return;
      }
      throw err;
    }
    if (report === SUPERSEDED) return;
    this.apply(report as TallyReport);
  }

  private apply(report: TallyReport): void {
    const diff = this.lastReport ? diffReports(this.lastReport, report) : null;
    this.lastReport = report;
    this.lastDiff = diff;
    clear(this.stage);
    this.stage.append(new RoundPlayback(report).root);
    this.renderDiff(diff);
  }

  private renderDiff(diff: ReportDiff | null): void {
    clear(this.diffBox);
    if (diff === null) {
      this.diffBox.append(el("div", { class: "diff-empty" }, "first tally"));
      return;
    }
    if (isEmptyDiff(diff)) {
      this.diffBox.append(el("div", { class: "diff-empty" }, "no change"));
      return;
    }
    if (diff.winnersChanged) {
      this.diffBox.append(
        el(
          "div",
          { class: "diff-winners" },
          `winners: ${diff.winnersBefore.join(", ")} → ${diff.winnersAfter.join(", ")}`,
        ),
      );
    }
    for (const round of diff.rounds) {
      const items = round.changes.map((ch) =>
        el(
          "li",
          { class: "diff-change", "data-candidate": ch.candidate },
          `${ch.candidate}: ${ch.before ?? "—"} → ${ch.after ?? "—"}`,
        ),
      );
      if (round.actionBefore !== round.actionAfter) {
        items.push(
          el(
            "li",
            { class: "diff-action" },
            `action: ${round.actionBefore ?? "—"} → ${round.actionAfter ?? "—"}`,
          ),
        );
      }
      this.diffBox.append(
        el(
          "div",
          { class: "diff-round", "data-round": String(round.round) },
          el("div", { class: "diff-round-title" }, `round ${round.round}`),
          el("ul", {}, ...items),
        ),
      );
    }
  }
}
