import { clear, el } from "./dom.js";
import { fmtAmount } from "./format.js";
import { validateReport } from "./schema.js";
import type { RoundInfo, TallyReport } from "./types.js";

/**
 * Steps through a tally report round by round: per-candidate liquid levels
 * with the quota line, the round's action, and its transfer edges. All
 * text comes verbatim from the report.
 */
export class RoundPlayback {
  readonly root: HTMLElement;
  readonly report: TallyReport;
  private step = 0;
  private readonly stage: HTMLElement;
  private readonly label: HTMLElement;
  private readonly prevBtn: HTMLButtonElement;
  private readonly nextBtn: HTMLButtonElement;

  constructor(report: unknown) {
    this.report = validateReport(report);
    this.stage = el("div", { class: "stage" });
    this.label = el("span", { class: "step-label" });
    this.prevBtn = el("button", { class: "prev", type: "button" }, "◀");
    this.nextBtn = el("button", { class: "next", type: "button" }, "▶");
    this.prevBtn.addEventListener("click", () => this.show(this.step - 1));
    this.nextBtn.addEventListener("click", () => this.show(this.step + 1));
    this.root = el(
      "div",
      { class: "playback" },
      el("div", { class: "controls" }, this.prevBtn, this.label, this.nextBtn),
      this.stage,
      el(
        "div",
        { class: "result" },
        `winners: ${this.report.winners.join(", ")}`,
        this.report.flags.length ? ` [${this.report.flags.join(", ")}]` : "",
      ),
    );
    this.show(0);
  }

  get steps(): number {
    return this.report.rounds.length;
  }

  get current(): number {
    return this.step;
  }

  show(i: number): void {
    this.step = Math.min(Math.max(i, 0), this.steps - 1);
    const round = this.report.rounds[this.step];
    this.label.textContent = `round ${round.round} of ${this.steps}`;
    this.prevBtn.disabled = this.step === 0;
    this.nextBtn.disabled = this.step === this.steps - 1;
    clear(this.stage);
    this.stage.append(this.renderRound(round));
  }

  private renderRound(round: RoundInfo): HTMLElement {
    const candidates = this.report.election.candidates.filter((c) => c in round.supports);
    const peak = Math.max(
      1e-12,
      ...candidates.map((c) => round.supports_decimal[c]),
      round.quota_decimal ?? 0,
    );
    const beakers = candidates.map((c) => {
      const frac = round.supports_decimal[c] / peak;
      const bar = el("span", {
        class: "level",
        style: `height:${(frac * 100).toFixed(2)}%`,
        "data-fraction": frac.toFixed(6),
      });
      const badge = round.action.candidates.includes(c) ? ` (${round.action.kind})` : "";
      return el(
        "div",
        { class: "beaker-col", "data-candidate": c },
        el("div", { class: "beaker-glass" }, bar),
        el("div", { class: "support" }, fmtAmount(round.supports[c], round.supports_decimal[c])),
        el("div", { class: "cand-label" }, c + badge),
      );
    });
    const stage = el("div", { class: "round" }, el("div", { class: "beakers" }, ...beakers));
    if (round.quota !== null) {
      const frac = (round.quota_decimal ?? 0) / peak;
      stage.append(
        el(
          "div",
          {
            class: "quota-line",
            style: `bottom:${(frac * 100).toFixed(2)}%`,
            "data-fraction": frac.toFixed(6),
          },
          `quota ${fmtAmount(round.quota, round.quota_decimal)}`,
        ),
      );
    }
    const actionText = `${round.action.kind}: ${round.action.candidates.join(", ")}`;
    stage.append(
      el("div", { class: "action" }, actionText + (round.tie_break ? " (tie break)" : "")),
    );
    if (round.transfers.length > 0) {
      stage.append(
        el(
          "ul",
          { class: "transfers" },
          ...round.transfers.map((t) =>
            el(
              "li",
              { class: "transfer-edge", "data-source": t.source, "data-target": t.target },
              `${t.source} → ${t.target}: ${fmtAmount(t.amount, t.amount_decimal)}`,
            ),
          ),
        ),
      );
    }
    return stage;
  }

  /** Displayed support text for one candidate in the current round; for tests. */
  supportText(candidate: string): string | null {
    const col = this.stage.querySelector(`[data-candidate="${candidate}"] .support`);
    return col ? col.textContent : null;
  }
}
