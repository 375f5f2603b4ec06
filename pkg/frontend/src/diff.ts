import type { TallyReport } from "./types.js";

export interface SupportChange {
  candidate: string;
  before: string | null;
  after: string | null;
}

export interface RoundDiff {
  round: number;
  changes: SupportChange[];
  actionBefore: string | null;
  actionAfter: string | null;
}

export interface ReportDiff {
  winnersBefore: string[];
  winnersAfter: string[];
  winnersChanged: boolean;
  rounds: RoundDiff[];
}

function actionLabel(report: TallyReport, i: number): string | null {
  const round = report.rounds[i];
  if (!round) return null;
  return `${round.action.kind}: ${round.action.candidates.join(", ")}`;
}

/**
 * Compare two reports by their verbatim amount strings. A round appears in
 * the diff only if some candidate's support or the action changed; a
 * candidate missing on one side diffs against null.
 */
export function diffReports(before: TallyReport, after: TallyReport): ReportDiff {
  const rounds: RoundDiff[] = [];
  const n = Math.max(before.rounds.length, after.rounds.length);
  for (let i = 0; i < n; i++) {
    const a = before.rounds[i];
    const b = after.rounds[i];
    const candidates = new Set<string>([
      ...(a ? Object.keys(a.supports) : []),
      ...(b ? Object.keys(b.supports) : []),
    ]);
    const changes: SupportChange[] = [];
    for (const c of candidates) {
      const sa = a ? (a.supports[c] ?? null) : null;
      const sb = b ? (b.supports[c] ?? null) : null;
      if (sa !== sb) changes.push({ candidate: c, before: sa, after: sb });
    }
    const actionBefore = actionLabel(before, i);
    const actionAfter = actionLabel(after, i);
    if (changes.length > 0 || actionBefore !== actionAfter) {
      rounds.push({ round: i + 1, changes, actionBefore, actionAfter });
    }
  }
  const winnersChanged =
    before.winners.length !== after.winners.length ||
    before.winners.some((w, i) => w !== after.winners[i]);
  return {
    winnersBefore: [...before.winners],
    winnersAfter: [...after.winners],
    winnersChanged,
    rounds,
  };
}

export function isEmptyDiff(diff: ReportDiff): boolean {
  return !diff.winnersChanged && diff.rounds.length === 0;
}
