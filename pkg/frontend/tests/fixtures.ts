// Hand-built report shapes for unit tests. Values here only need to be
// self-consistent; tests that check engine numbers talk to the live API.

import type { TallyReport } from "../src/types.js";

export function sampleReport(): TallyReport {
  return {
    election: {
      id: "unit",
      method: "irv",
      seats: 1,
      quota_rule: "droop-integral",
      candidates: ["A", "B", "C"],
      tie_order: ["A", "B", "C"],
    },
    winners: ["B"],
    flags: [],
    ballots: 8,
    exhausted: "0/1",
    exhausted_decimal: 0.0,
    rounds: [
      {
        round: 1,
        quota: "4/1",
        quota_decimal: 4.0,
        supports: { A: "3/1", B: "3/1", C: "2/1" },
        supports_decimal: { A: 3.0, B: 3.0, C: 2.0 },
        action: { kind: "eliminate", candidates: ["C"] },
        tie_break: false,
        transfers: [{ source: "C", target: "B", amount: "2/1", amount_decimal: 2.0 }],
        transferred: "2/1",
        transferred_decimal: 2.0,
        exhausted: "0/1",
        exhausted_decimal: 0.0,
        accounted: "8/1",
        accounted_decimal: 8.0,
      },
      {
        round: 2,
        quota: "4/1",
        quota_decimal: 4.0,
        supports: { A: "3/1", B: "5/1" },
        supports_decimal: { A: 3.0, B: 5.0 },
        action: { kind: "elect", candidates: ["B"] },
        tie_break: false,
        transfers: [],
        transferred: "0/1",
        transferred_decimal: 0.0,
        exhausted: "0/1",
        exhausted_decimal: 0.0,
        accounted: "8/1",
        accounted_decimal: 8.0,
      },
    ],
    candidates: {
      A: { status: "hopeful", round: null, locked: "0/1", locked_decimal: 0.0 },
      B: { status: "elected", round: 2, locked: "5/1", locked_decimal: 5.0 },
      C: { status: "eliminated", round: 1, locked: "0/1", locked_decimal: 0.0 },
    },
  };
}

export function singleRoundReport(): TallyReport {
  const report = sampleReport();
  report.rounds = [
    {
      round: 1,
      quota: null,
      quota_decimal: null,
      supports: { A: "5/1", B: "3/1", C: "0/1" },
      supports_decimal: { A: 5.0, B: 3.0, C: 0.0 },
      action: { kind: "final-fill", candidates: ["A"] },
      tie_break: false,
      transfers: [],
      transferred: "0/1",
      transferred_decimal: 0.0,
      exhausted: "0/1",
      exhausted_decimal: 0.0,
      accounted: null,
      accounted_decimal: null,
    },
  ];
  report.winners = ["A"];
  report.election.method = "approval";
  return report;
}
