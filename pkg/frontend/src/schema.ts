import type { RoundInfo, TallyReport } from "./types.js";

/** Raised when a tally report does not have the expected shape. */
export class SchemaError extends Error {
  constructor(path: string, expected: string) {
    super(`${path}: expected ${expected}`);
    this.name = "SchemaError";
  }
}

function isRecord(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function need(cond: boolean, path: string, expected: string): asserts cond {
  if (!cond) throw new SchemaError(path, expected);
}

function checkStringMap(x: unknown, path: string): void {
  need(isRecord(x), path, "object");
  for (const [k, v] of Object.entries(x)) {
    need(typeof v === "string", `${path}.${k}`, "string");
  }
}

function checkNumberMap(x: unknown, path: string): void {
  need(isRecord(x), path, "object");
  for (const [k, v] of Object.entries(x)) {
    need(typeof v === "number", `${path}.${k}`, "number");
  }
}

function checkRound(x: unknown, path: string): asserts x is RoundInfo {
  need(isRecord(x), path, "object");
  need(typeof x.round === "number", `${path}.round`, "number");
  need(x.quota === null || typeof x.quota === "string", `${path}.quota`, "string or null");
  checkStringMap(x.supports, `${path}.supports`);
  checkNumberMap(x.supports_decimal, `${path}.supports_decimal`);
  need(isRecord(x.action), `${path}.action`, "object");
  need(typeof x.action.kind === "string", `${path}.action.kind`, "string");
  need(Array.isArray(x.action.candidates), `${path}.action.candidates`, "array");
  need(Array.isArray(x.transfers), `${path}.transfers`, "array");
  (x.transfers as unknown[]).forEach((t, i) => {
    const tp = `${path}.transfers[${i}]`;
    need(isRecord(t), tp, "object");
    need(typeof t.source === "string", `${tp}.source`, "string");
    need(typeof t.target === "string", `${tp}.target`, "string");
    need(typeof t.amount === "string", `${tp}.amount`, "string");
  });
}

/** Validate an untrusted value as a tally report; throws SchemaError. */
export function validateReport(x: unknown): TallyReport {
  need(isRecord(x), "report", "object");
  need(isRecord(x.election), "report.election", "object");
  need(typeof x.election.method === "string", "report.election.method", "string");
  need(Array.isArray(x.election.candidates), "report.election.candidates", "array");
  need(Array.isArray(x.winners), "report.winners", "array");
  need(Array.isArray(x.flags), "report.flags", "array");
  need(typeof x.exhausted === "string", "report.exhausted", "string");
  need(Array.isArray(x.rounds), "report.rounds", "array");
  need(x.rounds.length > 0, "report.rounds", "at least one round");
  (x.rounds as unknown[]).forEach((r, i) => checkRound(r, `report.rounds[${i}]`));
  need(isRecord(x.candidates), "report.candidates", "object");
  return x as unknown as TallyReport;
}
