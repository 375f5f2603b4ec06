// Wire types for the liquidvote JSON API. Exact amounts arrive as strings
// ("n/d" for rationals, printf %g for square-root quantities) with a
// *_decimal companion; the UI re-displays them and never does vote math.

export interface ElectionDef {
  id: string;
  method: string;
  seats?: number;
  candidates: string[];
  quota_rule?: string;
  tie_order?: string[];
}

export interface MethodsInfo {
  methods: string[];
  quota_rules: string[];
  default_quota_rules: Record<string, string>;
}

export type BallotInput =
  | { id: string; ranking: string[] }
  | { id: string; parts: Record<string, number> }
  | { id: string; profile: string; overrides?: Record<string, number> };

export interface TransferEntry {
  source: string;
  target: string;
  amount: string;
  amount_decimal: number;
}

export interface RoundAction {
  kind: string;
  candidates: string[];
}

export interface RoundInfo {
  round: number;
  quota: string | null;
  quota_decimal: number | null;
  supports: Record<string, string>;
  supports_decimal: Record<string, number>;
  action: RoundAction;
  tie_break: boolean;
  transfers: TransferEntry[];
  transferred: string;
  transferred_decimal: number;
  exhausted: string;
  exhausted_decimal: number;
  accounted: string | null;
  accounted_decimal: number | null;
}

export interface CandidateOutcome {
  status: string;
  round: number | null;
  locked: string;
  locked_decimal: number;
  stack?: number;
}

export interface ProfileUsage {
  followers: number;
  overridden: number;
  flowed: Record<string, string>;
  flowed_decimal: Record<string, number>;
}

export interface TallyReport {
  election: ElectionDef;
  winners: string[];
  flags: string[];
  ballots?: number;
  exhausted: string;
  exhausted_decimal: number;
  rounds: RoundInfo[];
  candidates: Record<string, CandidateOutcome>;
  profile_usage?: Record<string, ProfileUsage>;
}

export interface NormalizedParts {
  id: string;
  kind: "parts";
  parts: Record<string, number>;
  shares: Record<string, string>;
  shares_decimal: Record<string, number>;
  heights: Record<string, number>;
  balloon_heights: Record<string, number>;
  parts_budget: number;
}

export interface NormalizedRanked {
  id: string;
  kind: "ranked";
  ranking: string[];
}

export type NormalizedBallot = NormalizedParts | NormalizedRanked;

export interface TallyRequest {
  election?: ElectionDef;
  ballots: BallotInput[];
  profiles?: Record<string, unknown>;
  exponent?: number;
}

export interface NormalizeRequest {
  ballot: BallotInput;
  election?: ElectionDef;
  parts_budget?: number;
}
