"""Core data model: exact amounts, elections, ballots, profiles, results.

All linear vote accounting uses exact rationals (`fractions.Fraction`),
so conservation checks can demand equality rather than tolerances.
Quadratic tallies live in binary64 and carry their own tolerances.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

# Amounts are nonnegative reduced rationals.  Fraction already keeps
# itself reduced; nonnegativity is enforced at the validation borders
# and re-checked by the engines' conservation asserts.
Amount = Fraction

METHODS = ("approval", "cumulative", "quadratic", "irv", "stv", "ctv", "qtv")
RANKED_METHODS = ("irv", "stv")
PARTS_METHODS = ("approval", "cumulative", "quadratic", "ctv", "qtv")
QUOTA_RULES = ("droop-integral", "droop-fractional", "dynamic-candidates")

# flow target for liquid that leaves play; never a legal candidate id
EXHAUSTED = "(exhausted)"

# parts per ballot are capped to keep denominators (and UI widgets) sane
MAX_PARTS_PER_BALLOT = 10_000


class ValidationError(ValueError):
    """Rejected input: malformed file, unknown candidate, bad settings."""


class InvariantError(AssertionError):
    """The engine caught itself breaking a conservation or quota rule."""


def default_quota_rule(method: str) -> str:
    return "dynamic-candidates" if method in ("ctv", "qtv") else "droop-integral"


@dataclass(frozen=True)
class Election:
    """A single contest: candidate roster, seat count, counting method.

    Candidate order is registration order and doubles as the default
    tie-break priority (earlier wins election ties, later falls first
    in elimination ties).  Instances are immutable once validated.
    """

    id: str
    candidates: tuple[str, ...]
    seats: int
    method: str
    quota_rule: str = ""
    tie_order: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id or not isinstance(self.id, str):
            raise ValidationError("election id must be a nonempty string")
        if self.method not in METHODS:
            raise ValidationError(
                f"unknown method {self.method!r}; expected one of {', '.join(METHODS)}")
        if not self.candidates:
            raise ValidationError("election needs at least one candidate")
        seen = set()
        for c in self.candidates:
            if not c or not isinstance(c, str):
                raise ValidationError("candidate ids must be nonempty strings")
            if c == EXHAUSTED:
                raise ValidationError(f"candidate id {EXHAUSTED!r} is reserved")
            if c in seen:
                raise ValidationError(f"duplicate candidate {c!r}")
            seen.add(c)
        if not isinstance(self.seats, int) or isinstance(self.seats, bool):
            raise ValidationError("seats must be an integer")
        if not 1 <= self.seats <= len(self.candidates):
            raise ValidationError(
                f"seats must be between 1 and {len(self.candidates)}, got {self.seats}")
        if self.method == "irv" and self.seats != 1:
            raise ValidationError("irv fills exactly one seat")
        if not self.quota_rule:
            object.__setattr__(self, "quota_rule", default_quota_rule(self.method))
        if self.quota_rule not in QUOTA_RULES:
            raise ValidationError(
                f"unknown quota rule {self.quota_rule!r}; expected one of {', '.join(QUOTA_RULES)}")
        if not self.tie_order:
            object.__setattr__(self, "tie_order", tuple(self.candidates))
        if sorted(self.tie_order) != sorted(self.candidates):
            raise ValidationError("tie_order must be a permutation of the candidates")

    def tie_index(self, candidate: str) -> int:
        return self.tie_order.index(candidate)

    def to_obj(self) -> dict:
        return {
            "id": self.id,
            "method": self.method,
            "seats": self.seats,
            "candidates": list(self.candidates),
            "quota_rule": self.quota_rule,
            "tie_order": list(self.tie_order),
        }


@dataclass(frozen=True)
class Ballot:
    """One cast ballot before normalization.

    Exactly one content kind is set: a ranking (orderable methods), a
    parts map (spreadable methods), or a profile reference with optional
    per-contest overrides.
    """

    id: str
    ranking: tuple[str, ...] | None = None
    parts: Mapping[str, int] | None = None
    profile: str | None = None
    overrides: Mapping[str, Any] | None = None

    @property
    def kind(self) -> str:
        if self.profile is not None:
            return "profile"
        return "ranked" if self.ranking is not None else "parts"

    def __post_init__(self):
        kinds = sum(x is not None for x in (self.ranking, self.parts, self.profile))
        if kinds != 1:
            raise ValidationError(
                f"ballot {self.id!r} must have exactly one of ranking, parts, profile")
        if self.overrides is not None and self.profile is None:
            raise ValidationError(
                f"ballot {self.id!r} has overrides without a profile reference")


@dataclass(frozen=True)
class NormalizedBallot:
    """A ballot reduced to canonical form.

    Parts content becomes exact shares summing to one, with the original
    positive parts kept alongside (transfer methods redistribute by the
    original ratios).  Ranked content passes through untouched.
    """

    id: str
    ranking: tuple[str, ...] | None = None
    shares: Mapping[str, Amount] | None = None
    parts: Mapping[str, int] | None = None

    @property
    def kind(self) -> str:
        return "ranked" if self.ranking is not None else "parts"


@dataclass(frozen=True)
class Profile:
    """Published recommended ballot content that voters can adopt."""

    id: str
    content: Mapping[str, Any]
    name: str | None = None


@dataclass
class ProfileUsage:
    """How one profile was used in a tally: adoption and power flow."""

    followers: int = 0
    overridden: int = 0
    flowed: dict[str, Amount] = field(default_factory=dict)


@dataclass(frozen=True)
class Action:
    kind: str  # "elect" | "eliminate" | "final-fill"
    candidates: tuple[str, ...]


@dataclass(frozen=True)
class Transfer:
    source: str
    target: str  # candidate id or EXHAUSTED
    amount: Amount | float


@dataclass(frozen=True)
class RoundRecord:
    """One counting round: state at tally time plus the action taken.

    `supports` covers every non-eliminated candidate (elected ones at
    their locked level).  `exhausted` and `accounted` are the totals
    after the action, so consecutive records chain into a conservation
    audit.  Quadratic methods record balloon-stack heights as supports
    but keep `transferred`, `exhausted` and `accounted` in liquid units.
    """

    round: int
    quota: Amount | float | None
    supports: Mapping[str, Amount | float | int]
    action: Action
    transfers: tuple[Transfer, ...] = ()
    transferred: Amount | float = Fraction(0)
    exhausted: Amount | float = Fraction(0)
    accounted: Amount | float | None = None
    tie_break: bool = False


@dataclass(frozen=True)
class TallyResult:
    winners: tuple[str, ...]
    rounds: tuple[RoundRecord, ...]
    exhausted: Amount | float
    candidate_states: Mapping[str, Any] = field(default_factory=dict)
    profile_usage: Mapping[str, ProfileUsage] = field(default_factory=dict)
    flags: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# normalization


def normalize_ballot(ballot: Ballot, election: Election) -> NormalizedBallot:
    """Validate a concrete ballot against an election and canonicalize it.

    Parts maps turn into exact shares: {A: 2, B: 1} gives A two thirds
    and B one third.  Profile references must be resolved first.
    """
    if ballot.profile is not None:
        raise ValidationError(
            f"ballot {ballot.id!r} still references profile {ballot.profile!r}; "
            "resolve profiles before normalizing")
    if ballot.ranking is not None:
        seen = set()
        for c in ballot.ranking:
            if c not in election.candidates:
                raise ValidationError(
                    f"ballot {ballot.id!r} ranks unknown candidate {c!r}")
            if c in seen:
                raise ValidationError(f"ballot {ballot.id!r} ranks {c!r} twice")
            seen.add(c)
        return NormalizedBallot(id=ballot.id, ranking=tuple(ballot.ranking))

    parts = ballot.parts or {}
    clean: dict[str, int] = {}
    for c, p in parts.items():
        if c not in election.candidates:
            raise ValidationError(
                f"ballot {ballot.id!r} assigns parts to unknown candidate {c!r}")
        if isinstance(p, bool) or not isinstance(p, int):
            raise ValidationError(
                f"ballot {ballot.id!r}: parts for {c!r} must be an integer")
        if p < 0:
            raise ValidationError(
                f"ballot {ballot.id!r}: parts for {c!r} must be nonnegative")
        if p > 0:
            clean[c] = p
    total = sum(clean.values())
    if total == 0:
        raise ValidationError(f"ballot {ballot.id!r} has no positive parts")
    if total > MAX_PARTS_PER_BALLOT:
        raise ValidationError(
            f"ballot {ballot.id!r} uses {total} parts; at most "
            f"{MAX_PARTS_PER_BALLOT} are allowed")
    # canonical candidate order, exact shares
    ordered = {c: clean[c] for c in election.candidates if c in clean}
    shares = {c: Fraction(p, total) for c, p in ordered.items()}
    return NormalizedBallot(id=ballot.id, shares=shares, parts=ordered)


def normalize_ballots(ballots: Iterable[Ballot], election: Election) -> list[NormalizedBallot]:
    out = [normalize_ballot(b, election) for b in ballots]
    expected = "ranked" if election.method in RANKED_METHODS else "parts"
    for nb in out:
        if nb.kind != expected:
            raise ValidationError(
                f"ballot {nb.id!r} is {nb.kind} but method {election.method!r} "
                f"needs {expected} ballots")
    return out


# ---------------------------------------------------------------------------
# profile resolution


def resolve_profiles(
    ballots: Sequence[Ballot],
    profiles: Mapping[str, Profile],
    election: Election,
) -> tuple[list[Ballot], dict[str, ProfileUsage]]:
    """Replace profile references with concrete content, slot by slot.

    A follower inherits the profile's recommendation unless their ballot
    overrides the contest slot, in which case the override wins outright
    and the profile's power does not flow for that slot.  Concrete
    ballots pass through untouched, so resolution is idempotent and
    conserves the ballot count.
    """
    usage: dict[str, ProfileUsage] = {pid: ProfileUsage() for pid in profiles}
    resolved: list[Ballot] = []
    for ballot in ballots:
        if ballot.profile is None:
            resolved.append(ballot)
            continue
        profile = profiles.get(ballot.profile)
        if profile is None:
            raise ValidationError(
                f"ballot {ballot.id!r} references unknown profile {ballot.profile!r}")
        stats = usage.setdefault(ballot.profile, ProfileUsage())
        stats.followers += 1
        content = profile.content
        overridden = False
        if ballot.overrides:
            for slot in ballot.overrides:
                if slot != election.id:
                    raise ValidationError(
                        f"ballot {ballot.id!r} overrides unknown contest slot {slot!r}")
            if election.id in ballot.overrides:
                content = ballot.overrides[election.id]
                overridden = True
                stats.overridden += 1
        concrete = ballot_content_from_obj(content, ballot.id)
        resolved.append(concrete)
        if not overridden:
            # power the profile steered, in exact shares (first choice
            # carries the whole unit for ranked recommendations)
            nb = normalize_ballot(concrete, election)
            if nb.shares is not None:
                for c, s in nb.shares.items():
                    stats.flowed[c] = stats.flowed.get(c, Amount(0)) + s
            elif nb.ranking:
                c = nb.ranking[0]
                stats.flowed[c] = stats.flowed.get(c, Amount(0)) + 1
    return resolved, usage


# ---------------------------------------------------------------------------
# parsing and file loading


def ballot_content_from_obj(obj: Any, ballot_id: str) -> Ballot:
    """Build a concrete Ballot from JSON-shaped content."""
    if not isinstance(obj, Mapping):
        raise ValidationError(f"ballot {ballot_id!r}: content must be an object")
    if "ranking" in obj and "parts" in obj:
        raise ValidationError(
            f"ballot {ballot_id!r} mixes ranking and parts content")
    if "ranking" in obj:
        ranking = obj["ranking"]
        if not isinstance(ranking, list) or not all(isinstance(c, str) for c in ranking):
            raise ValidationError(
                f"ballot {ballot_id!r}: ranking must be a list of candidate ids")
        return Ballot(id=ballot_id, ranking=tuple(ranking))
    if "parts" in obj:
        parts = obj["parts"]
        if not isinstance(parts, Mapping):
            raise ValidationError(
                f"ballot {ballot_id!r}: parts must map candidates to integers")
        return Ballot(id=ballot_id, parts=dict(parts))
    raise ValidationError(f"ballot {ballot_id!r} has neither ranking nor parts")


def ballot_from_obj(obj: Any, ordinal: int) -> Ballot:
    """Parse one ballot object; `ordinal` synthesizes the id if absent."""
    if not isinstance(obj, Mapping):
        raise ValidationError(f"ballot #{ordinal}: expected a JSON object")
    raw_id = obj.get("id", str(ordinal))
    if not isinstance(raw_id, str) or not raw_id:
        raise ValidationError(f"ballot #{ordinal}: id must be a nonempty string")
    if "profile" in obj:
        profile = obj["profile"]
        if not isinstance(profile, str) or not profile:
            raise ValidationError(f"ballot {raw_id!r}: profile must be a nonempty string")
        overrides = obj.get("overrides")
        if overrides is not None and not isinstance(overrides, Mapping):
            raise ValidationError(f"ballot {raw_id!r}: overrides must be an object")
        return Ballot(id=raw_id, profile=profile,
                      overrides=dict(overrides) if overrides else None)
    return ballot_content_from_obj(obj, raw_id)


def election_from_obj(obj: Any) -> Election:
    if not isinstance(obj, Mapping):
        raise ValidationError("election definition must be a JSON object")
    for key in ("id", "method", "candidates"):
        if key not in obj:
            raise ValidationError(f"election definition is missing {key!r}")
    candidates = obj["candidates"]
    if not isinstance(candidates, list):
        raise ValidationError("election candidates must be a list")
    return Election(
        id=obj["id"],
        candidates=tuple(candidates),
        seats=obj.get("seats", 1),
        method=obj["method"],
        quota_rule=obj.get("quota_rule", ""),
        tie_order=tuple(obj.get("tie_order", ())),
    )


def load_election(path: str) -> Election:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    try:
        return election_from_obj(obj)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def load_ballots(path: str, election: Election | None = None) -> list[Ballot]:
    """Read a ballots.jsonl file; one object per line, blanks ignored.

    An empty file is a valid empty election.  Errors carry the offending
    line number.  When an election is given, rankings and parts are
    checked against its candidate roster immediately.
    """
    ballots: list[Ballot] = []
    ids: dict[str, int] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}:{lineno}: invalid JSON: {exc.msg}") from exc
        try:
            ballot = ballot_from_obj(obj, lineno)
        except ValidationError as exc:
            raise ValidationError(f"{path}:{lineno}: {exc}") from exc
        if ballot.id in ids:
            raise ValidationError(
                f"{path}:{lineno}: duplicate ballot id {ballot.id!r} "
                f"(first used on line {ids[ballot.id]})")
        ids[ballot.id] = lineno
        if election is not None and ballot.profile is None:
            try:
                normalize_ballot(ballot, election)
            except ValidationError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from exc
        ballots.append(ballot)
    return ballots


def profiles_from_obj(obj: Any) -> dict[str, Profile]:
    if not isinstance(obj, Mapping):
        raise ValidationError("profiles file must map profile ids to content")
    profiles: dict[str, Profile] = {}
    for pid, body in obj.items():
        if not isinstance(body, Mapping):
            raise ValidationError(f"profile {pid!r}: content must be an object")
        name = body.get("name")
        if name is not None and not isinstance(name, str):
            raise ValidationError(f"profile {pid!r}: name must be a string")
        content = {k: v for k, v in body.items() if k != "name"}
        # validate the shape once here so broken profiles fail loudly
        ballot_content_from_obj(content, f"profile:{pid}")
        profiles[pid] = Profile(id=pid, content=content, name=name)
    return profiles


def load_profiles(path: str) -> dict[str, Profile]:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    try:
        return profiles_from_obj(obj)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# amount formatting


def format_amount(x: Amount | int) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_amount(s: str) -> Amount:
    try:
        num, den = s.split("/")
        f = Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad amount {s!r}; expected 'numerator/denominator'") from exc
    if f < 0:
        raise ValidationError(f"amount {s!r} is negative")
    return f


def decimal12(x: Amount | float | int) -> float:
    """Convenience decimal, 12 significant digits."""
    return float(f"{float(x):.12g}")
