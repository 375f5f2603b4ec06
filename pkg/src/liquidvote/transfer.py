"""Transferable tallies: ranked IRV and STV, and the parts-ballot
transferable methods where surplus liquid flows back to each ballot and
respreads by the voter's original ratios.

Shared round shape: tally supports, then take exactly one action
(elect, eliminate, or final-fill), then account for every drop of
liquid.  The ranked methods move whole ballots (with fractional
retention on STV surpluses); the parts methods track per-ballot liquid
per candidate.  The quadratic variant measures support as stacked
balloon heights, sqrt of liquid, and deflates winners to the threshold,
which returns liquid by the square of the deflation factor.

Everything rational is exact; the quadratic engines run in binary64
with a 1e-9 relative conservation guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .model import (
    Action,
    Amount,
    Election,
    EXHAUSTED,
    InvariantError,
    NormalizedBallot,
    RoundRecord,
    TallyResult,
    Transfer,
    ValidationError,
)

FLOAT_TOLERANCE = 1e-9


@dataclass
class CandidateState:
    """Where one candidate ended up and what liquid rests with them."""

    status: str = "hopeful"  # hopeful | elected | eliminated
    locked: Amount | float = Fraction(0)
    held: Amount | float = Fraction(0)
    contributions: dict[str, Amount | float] = field(default_factory=dict)
    round: int | None = None  # round of election or elimination
    stack: float | None = None  # final balloon stack, quadratic methods only


class _TransferLog:
    """Aggregates per-ballot movements into deterministic round edges."""

    def __init__(self, candidates: Sequence[str]):
        self._pos = {c: i for i, c in enumerate(candidates)}
        self._pos[EXHAUSTED] = len(self._pos)
        self._sums: dict[tuple[str, str], Amount | float] = {}

    def add(self, source: str, target: str, amount) -> None:
        if amount == 0:
            return
        key = (source, target)
        self._sums[key] = self._sums.get(key, 0) + amount

    def emit(self) -> tuple[Transfer, ...]:
        items = sorted(self._sums.items(),
                       key=lambda kv: (self._pos[kv[0][0]], self._pos[kv[0][1]]))
        return tuple(Transfer(s, t, a) for (s, t), a in items)


def _require_kind(ballots: Sequence[NormalizedBallot], kind: str, method: str) -> None:
    for b in ballots:
        if b.kind != kind:
            raise ValidationError(
                f"ballot {b.id!r} is {b.kind} but {method} needs {kind} ballots")


def _tie_sorted(candidates, supports, election, reverse=False):
    """Candidates by support; earlier tie_order wins the high end and
    survives the low end."""
    if reverse:
        return sorted(candidates,
                      key=lambda c: (supports[c], -election.tie_index(c)), reverse=True)
    return sorted(candidates, key=lambda c: (supports[c], -election.tie_index(c)))


# ---------------------------------------------------------------------------
# ranked methods


def run_irv(ballots: Sequence[NormalizedBallot], election: Election) -> TallyResult:
    """Instant-runoff for one seat.

    Rounds alternate tallying and eliminating the weakest hopeful; the
    winner is the first hopeful holding more than half of the active
    (non-exhausted) liquid.  If every ballot exhausts first, the seat is
    final-filled by tie order and the result is flagged.
    """
    _require_kind(ballots, "ranked", "irv")
    total = Fraction(len(ballots))
    hopeful = list(election.candidates)
    states = {c: CandidateState() for c in election.candidates}
    flags: list[str] = []
    rounds: list[RoundRecord] = []

    resting: dict[str, str | None] = {}
    exhausted = Fraction(0)
    for b in ballots:
        first = next((c for c in b.ranking if c in states), None)
        resting[b.id] = first
        if first is None:
            exhausted += 1

    rnd = 0
    winners: tuple[str, ...] = ()
    while True:
        rnd += 1
        supports = {c: Fraction(0) for c in hopeful}
        for b in ballots:
            c = resting[b.id]
            if c is not None:
                supports[c] += 1
        active = total - exhausted
        quota = active / 2

        if active > 0:
            leader = _tie_sorted(hopeful, supports, election, reverse=True)[0]
            if supports[leader] > quota:
                st = states[leader]
                st.status, st.locked, st.round = "elected", supports[leader], rnd
                for b in ballots:
                    if resting[b.id] == leader:
                        st.contributions[b.id] = Fraction(1)
                winners = (leader,)
                rounds.append(RoundRecord(
                    round=rnd, quota=quota, supports=dict(supports),
                    action=Action("elect", (leader,)),
                    exhausted=exhausted,
                    accounted=supports[leader]
                    + sum((supports[c] for c in hopeful if c != leader), Fraction(0))
                    + exhausted))
                break

        if active == 0:
            # nothing left to count; fill the seat by tie order and say so
            order = _tie_sorted(hopeful, supports, election, reverse=True)
            chosen = order[0]
            st = states[chosen]
            st.status, st.locked, st.round = "elected", Fraction(0), rnd
            winners = (chosen,)
            flags.append("all-exhausted")
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=dict(supports),
                action=Action("final-fill", (chosen,)),
                exhausted=exhausted, accounted=exhausted,
                tie_break=len(order) > 1))
            break

        loser = _tie_sorted(hopeful, supports, election)[0]
        tie = sum(1 for c in hopeful if supports[c] == supports[loser]) > 1
        hopeful.remove(loser)
        st = states[loser]
        st.status, st.round = "eliminated", rnd
        log = _TransferLog(election.candidates)
        hopeful_set = set(hopeful)
        for b in ballots:
            if resting[b.id] != loser:
                continue
            target = next((c for c in b.ranking if c in hopeful_set), None)
            resting[b.id] = target
            if target is None:
                exhausted += 1
                log.add(loser, EXHAUSTED, Fraction(1))
            else:
                log.add(loser, target, Fraction(1))
        accounted = exhausted + sum(1 for b in ballots if resting[b.id] is not None)
        rounds.append(RoundRecord(
            round=rnd, quota=quota, supports=dict(supports),
            action=Action("eliminate", (loser,)),
            transfers=log.emit(), transferred=supports[loser],
            exhausted=exhausted, accounted=accounted, tie_break=tie))
        if accounted != total:
            raise InvariantError(
                f"irv round {rnd}: accounted {accounted} != ballots {total}")

    for c in hopeful:
        if states[c].status == "hopeful":
            states[c].held = sum(
                (Fraction(1) for b in ballots if resting[b.id] == c), Fraction(0))
    return TallyResult(winners=winners, rounds=tuple(rounds), exhausted=exhausted,
                       candidate_states=states, flags=tuple(flags))


def _ranked_quota(rule: str, total_ballots: int, seats: int,
                  hopeful_liquid: Amount, hopeful_count: int) -> Amount:
    if rule == "droop-integral":
        return Fraction(total_ballots // (seats + 1) + 1)
    if rule == "droop-fractional":
        return Fraction(total_ballots, seats + 1)
    return hopeful_liquid / (hopeful_count + 1)


def run_stv(ballots: Sequence[NormalizedBallot], election: Election) -> TallyResult:
    """Single transferable vote with fractional surplus retention.

    When a hopeful reaches the quota, every supporting ballot keeps the
    fraction quota/support of its current weight with the winner and
    carries the remainder to its next in-play preference.  With one
    seat and full rankings this collapses to instant runoff.
    """
    _require_kind(ballots, "ranked", "stv")
    total = Fraction(len(ballots))
    seats = election.seats
    hopeful = list(election.candidates)
    elected: list[str] = []
    states = {c: CandidateState() for c in election.candidates}
    rounds: list[RoundRecord] = []
    flags: list[str] = []

    weights = {b.id: Fraction(1) for b in ballots}
    resting: dict[str, str | None] = {}
    exhausted = Fraction(0)
    for b in ballots:
        first = next((c for c in b.ranking if c in states), None)
        resting[b.id] = first
        if first is None:
            exhausted += 1

    def move(ballot, source, amount, log, hopeful_set):
        nonlocal exhausted
        target = next((c for c in ballot.ranking if c in hopeful_set), None)
        resting[ballot.id] = target
        weights[ballot.id] = amount
        if amount == 0:
            return
        if target is None:
            exhausted += amount
            log.add(source, EXHAUSTED, amount)
        else:
            log.add(source, target, amount)

    def accounted_total():
        held = sum((weights[b.id] for b in ballots if resting[b.id] is not None),
                   Fraction(0))
        locked = sum((states[c].locked for c in elected), Fraction(0))
        return held + locked + exhausted

    rnd = 0
    while len(elected) < seats:
        rnd += 1
        supports = {c: Fraction(0) for c in hopeful}
        for b in ballots:
            c = resting[b.id]
            if c is not None:
                supports[c] += weights[b.id]
        record = {c: (supports[c] if c in supports else states[c].locked)
                  for c in election.candidates
                  if c in supports or states[c].status == "elected"}
        quota = _ranked_quota(election.quota_rule, len(ballots), seats,
                              sum(supports.values(), Fraction(0)), len(hopeful))

        if len(hopeful) + len(elected) <= seats:
            filled = [c for c in election.candidates if c in hopeful]
            for c in filled:
                st = states[c]
                st.status, st.locked, st.round = "elected", supports[c], rnd
                for b in ballots:
                    if resting[b.id] == c:
                        st.contributions[b.id] = weights[b.id]
                        resting[b.id] = None
                        weights[b.id] = Fraction(0)
                elected.append(c)
            hopeful.clear()
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("final-fill", tuple(filled)),
                exhausted=exhausted, accounted=accounted_total()))
            break

        over = [c for c in hopeful if supports[c] >= quota]
        if over:
            ranked = _tie_sorted(over, supports, election, reverse=True)
            winner = ranked[0]
            tie = len(ranked) > 1 and supports[ranked[1]] == supports[winner]
            v_w = supports[winner]
            factor = quota / v_w if v_w > 0 else Fraction(0)
            hopeful.remove(winner)
            hopeful_set = set(hopeful)
            st = states[winner]
            st.status, st.round = "elected", rnd
            log = _TransferLog(election.candidates)
            for b in ballots:
                if resting[b.id] != winner:
                    continue
                keep = weights[b.id] * factor
                st.contributions[b.id] = keep
                st.locked += keep
                move(b, winner, weights[b.id] - keep, log, hopeful_set)
            elected.append(winner)
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("elect", (winner,)),
                transfers=log.emit(), transferred=v_w - st.locked,
                exhausted=exhausted, accounted=accounted_total(), tie_break=tie))
        else:
            loser = _tie_sorted(hopeful, supports, election)[0]
            tie = sum(1 for c in hopeful if supports[c] == supports[loser]) > 1
            hopeful.remove(loser)
            hopeful_set = set(hopeful)
            states[loser].status, states[loser].round = "eliminated", rnd
            log = _TransferLog(election.candidates)
            for b in ballots:
                if resting[b.id] == loser:
                    move(b, loser, weights[b.id], log, hopeful_set)
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("eliminate", (loser,)),
                transfers=log.emit(), transferred=supports[loser],
                exhausted=exhausted, accounted=accounted_total(), tie_break=tie))
        if rounds[-1].accounted != total:
            raise InvariantError(
                f"stv round {rnd}: accounted {rounds[-1].accounted} != ballots {total}")

    for c in hopeful:
        states[c].held = sum(
            (weights[b.id] for b in ballots if resting[b.id] == c), Fraction(0))
    return TallyResult(winners=tuple(elected), rounds=tuple(rounds),
                       exhausted=exhausted, candidate_states=states,
                       flags=tuple(flags))


# ---------------------------------------------------------------------------
# parts-ballot transferable methods


def _parts_quota(rule: str, total_ballots: int, seats: int, in_play, hopeful_count):
    """Quota in the engine's support units (liquid, or stack heights).

    The candidate-dynamic rule divides whatever is still in play by one
    more than the hopeful count.  The droop rules fix the bar from the
    ballot count; for height-measured engines that reads as plump-ballot
    units, since one undivided ballot stacks exactly height one.
    """
    if rule == "droop-fractional":
        return Fraction(total_ballots, seats + 1)
    if rule == "droop-integral":
        return Fraction(total_ballots // (seats + 1) + 1)
    return in_play / (hopeful_count + 1)


def run_ctv(ballots: Sequence[NormalizedBallot], election: Election) -> TallyResult:
    """Cumulative transferable vote, exact.

    Each ballot's unit of liquid starts spread by its declared shares.
    A hopeful strictly above the quota is elected (largest first, one
    per round), locks exactly one quota, and returns the surplus to its
    supporting ballots in proportion to their contributions; each ballot
    respreads what comes back over its remaining in-play candidates by
    its original parts ratios, exhausting if none remain.  When nobody
    clears the quota, the weakest hopeful falls and all their liquid
    flows back the same way.
    """
    _require_kind(ballots, "parts", "ctv")
    return _run_parts(ballots, election)


def run_qtv(ballots: Sequence[NormalizedBallot], election: Election) -> TallyResult:
    """Quadratic transferable vote, binary64.

    Support is a stack of balloons, one per ballot, each the square
    root of the liquid that ballot has on the candidate.  A stack
    strictly above the height threshold wins; every balloon in it
    deflates by the factor threshold/stack, so the liquid kept scales
    by the factor squared and the recovered remainder returns to its
    ballot for respreading, exactly as in the cumulative variant.
    """
    _require_kind(ballots, "parts", "qtv")
    return _run_exponent_engine(ballots, election, root=math.sqrt, power=lambda f: f * f)


def run_exponent(ballots: Sequence[NormalizedBallot], election: Election,
                 alpha: float) -> TallyResult:
    """Transferable tally with influence = liquid ** (1/alpha).

    alpha=1 is the cumulative rule and alpha=2 the quadratic one; other
    positive exponents interpolate or extrapolate the same machinery.
    """
    if not alpha > 0:
        raise ValidationError("exponent must be positive")
    _require_kind(ballots, "parts", "exponent transfer")
    inv = 1.0 / float(alpha)
    a = float(alpha)
    return _run_exponent_engine(ballots, election,
                                root=lambda x: x ** inv,
                                power=lambda f: f ** a)


def _run_parts(ballots, election):
    """Exact engine shared shape; see run_ctv for the rules."""
    total = Fraction(len(ballots))
    seats = election.seats
    hopeful = list(election.candidates)
    elected: list[str] = []
    states = {c: CandidateState() for c in election.candidates}
    rounds: list[RoundRecord] = []
    flags: list[str] = []
    zero = Fraction(0)

    liquid = {b.id: dict(b.shares) for b in ballots}
    originals = {b.id: b.parts for b in ballots}
    exhausted = zero

    def respread(ballot_id, amount, gone, log, hopeful_set):
        nonlocal exhausted
        if amount == 0:
            return
        orig = originals[ballot_id]
        targets = [c for c in orig if c != gone and c in hopeful_set]
        weight = sum(orig[c] for c in targets)
        if weight == 0:
            exhausted += amount
            log.add(gone, EXHAUSTED, amount)
            return
        pool = liquid[ballot_id]
        for c in targets:
            share = amount * Fraction(orig[c], weight)
            pool[c] = pool.get(c, zero) + share
            log.add(gone, c, share)

    def accounted_total():
        held = zero
        for b in ballots:
            held += sum(liquid[b.id].values(), zero)
        locked = sum((states[c].locked for c in elected), zero)
        return held + locked + exhausted

    rnd = 0
    while len(elected) < seats:
        rnd += 1
        if not hopeful:
            raise InvariantError("ran out of candidates before filling seats")
        supports = {c: zero for c in hopeful}
        for b in ballots:
            pool = liquid[b.id]
            for c in hopeful:
                if c in pool:
                    supports[c] += pool[c]
        record = {c: (supports[c] if c in supports else states[c].locked)
                  for c in election.candidates
                  if c in supports or states[c].status == "elected"}
        in_play = sum(supports.values(), zero)
        quota = _parts_quota(election.quota_rule, len(ballots), seats,
                             in_play, len(hopeful))

        over = [c for c in hopeful if supports[c] > quota]
        if over:
            ranked = _tie_sorted(over, supports, election, reverse=True)
            winner = ranked[0]
            tie = len(ranked) > 1 and supports[ranked[1]] == supports[winner]
            v_w = supports[winner]
            factor = quota / v_w
            hopeful.remove(winner)
            hopeful_set = set(hopeful)
            st = states[winner]
            st.status, st.round = "elected", rnd
            log = _TransferLog(election.candidates)
            for b in ballots:
                held = liquid[b.id].pop(winner, zero)
                if held == 0:
                    continue
                keep = held * factor
                st.contributions[b.id] = keep
                st.locked += keep
                respread(b.id, held - keep, winner, log, hopeful_set)
            elected.append(winner)
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("elect", (winner,)),
                transfers=log.emit(), transferred=v_w - quota,
                exhausted=exhausted, accounted=accounted_total(), tie_break=tie))
        elif len(hopeful) + len(elected) <= seats:
            filled = [c for c in election.candidates if c in hopeful]
            for c in filled:
                st = states[c]
                st.status, st.locked, st.round = "elected", supports[c], rnd
                for b in ballots:
                    held = liquid[b.id].pop(c, zero)
                    if held:
                        st.contributions[b.id] = held
                elected.append(c)
            hopeful.clear()
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("final-fill", tuple(filled)),
                exhausted=exhausted, accounted=accounted_total()))
        else:
            loser = _tie_sorted(hopeful, supports, election)[0]
            tie = sum(1 for c in hopeful if supports[c] == supports[loser]) > 1
            hopeful.remove(loser)
            hopeful_set = set(hopeful)
            states[loser].status, states[loser].round = "eliminated", rnd
            log = _TransferLog(election.candidates)
            for b in ballots:
                held = liquid[b.id].pop(loser, zero)
                respread(b.id, held, loser, log, hopeful_set)
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("eliminate", (loser,)),
                transfers=log.emit(), transferred=supports[loser],
                exhausted=exhausted, accounted=accounted_total(), tie_break=tie))
        if rounds[-1].accounted != total:
            raise InvariantError(
                f"ctv round {rnd}: accounted {rounds[-1].accounted} != ballots {total}")

    for c in hopeful:
        states[c].held = sum((liquid[b.id].get(c, zero) for b in ballots), zero)
    return TallyResult(winners=tuple(elected), rounds=tuple(rounds),
                       exhausted=exhausted, candidate_states=states,
                       flags=tuple(flags))


def _run_exponent_engine(ballots, election, root, power):
    """Float engine for height-measured transfers (see run_qtv)."""
    total = float(len(ballots))
    seats = election.seats
    hopeful = list(election.candidates)
    elected: list[str] = []
    states = {c: CandidateState() for c in election.candidates}
    rounds: list[RoundRecord] = []
    flags: list[str] = []

    liquid = {b.id: {c: float(s) for c, s in b.shares.items()} for b in ballots}
    originals = {b.id: b.parts for b in ballots}
    exhausted = 0.0

    def respread(ballot_id, amount, gone, log, hopeful_set):
        nonlocal exhausted
        if amount == 0.0:
            return
        orig = originals[ballot_id]
        targets = [c for c in orig if c != gone and c in hopeful_set]
        weight = sum(orig[c] for c in targets)
        if weight == 0:
            exhausted += amount
            log.add(gone, EXHAUSTED, amount)
            return
        pool = liquid[ballot_id]
        for c in targets:
            share = amount * (orig[c] / weight)
            pool[c] = pool.get(c, 0.0) + share
            log.add(gone, c, share)

    def accounted_total():
        held = 0.0
        for b in ballots:
            held += sum(liquid[b.id].values())
        locked = sum(float(states[c].locked) for c in elected)
        return held + locked + exhausted

    rnd = 0
    while len(elected) < seats:
        rnd += 1
        if not hopeful:
            raise InvariantError("ran out of candidates before filling seats")
        stacks = {c: 0.0 for c in hopeful}
        for b in ballots:
            pool = liquid[b.id]
            for c in hopeful:
                amount = pool.get(c, 0.0)
                if amount > 0.0:
                    stacks[c] += root(amount)
        record = {c: (stacks[c] if c in stacks else states[c].stack)
                  for c in election.candidates
                  if c in stacks or states[c].status == "elected"}
        in_play = sum(stacks.values())
        if election.quota_rule == "droop-fractional":
            quota = len(ballots) / (seats + 1)
        elif election.quota_rule == "droop-integral":
            quota = float(len(ballots) // (seats + 1) + 1)
        else:
            quota = in_play / (len(hopeful) + 1)

        over = [c for c in hopeful if stacks[c] > quota]
        if over:
            ranked = _tie_sorted(over, stacks, election, reverse=True)
            winner = ranked[0]
            tie = len(ranked) > 1 and stacks[ranked[1]] == stacks[winner]
            deflate = quota / stacks[winner]
            keep_factor = power(deflate)
            hopeful.remove(winner)
            hopeful_set = set(hopeful)
            st = states[winner]
            st.status, st.round = "elected", rnd
            st.locked = 0.0
            st.stack = quota
            recovered = 0.0
            log = _TransferLog(election.candidates)
            for b in ballots:
                held = liquid[b.id].pop(winner, 0.0)
                if held == 0.0:
                    continue
                keep = keep_factor * held
                st.contributions[b.id] = keep
                st.locked += keep
                recovered += held - keep
                respread(b.id, held - keep, winner, log, hopeful_set)
            elected.append(winner)
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("elect", (winner,)),
                transfers=log.emit(), transferred=recovered,
                exhausted=exhausted, accounted=accounted_total(), tie_break=tie))
        elif len(hopeful) + len(elected) <= seats:
            filled = [c for c in election.candidates if c in hopeful]
            for c in filled:
                st = states[c]
                st.status, st.round = "elected", rnd
                st.stack = stacks[c]
                st.locked = 0.0
                for b in ballots:
                    held = liquid[b.id].pop(c, 0.0)
                    if held:
                        st.contributions[b.id] = held
                        st.locked += held
                elected.append(c)
            hopeful.clear()
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("final-fill", tuple(filled)),
                exhausted=exhausted, accounted=accounted_total()))
        else:
            loser = _tie_sorted(hopeful, stacks, election)[0]
            tie = sum(1 for c in hopeful if stacks[c] == stacks[loser]) > 1
            hopeful.remove(loser)
            hopeful_set = set(hopeful)
            states[loser].status, states[loser].round = "eliminated", rnd
            moved = 0.0
            log = _TransferLog(election.candidates)
            for b in ballots:
                held = liquid[b.id].pop(loser, 0.0)
                moved += held
                respread(b.id, held, loser, log, hopeful_set)
            rounds.append(RoundRecord(
                round=rnd, quota=quota, supports=record,
                action=Action("eliminate", (loser,)),
                transfers=log.emit(), transferred=moved,
                exhausted=exhausted, accounted=accounted_total(), tie_break=tie))
        accounted = rounds[-1].accounted
        if abs(accounted - total) > FLOAT_TOLERANCE * max(total, 1.0):
            raise InvariantError(
                f"quadratic round {rnd}: accounted {accounted} != ballots {total}")

    for c in hopeful:
        states[c].held = sum(liquid[b.id].get(c, 0.0) for b in ballots)
    return TallyResult(winners=tuple(elected), rounds=tuple(rounds),
                       exhausted=exhausted, candidate_states=states,
                       flags=tuple(flags))


# ---------------------------------------------------------------------------
# dispatch


def run_transfer(ballots: Sequence[NormalizedBallot], election: Election,
                 exponent: float | None = None) -> TallyResult:
    """Run the transferable method an election asks for.

    `exponent` generalizes the parts methods: 1 routes to the exact
    cumulative engine, anything else to the float engine with influence
    = liquid ** (1/exponent).
    """
    if exponent is not None:
        if election.method not in ("ctv", "qtv"):
            raise ValidationError(
                f"exponent applies to parts-transfer methods, not {election.method!r}")
        if exponent == 1:
            return run_ctv(ballots, election)
        return run_exponent(ballots, election, exponent)
    if election.method == "irv":
        return run_irv(ballots, election)
    if election.method == "stv":
        return run_stv(ballots, election)
    if election.method == "ctv":
        return run_ctv(ballots, election)
    if election.method == "qtv":
        return run_qtv(ballots, election)
    raise ValidationError(f"{election.method!r} is not a transferable method")
