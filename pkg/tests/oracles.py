"""Independent reference implementations used only as test oracles.

Everything in here is written straight-line on plain dicts, recomputing
state from scratch each round, with none of the engine's bookkeeping.
The value of these functions is their independence from the package:
keep them dumb and obvious, and do not refactor them to share code with
the implementation under test.
"""

import math
from fractions import Fraction

EXHAUSTED = "(exhausted)"


def _shares(parts, candidates):
    total = sum(parts.values())
    return {c: Fraction(parts.get(c, 0), total) for c in candidates}


def oracle_ctv(parts_ballots, candidates, seats,
               quota_rule="dynamic-candidates", tie_order=None):
    """Cumulative transferable tally, exact rationals.

    parts_ballots: list of {candidate: int parts} dicts.
    Returns a dict with winners, eliminated, locked, exhausted and a
    per-round trace of (action, candidate(s), quota, supports).
    """
    tie_order = list(tie_order or candidates)
    n = len(parts_ballots)
    liquid = [_shares(p, candidates) for p in parts_ballots]
    hopeful = list(candidates)
    elected, eliminated = [], []
    locked = {}
    exhausted = Fraction(0)
    trace = []

    def redistribute(i, returned, gone):
        # returned liquid goes back to ballot i and spreads over the
        # ballot's remaining hopeful candidates by original parts ratio
        nonlocal exhausted
        orig = parts_ballots[i]
        targets = [c for c in hopeful if c != gone and orig.get(c, 0) > 0]
        weight = sum(orig[c] for c in targets)
        if weight == 0:
            exhausted += returned
            return
        for c in targets:
            liquid[i][c] += returned * Fraction(orig[c], weight)

    while len(elected) < seats and hopeful:
        supports = {c: sum((l[c] for l in liquid), Fraction(0)) for c in hopeful}
        k = len(hopeful)
        if quota_rule == "dynamic-candidates":
            quota = sum(supports.values(), Fraction(0)) / (k + 1)
        elif quota_rule == "droop-fractional":
            quota = Fraction(n, seats + 1)
        elif quota_rule == "droop-integral":
            quota = Fraction(n // (seats + 1) + 1)
        else:
            raise ValueError(quota_rule)
        over = [c for c in hopeful if supports[c] > quota]
        if over:
            # largest support elected first; ties favor earlier tie_order
            winner = max(over, key=lambda c: (supports[c], -tie_order.index(c)))
            factor = quota / supports[winner] if supports[winner] else Fraction(0)
            for i in range(n):
                held = liquid[i][winner]
                if held == 0:
                    continue
                liquid[i][winner] = Fraction(0)
                redistribute(i, held * (1 - factor), winner)
            locked[winner] = quota
            hopeful.remove(winner)
            elected.append(winner)
            trace.append(("elect", (winner,), quota, supports, exhausted))
        elif len(hopeful) + len(elected) <= seats:
            for c in hopeful:
                locked[c] = supports[c]
            elected.extend(hopeful)
            trace.append(("final-fill", tuple(hopeful), quota, supports, exhausted))
            hopeful = []
        else:
            # smallest support eliminated; ties eliminate the latest in tie_order
            loser = min(hopeful, key=lambda c: (supports[c], -tie_order.index(c)))
            for i in range(n):
                held = liquid[i][loser]
                if held == 0:
                    continue
                liquid[i][loser] = Fraction(0)
                redistribute(i, held, loser)
            hopeful.remove(loser)
            eliminated.append(loser)
            trace.append(("eliminate", (loser,), quota, supports, exhausted))

    residue = {c: sum((l[c] for l in liquid), Fraction(0)) for c in hopeful}
    return {
        "winners": elected,
        "eliminated": eliminated,
        "locked": locked,
        "exhausted": exhausted,
        "residue": residue,
        "trace": trace,
    }


def oracle_qtv(parts_ballots, candidates, seats,
               quota_rule="dynamic-candidates", tie_order=None):
    """Quadratic transferable tally, binary64, same skeleton as oracle_ctv.

    Supports are stacked balloon heights sqrt(liquid); elections deflate
    heights to the threshold, which scales liquid by the square.
    """
    tie_order = list(tie_order or candidates)
    n = len(parts_ballots)
    liquid = []
    for parts in parts_ballots:
        total = sum(parts.values())
        liquid.append({c: parts.get(c, 0) / total for c in candidates})
    hopeful = list(candidates)
    elected, eliminated = [], []
    locked = {}
    exhausted = 0.0
    trace = []

    def redistribute(i, returned, gone):
        nonlocal exhausted
        orig = parts_ballots[i]
        targets = [c for c in hopeful if c != gone and orig.get(c, 0) > 0]
        weight = sum(orig[c] for c in targets)
        if weight == 0:
            exhausted += returned
            return
        for c in targets:
            liquid[i][c] += returned * (orig[c] / weight)

    while len(elected) < seats and hopeful:
        stacks = {}
        for c in hopeful:
            s = 0.0
            for l in liquid:
                s += math.sqrt(l[c])
            stacks[c] = s
        k = len(hopeful)
        if quota_rule == "dynamic-candidates":
            quota = sum(stacks.values()) / (k + 1)
        elif quota_rule == "droop-fractional":
            quota = n / (seats + 1)
        elif quota_rule == "droop-integral":
            quota = float(n // (seats + 1) + 1)
        else:
            raise ValueError(quota_rule)
        over = [c for c in hopeful if stacks[c] > quota]
        if over:
            winner = max(over, key=lambda c: (stacks[c], -tie_order.index(c)))
            f = quota / stacks[winner]
            kept = 0.0
            for i in range(n):
                held = liquid[i][winner]
                if held == 0.0:
                    continue
                keep = (f * f) * held
                kept += keep
                liquid[i][winner] = 0.0
                redistribute(i, held - keep, winner)
            locked[winner] = kept
            hopeful.remove(winner)
            elected.append(winner)
            trace.append(("elect", (winner,), quota, stacks, exhausted))
        elif len(hopeful) + len(elected) <= seats:
            for c in hopeful:
                locked[c] = sum(l[c] for l in liquid)
            elected.extend(hopeful)
            trace.append(("final-fill", tuple(hopeful), quota, stacks, exhausted))
            hopeful = []
        else:
            loser = min(hopeful, key=lambda c: (stacks[c], -tie_order.index(c)))
            for i in range(n):
                held = liquid[i][loser]
                if held == 0.0:
                    continue
                liquid[i][loser] = 0.0
                redistribute(i, held, loser)
            hopeful.remove(loser)
            eliminated.append(loser)
            trace.append(("eliminate", (loser,), quota, stacks, exhausted))

    residue = {c: sum(l[c] for l in liquid) for c in hopeful}
    return {
        "winners": elected,
        "eliminated": eliminated,
        "locked": locked,
        "exhausted": exhausted,
        "residue": residue,
        "trace": trace,
    }


def oracle_flow_linear(voters, edges, iterations=400):
    """Linear delegation power by literal flow simulation, in floats.

    edges: {voter: [(target_or_"SELF", parts), ...]}.  Each voter emits
    one unit.  A voter with any retained share (or no edges) absorbs all
    inflow; a voter who delegates everything forwards inflow along their
    ratios.  Flow still circulating after `iterations` steps is treated
    as unresolved (trapped in exit-free cycles it decays geometrically
    toward, so a few hundred steps is plenty for test-sized graphs).
    """
    resolved = {v: 0.0 for v in voters}
    forwards = {}
    for v in voters:
        out = edges.get(v) or []
        total = sum(p for _, p in out)
        keeps = any(t == "SELF" for t, _ in out)
        if not out or keeps:
            # absorbs inflow; own unit splits by ratio, SELF share stays
            if not out:
                resolved[v] += 1.0
                forwards[v] = None
            else:
                forwards[v] = None
        else:
            forwards[v] = [(t, p / total) for t, p in out]
    circulating = {v: 0.0 for v in voters}
    # emit each voter's own unit
    for v in voters:
        out = edges.get(v) or []
        if not out:
            continue
        total = sum(p for _, p in out)
        for t, p in out:
            share = p / total
            if t == "SELF":
                resolved[v] += share
            elif forwards[t] is None:
                resolved[t] += share
            else:
                circulating[t] += share
    for _ in range(iterations):
        nxt = {v: 0.0 for v in voters}
        moved = 0.0
        for v, amount in circulating.items():
            if amount == 0.0:
                continue
            for t, w in forwards[v]:
                got = amount * w
                if forwards[t] is None:
                    resolved[t] += got
                else:
                    nxt[t] += got
                    moved += got
        circulating = nxt
        if moved < 1e-15:
            break
    unresolved = sum(circulating.values())
    return resolved, unresolved


def oracle_plump_runoff(parts_ballots, candidates, tie_order=None):
    """Winner and elimination order for all-plump single-seat contests.

    With plump ballots and a fixed fractional quota, transfers can never
    move liquid, so candidates fall in ascending order of their fixed
    totals (ties dropping the latest in tie_order) until one holds more
    than half of the ballots or is the last one standing.
    """
    tie_order = list(tie_order or candidates)
    totals = {c: 0 for c in candidates}
    for p in parts_ballots:
        (c,) = [c for c, v in p.items() if v > 0]
        totals[c] += 1
    half = Fraction(len(parts_ballots), 2)
    remaining = list(candidates)
    eliminated = []
    while True:
        leader = max(remaining, key=lambda c: (totals[c], -tie_order.index(c)))
        if totals[leader] > half or len(remaining) == 1:
            return leader, eliminated
        loser = min(remaining, key=lambda c: (totals[c], -tie_order.index(c)))
        remaining.remove(loser)
        eliminated.append(loser)
