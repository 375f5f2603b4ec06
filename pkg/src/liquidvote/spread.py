"""Single-round tallies that spread each ballot's liquid over candidates.

Approval counts whole ballots per approved candidate, cumulative sums
exact shares, and the quadratic tally stacks balloon heights, the square
root of the liquid behind each option, so concentrated support buys
less influence per part than spread support.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .model import (
    Amount,
    Election,
    NormalizedBallot,
    ValidationError,
)

# one ballot's liquid is worth this many parts in quadratic baseline
# units: a ballot split evenly five ways puts height exactly 1.0 on
# each option, and a plump reaches sqrt(5)
DEFAULT_PARTS_BUDGET = 5


def approval_sets(ballots: Iterable[NormalizedBallot]) -> list[frozenset[str]]:
    """Read each parts ballot as approval of every candidate it funds."""
    out = []
    for b in ballots:
        if b.shares is None:
            raise ValidationError(f"ballot {b.id!r} is ranked; approval needs parts ballots")
        out.append(frozenset(b.shares))
    return out


def tally_approval(
    ballots: Sequence[Iterable[str]], election: Election
) -> tuple[dict[str, int], list[str]]:
    """Count approvals per candidate.

    Returns the counts in registration order plus the result ranking
    (count descending, ties by tie_order).  Approving every candidate
    shifts all counts up by one and cannot change the ranking.
    """
    counts = {c: 0 for c in election.candidates}
    for i, approved in enumerate(ballots):
        for c in approved:
            if c not in counts:
                raise ValidationError(f"ballot #{i + 1} approves unknown candidate {c!r}")
            counts[c] += 1
    ranking = sorted(counts, key=lambda c: (-counts[c], election.tie_index(c)))
    return counts, ranking


def tally_cumulative(
    ballots: Sequence[NormalizedBallot], election: Election
) -> dict[str, Amount]:
    """Sum exact shares per candidate; totals add up to the ballot count."""
    totals = {c: Amount(0) for c in election.candidates}
    for b in ballots:
        if b.shares is None:
            raise ValidationError(f"ballot {b.id!r} is ranked; cumulative needs parts ballots")
        for c, s in b.shares.items():
            totals[c] += s
    return totals


def rounding_error(
    shares: Mapping[str, Amount], votes: int
) -> tuple[dict[str, int], Amount]:
    """Round exact shares to an integer vote budget by largest remainder.

    Returns the integer allocation (summing exactly to `votes`) and the
    worst per-candidate deviation |rounded/votes - share|.  Remainder
    ties hand the spare vote to the earlier candidate.
    """
    if not isinstance(votes, int) or isinstance(votes, bool) or votes <= 0:
        raise ValidationError("vote budget must be a positive integer")
    total = sum(shares.values())
    if total != 1:
        raise ValidationError(f"shares must sum to 1, got {total}")
    order = list(shares)
    alloc = {}
    remainders = []
    for pos, c in enumerate(order):
        exact = shares[c] * votes
        base = exact.numerator // exact.denominator
        alloc[c] = base
        remainders.append((exact - base, pos, c))
    spare = votes - sum(alloc.values())
    # biggest remainder first; equal remainders favor the earlier candidate
    remainders.sort(key=lambda t: (-t[0], t[1]))
    for _, _, c in remainders[:spare]:
        alloc[c] += 1
    deviation = max(abs(Fraction(alloc[c], votes) - shares[c]) for c in order)
    return alloc, deviation


def qv_cost(votes):
    """Quadratic price: casting v votes costs v**2 coins."""
    if votes < 0:
        raise ValidationError("vote count must be nonnegative")
    return votes * votes


def balloon_heights(
    ballot: NormalizedBallot, parts_budget: int = DEFAULT_PARTS_BUDGET
) -> dict[str, float]:
    """Per-candidate balloon heights for one ballot, in baseline units.

    The ballot's whole liquid is worth `parts_budget` parts and spreads
    by the declared ratios, so height per candidate is
    sqrt(share * budget).  Area is conserved: the squared heights of one
    ballot always sum back to the budget.
    """
    if ballot.shares is None:
        raise ValidationError(f"ballot {ballot.id!r} is ranked; quadratic needs parts ballots")
    if ballot.parts is not None and sum(ballot.parts.values()) > parts_budget:
        raise ValidationError(
            f"ballot {ballot.id!r} splits into {sum(ballot.parts.values())} parts; "
            f"the budget allows {parts_budget}")
    return {c: math.sqrt(s * parts_budget) for c, s in ballot.shares.items()}


def tally_quadratic(
    ballots: Sequence[NormalizedBallot],
    election: Election,
    parts_budget: int = DEFAULT_PARTS_BUDGET,
) -> dict[str, float]:
    """Stack balloon heights per candidate in canonical order."""
    stacks = {c: 0.0 for c in election.candidates}
    for b in ballots:
        for c, h in balloon_heights(b, parts_budget).items():
            stacks[c] += h
    return stacks


def collusion_scenario(coins: int, conspirators: int) -> tuple[float, int]:
    """Honest quadratic votes versus a vote-buying ring.

    Spending all coins honestly on one option buys sqrt(coins) votes.
    Handing one coin each to `conspirators` strawmen buys one full vote
    apiece, so the same budget casts `conspirators` votes.
    """
    if coins < 0 or conspirators < 0:
        raise ValidationError("coins and conspirators must be nonnegative")
    if conspirators > coins:
        raise ValidationError(
            f"{conspirators} conspirators need {conspirators} coins; only {coins} available")
    return math.sqrt(coins), conspirators
