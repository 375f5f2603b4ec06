"""One front door for running an election end to end.

Profile references are resolved, ballots normalized, and the method
dispatched.  Spreading methods (approval, cumulative, quadratic) finish
in a single round; transferable methods hand off to the round engines.
Either way the caller gets the same TallyResult shape, so reporting
code never cares which family ran.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from typing import Mapping, Sequence

from .model import (
    Action,
    Ballot,
    Election,
    NormalizedBallot,
    Profile,
    RoundRecord,
    TallyResult,
    ValidationError,
    normalize_ballots,
    resolve_profiles,
)
from .spread import approval_sets, tally_approval, tally_cumulative, \
    tally_quadratic
from .transfer import CandidateState, run_transfer

SPREAD_METHODS = ("approval", "cumulative", "quadratic")


def _spread_result(ballots: Sequence[NormalizedBallot], election: Election
                   ) -> TallyResult:
    if election.method == "approval":
        supports, _ = tally_approval(approval_sets(ballots), election)
        accounted = None  # approvals overlap; there is no conserved total
    elif election.method == "cumulative":
        supports = tally_cumulative(ballots, election)
        accounted = sum(supports.values(), Fraction(0))
    else:
        supports = tally_quadratic(ballots, election)
        accounted = None  # stack heights are not additive liquid

    order = sorted(supports,
                   key=lambda c: (-supports[c], election.tie_index(c)))
    winners = tuple(order[:election.seats])
    tie_break = (len(order) > election.seats
                 and supports[order[election.seats - 1]]
                 == supports[order[election.seats]])

    states = {}
    for c in election.candidates:
        if c in winners:
            states[c] = CandidateState(status="elected", locked=supports[c],
                                       held=supports[c], round=1)
        else:
            states[c] = CandidateState(status="hopeful", held=supports[c])
    rounds = (RoundRecord(
        round=1, quota=None, supports=dict(supports),
        action=Action("final-fill", winners), accounted=accounted,
        tie_break=tie_break),)
    return TallyResult(winners=winners, rounds=rounds, exhausted=Fraction(0),
                       candidate_states=states)


def run_election(election: Election, ballots: Sequence[Ballot],
                 profiles: Mapping[str, Profile] | None = None,
                 exponent: float | None = None) -> TallyResult:
    """Resolve, normalize and tally; the only path callers should need."""
    concrete, usage = resolve_profiles(ballots, profiles or {}, election)
    normalized = normalize_ballots(concrete, election)
    if election.method in SPREAD_METHODS:
        if exponent is not None:
            raise ValidationError(
                f"exponent does not apply to method {election.method!r}")
        result = _spread_result(normalized, election)
    else:
        result = run_transfer(normalized, election, exponent=exponent)
    if usage:
        result = replace(result, profile_usage=usage)
    return result
