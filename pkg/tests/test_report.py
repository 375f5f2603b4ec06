"""Report serialization and the flow-export bookkeeping check."""

import json
from fractions import Fraction

import pytest

from liquidvote.model import (
    Action,
    Ballot,
    Election,
    InvariantError,
    RoundRecord,
    TallyResult,
    Transfer,
)
from liquidvote.report import amount_str, flows_dot, render_report, report_json
from liquidvote.tally import run_election


def spread_election(method="cumulative", seats=1):
    return Election(id="e", candidates=("A", "B", "C"), seats=seats,
                    method=method)


class TestAmountStr:
    def test_rationals_and_ints_are_n_over_d(self):
        assert amount_str(Fraction(7, 15)) == "7/15"
        assert amount_str(3) == "3/1"
        assert amount_str(Fraction(0)) == "0/1"

    def test_floats_are_12_significant_digits(self):
        assert amount_str(2 / 3) == "0.666666666667"
        assert amount_str(3.0) == "3"


class TestRenderReport:
    def test_report_shape(self):
        e = spread_election()
        result = run_election(e, [Ballot(id="1", parts={"A": 2, "B": 1})])
        obj = render_report(e, result, ballots=1)
        assert obj["election"]["method"] == "cumulative"
        assert obj["ballots"] == 1
        assert obj["winners"] == ["A"]
        (rnd,) = obj["rounds"]
        assert rnd["supports"] == {"A": "2/3", "B": "1/3", "C": "0/1"}
        assert rnd["supports_decimal"]["A"] == 0.666666666667
        assert rnd["action"] == {"kind": "final-fill", "candidates": ["A"]}
        assert obj["candidates"]["A"]["status"] == "elected"

    def test_spread_tie_at_seat_boundary_is_flagged(self):
        e = spread_election(method="approval", seats=1)
        result = run_election(e, [Ballot(id="1", parts={"A": 1, "B": 1})])
        assert result.rounds[0].tie_break
        assert result.winners == ("A",)  # earliest in tie order

    def test_json_is_stable(self):
        e = spread_election()
        result = run_election(e, [Ballot(id="1", parts={"A": 1})])
        assert report_json(e, result) == report_json(e, result)
        assert report_json(e, result).endswith("\n")
        json.loads(report_json(e, result))  # parses


class TestFlowsDot:
    def test_edges_and_labels(self):
        e = Election(id="e", candidates=("A", "B", "C"), seats=1, method="irv")
        ballots = [Ballot(id=str(i), ranking=r) for i, r in enumerate(
            [("A", "B")] * 3 + [("B", "C")] * 3 + [("C", "B")] * 2, start=1)]
        dot = flows_dot(e, run_election(e, ballots))
        assert dot.startswith("digraph flows {")
        assert '"C" -> "B" [label="r1: 2/1"];' in dot

    def test_quoting(self):
        e = Election(id="e", candidates=('Say "hi"', "B"), seats=1,
                     method="irv")
        ballots = [Ballot(id="1", ranking=("B", 'Say "hi"')),
                   Ballot(id="2", ranking=('Say "hi"',))]
        dot = flows_dot(e, run_election(e, ballots))
        assert '"Say \\"hi\\""' in dot

    def test_cooked_books_refuse_to_render(self):
        e = Election(id="e", candidates=("A", "B"), seats=1, method="irv")
        bad_round = RoundRecord(
            round=1, quota=Fraction(1), supports={"A": Fraction(1)},
            action=Action("eliminate", ("B",)),
            transfers=(Transfer("B", "A", Fraction(1)),),
            transferred=Fraction(2),  # does not match the edge sum
        )
        doctored = TallyResult(winners=("A",), rounds=(bad_round,),
                               exhausted=Fraction(0))
        with pytest.raises(InvariantError, match="round 1"):
            flows_dot(e, doctored)

    def test_exhausted_node_only_when_used(self):
        e = spread_election()
        result = run_election(e, [Ballot(id="1", parts={"A": 1})])
        dot = flows_dot(e, result)
        assert "(exhausted)" not in dot
