"""Command-line behavior: artifacts, exit codes, determinism."""

import json
from pathlib import Path

import pytest

from liquidvote import cli
from liquidvote.model import InvariantError, load_ballots, load_election
from liquidvote.report import report_json
from liquidvote.tally import run_election

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(*argv):
    return cli.main([str(a) for a in argv])


class TestTally:
    def test_irv_fixture(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        flows = tmp_path / "flows.dot"
        code = run("tally", "--election", FIXTURES / "irv-election.json",
                   "--ballots", FIXTURES / "irv-ballots.jsonl",
                   "--report", report, "--flows", flows)
        assert code == 0
        assert capsys.readouterr().out == "winners: B\n"
        obj = json.loads(report.read_text())
        assert obj["winners"] == ["B"]
        assert len(obj["rounds"]) == 2
        assert obj["rounds"][0]["supports"] == {"A": "3/1", "B": "3/1", "C": "2/1"}
        assert '"C" -> "B" [label="r1: 2/1"]' in flows.read_text()

    def test_report_matches_library_exactly(self, tmp_path):
        report = tmp_path / "report.json"
        run("tally", "--election", FIXTURES / "ctv-election.json",
            "--ballots", FIXTURES / "ctv-ballots.jsonl", "--report", report)
        election = load_election(str(FIXTURES / "ctv-election.json"))
        ballots = load_ballots(str(FIXTURES / "ctv-ballots.jsonl"), election)
        expected = report_json(election, run_election(election, ballots),
                               ballots=len(ballots))
        assert report.read_text() == expected

    def test_ctv_exact_rationals_in_report(self, tmp_path):
        report = tmp_path / "report.json"
        code = run("tally", "--election", FIXTURES / "ctv-election.json",
                   "--ballots", FIXTURES / "ctv-ballots.jsonl",
                   "--quota", "droop-fractional", "--report", report)
        assert code == 0
        obj = json.loads(report.read_text())
        assert obj["rounds"][0]["quota"] == "8/3"
        assert obj["rounds"][1]["supports"]["B"] == "52/15"
        assert obj["exhausted"] == "8/3"

    def test_method_override_rederives_quota(self, tmp_path):
        report = tmp_path / "report.json"
        code = run("tally", "--election", FIXTURES / "ctv-election.json",
                   "--ballots", FIXTURES / "ctv-ballots.jsonl",
                   "--method", "qtv", "--report", report)
        assert code == 0
        obj = json.loads(report.read_text())
        assert obj["election"]["method"] == "qtv"
        assert obj["election"]["quota_rule"] == "dynamic-candidates"

    def test_missing_ballots_exits_2_without_artifacts(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        code = run("tally", "--election", FIXTURES / "irv-election.json",
                   "--ballots", tmp_path / "nope.jsonl", "--report", report)
        assert code == 2
        assert not report.exists()
        assert capsys.readouterr().err.startswith("error: ")

    def test_bad_ballot_line_is_line_precise(self, tmp_path, capsys):
        bad = tmp_path / "ballots.jsonl"
        bad.write_text('{"id": "1", "ranking": ["A"]}\n{"id": "2", "ranking": ["Z"]}\n')
        code = run("tally", "--election", FIXTURES / "irv-election.json",
                   "--ballots", bad)
        assert code == 2
        err = capsys.readouterr().err
        assert "ballots.jsonl:2:" in err and "unknown candidate" in err

    def test_profiles_flow_into_report(self, tmp_path, capsys):
        ballots = tmp_path / "ballots.jsonl"
        ballots.write_text(
            '{"id": "1", "profile": "greens"}\n'
            '{"id": "2", "profile": "greens", '
            '"overrides": {"ctv-demo": {"parts": {"A": 1}}}}\n'
            '{"id": "3", "parts": {"A": 3}}\n')
        report = tmp_path / "report.json"
        code = run("tally", "--election", FIXTURES / "ctv-election.json",
                   "--ballots", ballots,
                   "--profiles", tmp_path / "profiles.json",
                   "--report", report)
        assert code == 2  # profiles file does not exist yet
        (tmp_path / "profiles.json").write_text(
            '{"greens": {"name": "G", "parts": {"B": 1}}}')
        code = run("tally", "--election", FIXTURES / "ctv-election.json",
                   "--ballots", ballots,
                   "--profiles", tmp_path / "profiles.json",
                   "--report", report)
        assert code == 0
        usage = json.loads(report.read_text())["profile_usage"]["greens"]
        assert usage["followers"] == 2
        assert usage["overridden"] == 1
        assert usage["flowed"] == {"B": "1/1"}

    def test_invariant_violation_exits_3(self, monkeypatch, capsys):
        def boom(*a, **kw):
            raise InvariantError("books out of balance")
        monkeypatch.setattr(cli, "run_election", boom)
        code = run("tally", "--election", FIXTURES / "irv-election.json",
                   "--ballots", FIXTURES / "irv-ballots.jsonl")
        assert code == 3
        assert "invariant violation" in capsys.readouterr().err


class TestDelegate:
    def test_chain_report(self, capsys):
        code = run("delegate", "--delegations",
                   FIXTURES / "delegations-chain.json")
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["powers"]["carol"] == "3/1"
        assert obj["powers"]["alice"] == "0/1"
        assert obj["unresolved"] == "0/1"
        assert obj["top"][0]["voter"] == "carol"

    def test_publish_threshold_serialization(self, capsys):
        code = run("delegate", "--delegations",
                   FIXTURES / "delegations-chain.json",
                   "--publish", "threshold:5")
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["published"]["carol"] == {"suppressed": True}

    def test_quadratic_mode(self, capsys):
        code = run("delegate", "--delegations",
                   FIXTURES / "delegations-chain.json", "--mode", "quadratic")
        assert code == 0
        assert json.loads(capsys.readouterr().out)["mode"] == "quadratic"

    def test_bad_policy_exits_2(self, capsys):
        code = run("delegate", "--delegations",
                   FIXTURES / "delegations-chain.json",
                   "--publish", "dp:oops")
        assert code == 2


class TestSimulate:
    def test_deterministic_reports(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            code = run("simulate", "--hierarchy", FIXTURES / "hierarchy.json",
                       "--simconfig", FIXTURES / "simconfig.json",
                       "--topic", "2.1", "--report", out)
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_metrics_shape(self, capsys):
        code = run("simulate", "--hierarchy", FIXTURES / "hierarchy.json",
                   "--simconfig", FIXTURES / "simconfig.json")
        assert code == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["voters"] == 200
        assert obj["leaves"] == 9
        assert obj["workload"]["per_voter"] == 4  # (3-1) + (3-1)
        assert obj["mean_leaf_participation"] == "200/9"

    def test_missing_hierarchy_exits_2(self, tmp_path):
        code = run("simulate", "--hierarchy", tmp_path / "nope.json",
                   "--simconfig", FIXTURES / "simconfig.json")
        assert code == 2
