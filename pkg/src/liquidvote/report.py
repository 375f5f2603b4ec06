"""Result serialization: one code path for every surface.

The CLI and the HTTP API both emit exactly the bytes produced here, so
a result can be diffed across surfaces.  Exact amounts ride along as
strings ("3/4") next to 12-significant-digit decimal companions;
floating methods print through the same keys.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .model import (
    EXHAUSTED,
    Election,
    InvariantError,
    TallyResult,
    decimal12,
    format_amount,
)

_FLOW_SLACK = 1e-9


def amount_str(x) -> str:
    if isinstance(x, (Fraction, int)):
        return format_amount(x)
    return f"{float(x):.12g}"


def _pair(obj: dict, key: str, value) -> None:
    # writes "key" and "key_decimal" side by side; None stays None
    if value is None:
        obj[key] = None
        obj[key + "_decimal"] = None
    else:
        obj[key] = amount_str(value)
        obj[key + "_decimal"] = decimal12(value)


def render_report(election: Election, result: TallyResult,
                  ballots: int | None = None) -> dict[str, Any]:
    """Shape a tally into the canonical report object."""
    report: dict[str, Any] = {
        "election": {
            "id": election.id,
            "method": election.method,
            "seats": election.seats,
            "quota_rule": election.quota_rule,
            "candidates": list(election.candidates),
            "tie_order": list(election.tie_order),
        },
        "winners": list(result.winners),
        "flags": list(result.flags),
    }
    if ballots is not None:
        report["ballots"] = ballots
    _pair(report, "exhausted", result.exhausted)

    rounds = []
    for rec in result.rounds:
        r: dict[str, Any] = {"round": rec.round}
        _pair(r, "quota", rec.quota)
        r["supports"] = {c: amount_str(v) for c, v in rec.supports.items()}
        r["supports_decimal"] = {c: decimal12(v) for c, v in rec.supports.items()}
        r["action"] = {"kind": rec.action.kind,
                       "candidates": list(rec.action.candidates)}
        r["tie_break"] = rec.tie_break
        transfers = []
        for t in rec.transfers:
            edge: dict[str, Any] = {"source": t.source, "target": t.target}
            _pair(edge, "amount", t.amount)
            transfers.append(edge)
        r["transfers"] = transfers
        _pair(r, "transferred", rec.transferred)
        _pair(r, "exhausted", rec.exhausted)
        _pair(r, "accounted", rec.accounted)
        rounds.append(r)
    report["rounds"] = rounds

    candidates: dict[str, Any] = {}
    for c in election.candidates:
        st = result.candidate_states.get(c)
        if st is None:
            continue
        entry: dict[str, Any] = {"status": st.status, "round": st.round}
        _pair(entry, "locked", st.locked)
        if st.stack is not None:
            entry["stack"] = decimal12(st.stack)
        candidates[c] = entry
    report["candidates"] = candidates

    if result.profile_usage:
        usage: dict[str, Any] = {}
        for name in sorted(result.profile_usage):
            u = result.profile_usage[name]
            flowed = {c: u.flowed[c] for c in election.candidates
                      if c in u.flowed}
            entry = {
                "followers": u.followers,
                "overridden": u.overridden,
                "flowed": {c: amount_str(v) for c, v in flowed.items()},
                "flowed_decimal": {c: decimal12(v) for c, v in flowed.items()},
            }
            usage[name] = entry
        report["profile_usage"] = usage
    return report


def report_json(election: Election, result: TallyResult,
                ballots: int | None = None) -> str:
    return json.dumps(render_report(election, result, ballots=ballots),
                      indent=2) + "\n"


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def flows_dot(election: Election, result: TallyResult) -> str:
    """Render round-by-round liquid movements as a DOT digraph.

    Each round's edges are re-summed against the round's declared
    transferred total before anything is emitted; a mismatch means the
    books are cooked and raises InvariantError rather than drawing a
    pretty lie.
    """
    lines = ["digraph flows {", "  rankdir=LR;"]
    used = set()
    for rec in result.rounds:
        for t in rec.transfers:
            used.add(t.source)
            used.add(t.target)
    for c in election.candidates:
        if c in used:
            lines.append(f"  {_dot_quote(c)} [shape=box];")
    if EXHAUSTED in used:
        lines.append(f"  {_dot_quote(EXHAUSTED)} [shape=oval];")
    for rec in result.rounds:
        moved = sum(t.amount for t in rec.transfers)
        declared = rec.transferred
        if isinstance(moved, Fraction) and isinstance(declared, Fraction):
            ok = moved == declared
        else:
            ok = math.isclose(float(moved), float(declared),
                              rel_tol=_FLOW_SLACK, abs_tol=_FLOW_SLACK)
        if not ok:
            raise InvariantError(
                f"round {rec.round} flow edges sum to {moved}, "
                f"declared transferred is {declared}")
        for t in rec.transfers:
            label = f"r{rec.round}: {amount_str(t.amount)}"
            lines.append(f"  {_dot_quote(t.source)} -> {_dot_quote(t.target)}"
                         f" [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
