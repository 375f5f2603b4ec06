"""Command-line front end.

Four subcommands: `tally` runs an election from files, `delegate`
resolves a delegation graph into voting power, `simulate` builds a
seeded population over a topic tree, and `serve` exposes the same
machinery over HTTP.  Exit codes are stable: 0 success, 2 bad input,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from .delegation import (
    SUPPRESSED,
    PublicationPolicy,
    concentration_report,
    direct_support,
    load_delegations,
    publish_support,
    resolve_linear,
    resolve_quadratic,
)
from .hierarchy import load_hierarchy, load_simconfig, simulate_population, \
    workload_metrics
from .model import (
    InvariantError,
    ValidationError,
    decimal12,
    load_ballots,
    load_election,
    load_profiles,
)
from .report import amount_str, flows_dot, report_json
from .tally import run_election

_PROG = "liquidvote"


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc


def _pair_into(obj: dict, key: str, value) -> None:
    obj[key] = amount_str(value)
    obj[key + "_decimal"] = decimal12(value)


def cmd_tally(args) -> int:
    election = load_election(args.election)
    overrides = {}
    if args.method:
        overrides["method"] = args.method
        overrides["quota_rule"] = ""  # re-derive unless pinned below
    if args.quota:
        overrides["quota_rule"] = args.quota
    if overrides:
        election = dataclasses.replace(election, **overrides)
    ballots = load_ballots(args.ballots, election=election)
    profiles = load_profiles(args.profiles) if args.profiles else {}
    result = run_election(election, ballots, profiles=profiles,
                          exponent=args.exponent)
    if args.report:
        _write(args.report, report_json(election, result, ballots=len(ballots)))
    if args.flows:
        _write(args.flows, flows_dot(election, result))
    print("winners:", ", ".join(result.winners))
    return 0


def _power_report(graph, args) -> dict:
    resolve = resolve_quadratic if args.mode == "quadratic" else resolve_linear
    power = resolve(graph)
    conc = concentration_report(power, top=args.top)
    out = {
        "scope": graph.scope,
        "voters": len(graph.voters),
        "mode": power.mode,
        "powers": {v: amount_str(p) for v, p in power.resolved.items()},
        "powers_decimal": {v: decimal12(p) for v, p in power.resolved.items()},
        "inflow": {v: amount_str(p) for v, p in power.inflow.items()},
        "inflow_decimal": {v: decimal12(p) for v, p in power.inflow.items()},
    }
    _pair_into(out, "unresolved", power.unresolved)
    out["gini"] = decimal12(conc.gini)
    top = []
    for voter, p, share in conc.entries:
        entry = {"voter": voter}
        _pair_into(entry, "power", p)
        _pair_into(entry, "share", share)
        top.append(entry)
    out["top"] = top
    support = direct_support(graph)
    out["direct_support"] = support
    if args.publish:
        policy = PublicationPolicy.parse(args.publish)
        published = publish_support(support, policy)
        out["published"] = {
            v: {"suppressed": True} if x is SUPPRESSED else {"count": x}
            for v, x in published.items()
        }
    return out


def cmd_delegate(args) -> int:
    graph = load_delegations(args.delegations)
    out = _power_report(graph, args)
    text = json.dumps(out, indent=2) + "\n"
    if args.report:
        _write(args.report, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_simulate(args) -> int:
    tree = load_hierarchy(args.hierarchy)
    config = load_simconfig(args.simconfig)
    assignment = simulate_population(tree, config)
    work = workload_metrics(tree, assignment)
    counts = assignment.leaf_counts
    out = {
        "voters": assignment.voters,
        "seed": config.seed,
        "distribution": config.distribution,
        "depth": tree.depth,
        "branching": list(tree.branching),
        "leaves": tree.leaf_count,
        "max_leaf": int(counts.max()),
        "min_leaf": int(counts.min()),
        "workload": {
            "style": work.style,
            "per_voter": work.per_voter,
            "max_decisions": work.max_decisions,
            "mean_decisions": work.mean_decisions,
            "bound": work.bound,
        },
    }
    _pair_into(out, "mean_leaf_participation", assignment.mean_leaf_participation())
    if args.topic:
        graph = assignment.delegation_graph(args.topic)
        topic_out = _power_report(graph, args)
        topic_out["participants"] = assignment.participants_in(
            tree.parse(args.topic))
        del topic_out["powers"], topic_out["powers_decimal"]
        del topic_out["inflow"], topic_out["inflow_decimal"]
        del topic_out["direct_support"]
        out["topic"] = topic_out
    text = json.dumps(out, indent=2) + "\n"
    if args.report:
        _write(args.report, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args) -> int:
    from .server import make_server

    election = load_election(args.election) if args.election else None
    profiles = load_profiles(args.profiles) if args.profiles else {}
    server = make_server(host=args.host, port=args.port, election=election,
                         profiles=profiles, static_dir=args.static)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=_PROG,
                                     description="liquid election engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tally", help="run an election from files")
    p.add_argument("--election", required=True, help="election JSON file")
    p.add_argument("--ballots", required=True, help="ballots JSONL file")
    p.add_argument("--profiles", help="profiles JSON file")
    p.add_argument("--method", help="override the election's method")
    p.add_argument("--quota", help="override the quota rule")
    p.add_argument("--exponent", type=float,
                   help="influence exponent for ctv/qtv family")
    p.add_argument("--report", help="write the round report JSON here")
    p.add_argument("--flows", help="write a DOT flow digraph here")
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("delegate", help="resolve delegated voting power")
    p.add_argument("--delegations", required=True, help="delegation JSON file")
    p.add_argument("--mode", choices=("linear", "quadratic"), default="linear")
    p.add_argument("--publish", metavar="POLICY",
                   help="publication policy: threshold:T or dp:EPS:SEED")
    p.add_argument("--top", type=int, default=10,
                   help="concentration list length")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_delegate)

    p = sub.add_parser("simulate", help="simulate a population on a topic tree")
    p.add_argument("--hierarchy", required=True, help="topic tree JSON file")
    p.add_argument("--simconfig", required=True, help="simulation config JSON")
    p.add_argument("--topic", help="also resolve one leaf topic's delegations")
    p.add_argument("--mode", choices=("linear", "quadratic"), default="linear")
    p.add_argument("--publish", metavar="POLICY",
                   help="publication policy for the topic graph")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="run the JSON API server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--election", help="preload an election JSON file")
    p.add_argument("--profiles", help="preload a profiles JSON file")
    p.add_argument("--static", help="serve this directory at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
