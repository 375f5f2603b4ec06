"""Delegation graphs and the power each voter ends up wielding.

Every voter starts with one unit of power and may split it, by integer
parts, between keeping it (the SELF target) and handing it to other
voters.  Anyone who retains a positive share is an absorber: delegated
power arriving there stays there.  Voters who hand away everything are
pure conduits, and power flows on through them by their ratios.  Flow
that enters a ring of conduits with no way out can never be cast and is
reported as unresolved rather than silently dropped.

The linear resolver is exact.  The quadratic resolver attenuates each
origin's contribution to sqrt(share) at the first hop only (splitting
two ways sends about 0.707 each, so a split voice carries further than
a whole one), and the attenuated amounts then travel linearly.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .model import Amount, InvariantError, ValidationError

SELF = "SELF"


class _Suppressed:
    """Sentinel for counts a publication policy refuses to reveal."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "SUPPRESSED"


SUPPRESSED = _Suppressed()


@dataclass(frozen=True)
class DelegationGraph:
    """Voters plus their outgoing (target, parts) splits for one scope."""

    voters: tuple[str, ...]
    edges: Mapping[str, tuple[tuple[str, int], ...]]
    scope: str | None = None

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, int]],
                   voters: Iterable[str] = (), scope: str | None = None
                   ) -> "DelegationGraph":
        """Build and validate a graph from (from, to, parts) triples.

        Voter order is first appearance (explicit list first), repeated
        (from, to) pairs merge by summing parts.
        """
        order: dict[str, None] = {}
        for v in voters:
            order.setdefault(v, None)
        merged: dict[str, dict[str, int]] = {}
        for src, dst, parts in edges:
            if not isinstance(src, str) or not src:
                raise ValidationError("edge source must be a nonempty voter id")
            if not isinstance(dst, str) or not dst:
                raise ValidationError(f"edge from {src!r} has an empty target")
            if isinstance(parts, bool) or not isinstance(parts, int) or parts <= 0:
                raise ValidationError(
                    f"edge {src!r} -> {dst!r} needs positive integer parts")
            if src == dst:
                raise ValidationError(
                    f"voter {src!r} delegates to their own id; use {SELF!r} to retain")
            order.setdefault(src, None)
            if dst != SELF:
                order.setdefault(dst, None)
            bucket = merged.setdefault(src, {})
            bucket[dst] = bucket.get(dst, 0) + parts
        packed = {v: tuple(t.items()) for v, t in merged.items()}
        return cls(voters=tuple(order), edges=packed, scope=scope)


def delegations_from_obj(obj) -> DelegationGraph:
    if not isinstance(obj, Mapping):
        raise ValidationError("delegations file must be a JSON object")
    raw_edges = obj.get("edges")
    if not isinstance(raw_edges, list):
        raise ValidationError("delegations need an 'edges' list")
    triples = []
    for i, e in enumerate(raw_edges):
        if not isinstance(e, Mapping) or not {"from", "to", "parts"} <= set(e):
            raise ValidationError(f"edge #{i + 1} must have from, to and parts")
        triples.append((e["from"], e["to"], e["parts"]))
    voters = obj.get("voters", [])
    if not isinstance(voters, list):
        raise ValidationError("'voters' must be a list of ids")
    scope = obj.get("scope")
    if scope is not None and not isinstance(scope, str):
        raise ValidationError("'scope' must be a string")
    return DelegationGraph.from_edges(triples, voters=voters, scope=scope)


def load_delegations(path: str) -> DelegationGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    try:
        return delegations_from_obj(obj)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class PowerMap:
    """Resolved voting power per voter after delegation settles.

    resolved[v] includes v's own retained share plus everything absorbed
    at v; inflow[v] is just the absorbed part.  sum(resolved) plus
    unresolved equals the voter count exactly in linear mode.
    """

    resolved: Mapping[str, Amount | float]
    inflow: Mapping[str, Amount | float]
    unresolved: Amount | float
    mode: str


# ---------------------------------------------------------------------------
# flow machinery


def _ratios(graph: DelegationGraph):
    """Per voter: retained share and outgoing (target, share) pairs."""
    retain: dict[str, Fraction] = {}
    out: dict[str, list[tuple[str, Fraction]]] = {}
    for v in graph.voters:
        targets = graph.edges.get(v, ())
        total = sum(p for _, p in targets)
        if not targets:
            retain[v] = Fraction(1)
            out[v] = []
            continue
        kept = sum(p for t, p in targets if t == SELF)
        retain[v] = Fraction(kept, total)
        out[v] = [(t, Fraction(p, total)) for t, p in targets if t != SELF]
    return retain, out


def _tarjan(nodes: Sequence[str], succ: Mapping[str, list[str]]) -> list[list[str]]:
    """Strongly connected components, iteratively; sinks come out first."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[list[str]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ.get(root, ())))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    pushed = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def _solve_linear_system(matrix, rhs):
    """Gauss-Jordan with max-pivot; exact on Fractions, stable on floats."""
    n = len(rhs)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if aug[pivot][col] == 0:
            raise InvariantError("delegation flow system is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        head = aug[col][col]
        aug[col] = [x / head for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _resolve(graph: DelegationGraph, quadratic: bool) -> PowerMap:
    retain, out = _ratios(graph)
    conduits = [v for v in graph.voters if out[v] and retain[v] == 0]
    conduit_set = set(conduits)
    zero = 0.0 if quadratic else Fraction(0)

    resolved = {v: zero for v in graph.voters}
    inflow = {v: zero for v in graph.voters}
    pending = {v: zero for v in conduits}
    unresolved = zero

    def origin_amount(share: Fraction):
        return math.sqrt(share) if quadratic else share

    def deliver(target, amount):
        nonlocal unresolved
        if amount == 0:
            return
        if target in conduit_set:
            pending[target] += amount
        else:
            resolved[target] += amount
            inflow[target] += amount

    # origin hop: every voter emits their own unit
    for v in graph.voters:
        if retain[v] > 0 or not out[v]:
            resolved[v] += origin_amount(retain[v])
        for t, share in out[v]:
            deliver(t, origin_amount(share))

    # transit is linear: push through conduits in dependency order,
    # solving each strongly connected ring in one shot
    weight = {
        v: [(t, (float(s) if quadratic else s)) for t, s in out[v]]
        for v in conduits
    }
    succ = {v: [t for t, _ in weight[v] if t in conduit_set] for v in conduits}
    sccs = _tarjan(conduits, succ)
    comp_of = {}
    for i, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = i

    for comp in reversed(sccs):  # sources before sinks
        members = set(comp)
        has_exit = any(t not in members for v in comp for t, _ in weight[v])
        total_in = sum(pending[v] for v in comp)
        if not has_exit:
            unresolved += total_in
            continue
        if total_in == 0:
            continue
        if len(comp) == 1:
            through = {comp[0]: pending[comp[0]]}
        else:
            # x = inject + (internal flow into each member)
            idx = {v: i for i, v in enumerate(comp)}
            one = 1.0 if quadratic else Fraction(1)
            matrix = [[one if i == j else zero for j in comp] for i in comp]
            for v in comp:
                for t, w in weight[v]:
                    if t in members:
                        matrix[idx[t]][idx[v]] -= w
            xs = _solve_linear_system(matrix, [pending[v] for v in comp])
            through = {v: xs[idx[v]] for v in comp}
        for v in comp:
            amount = through[v]
            if amount == 0:
                continue
            for t, w in weight[v]:
                if t not in members:
                    deliver(t, amount * w)

    return PowerMap(resolved=resolved, inflow=inflow, unresolved=unresolved,
                    mode="quadratic" if quadratic else "linear")


def resolve_linear(graph: DelegationGraph) -> PowerMap:
    """Exact transitive delegation: power splits by parts and flows
    through full delegators until someone who retains absorbs it."""
    return _resolve(graph, quadratic=False)


def resolve_quadratic(graph: DelegationGraph) -> PowerMap:
    """Like resolve_linear, but each origin's hop to target i carries
    sqrt(share_i), so per-origin squared contributions sum to one when
    nothing is retained.  Transit hops stay linear."""
    return _resolve(graph, quadratic=True)


def direct_support(graph: DelegationGraph) -> dict[str, int]:
    """How many voters delegate (any positive parts) straight to each target."""
    counts: dict[str, int] = {}
    for v in graph.voters:
        for t, _ in graph.edges.get(v, ()):
            if t != SELF:
                counts[t] = counts.get(t, 0) + 1
    return {t: counts[t] for t in sorted(counts)}


# ---------------------------------------------------------------------------
# concentration


def gini(values: Sequence[Amount | float]):
    """Gini coefficient; 0 for uniform, (n-1)/n when one voter holds all."""
    vals = sorted(values)
    n = len(vals)
    if n == 0:
        return Fraction(0)
    total = sum(vals)
    if total == 0:
        return 0.0 if isinstance(total, float) else Fraction(0)
    weighted = sum((i + 1) * x for i, x in enumerate(vals))
    if isinstance(total, float) or isinstance(weighted, float):
        return 2.0 * weighted / (n * total) - (n + 1) / n
    return 2 * Fraction(weighted) / (n * total) - Fraction(n + 1, n)


@dataclass(frozen=True)
class ConcentrationReport:
    """Top power holders with their share of all resolved power."""

    entries: tuple[tuple[str, Amount | float, Amount | float], ...]
    gini: Amount | float
    unresolved: Amount | float


def concentration_report(power: PowerMap, top: int = 10) -> ConcentrationReport:
    if top < 1:
        raise ValidationError("top must be at least 1")
    total = sum(power.resolved.values())
    ranked = sorted(power.resolved, key=lambda v: (-power.resolved[v], v))
    entries = []
    for v in ranked[:top]:
        p = power.resolved[v]
        share = p / total if total else (0.0 if isinstance(p, float) else Fraction(0))
        entries.append((v, p, share))
    return ConcentrationReport(entries=tuple(entries),
                               gini=gini(list(power.resolved.values())),
                               unresolved=power.unresolved)


# ---------------------------------------------------------------------------
# publication


@dataclass(frozen=True)
class PublicationPolicy:
    """How support counts go public: a floor, or calibrated noise.

    threshold suppresses any count under t, so outsiders cannot tell a
    suppressed 0 from a suppressed t-1.  dp adds two-sided exponential
    noise with scale 1/epsilon, seeded and rounded, clamped at zero.
    """

    kind: str  # "threshold" | "dp"
    threshold: int = 1
    epsilon: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind == "threshold":
            if isinstance(self.threshold, bool) or not isinstance(self.threshold, int) \
                    or self.threshold < 1:
                raise ValidationError("threshold must be an integer >= 1")
        elif self.kind == "dp":
            if not self.epsilon > 0:
                raise ValidationError("dp epsilon must be positive")
        else:
            raise ValidationError(f"unknown publication policy {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "PublicationPolicy":
        """Parse CLI shorthand: 'threshold:T' or 'dp:EPS:SEED'."""
        bits = text.split(":")
        try:
            if bits[0] == "threshold" and len(bits) == 2:
                return cls(kind="threshold", threshold=int(bits[1]))
            if bits[0] == "dp" and len(bits) == 3:
                return cls(kind="dp", epsilon=float(bits[1]), seed=int(bits[2]))
        except ValueError as exc:
            raise ValidationError(f"bad publication policy {text!r}") from exc
        raise ValidationError(
            f"bad publication policy {text!r}; use threshold:T or dp:EPS:SEED")


def _laplace(rng: random.Random, scale: float) -> float:
    p = rng.random()
    if p <= 0.0:
        return -math.inf
    if p < 0.5:
        return scale * math.log(2.0 * p)
    return -scale * math.log(2.0 * (1.0 - p))


def publish_support(counts: Mapping[str, int], policy: PublicationPolicy
                    ) -> dict[str, int | _Suppressed]:
    """Apply a publication policy to raw support counts.

    Keys come out sorted; with the dp policy the noise draws follow that
    order from a single seeded generator, so a fixed seed fixes the
    published numbers.
    """
    for key, c in counts.items():
        if isinstance(c, bool) or not isinstance(c, int) or c < 0:
            raise ValidationError(f"count for {key!r} must be a nonnegative integer")
    published: dict[str, int | _Suppressed] = {}
    if policy.kind == "threshold":
        for key in sorted(counts):
            c = counts[key]
            published[key] = SUPPRESSED if c < policy.threshold else c
        return published
    rng = random.Random(policy.seed)
    scale = 1.0 / policy.epsilon
    for key in sorted(counts):
        noisy = counts[key] + _laplace(rng, scale)
        published[key] = max(0, round(noisy)) if math.isfinite(noisy) else 0
    return published
