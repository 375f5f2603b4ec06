"""Topic hierarchies: who sits where, how much delegating that costs,
and how local issues climb toward a global ballot.

A tree with branching [10, 10, 10] has a thousand leaf topics.  Voters
get a home leaf (their focus area); everywhere else their power arrives
by delegation.  Under the per-level explicit style a voter picks one
delegate for each sibling subtree off their home path, nine per level
here, so the workload grows with depth times branching while the leaf
population covered grows multiplicatively.  The generic style cuts that
to a single trusted pick per level.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .delegation import SELF, DelegationGraph
from .model import Amount, Ballot, Election, ValidationError, normalize_ballots
from .transfer import run_transfer

ROOT = "root"


@dataclass(frozen=True)
class TopicTree:
    """Uniform-branching topic tree addressed by dotted 1-based paths.

    Level 0 is the root (the whole electorate); a node at level k has id
    like "2.5.1".  Leaves also carry a flat index in path order, so a
    subtree's leaves form one contiguous span.
    """

    branching: tuple[int, ...]
    names: Mapping[str, str] | None = None

    def __post_init__(self):
        if not self.branching:
            raise ValidationError("hierarchy needs at least one level")
        for b in self.branching:
            if isinstance(b, bool) or not isinstance(b, int) or b < 1:
                raise ValidationError("branching factors must be integers >= 1")

    @property
    def depth(self) -> int:
        return len(self.branching)

    @property
    def leaf_count(self) -> int:
        return math.prod(self.branching)

    def parse(self, node_id: str) -> tuple[int, ...]:
        if node_id == ROOT or node_id == "":
            return ()
        try:
            path = tuple(int(x) for x in node_id.split("."))
        except ValueError as exc:
            raise ValidationError(f"bad topic id {node_id!r}") from exc
        return self.validate_path(path)

    def validate_path(self, path: Sequence[int]) -> tuple[int, ...]:
        path = tuple(path)
        if len(path) > self.depth:
            raise ValidationError(f"topic path {path} is deeper than the tree")
        for level, x in enumerate(path):
            if not 1 <= x <= self.branching[level]:
                raise ValidationError(
                    f"topic path {path} leaves the tree at level {level + 1}")
        return path

    def id_of(self, path: Sequence[int]) -> str:
        return ".".join(str(x) for x in path) if path else ROOT

    def display_name(self, node_id: str) -> str:
        if self.names and node_id in self.names:
            return self.names[node_id]
        return node_id

    def leaf_path(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.leaf_count:
            raise ValidationError(f"leaf index {index} out of range")
        digits = []
        for b in reversed(self.branching):
            digits.append(index % b + 1)
            index //= b
        return tuple(reversed(digits))

    def leaf_index(self, path: Sequence[int]) -> int:
        path = self.validate_path(path)
        if len(path) != self.depth:
            raise ValidationError(f"{self.id_of(path)} is not a leaf")
        index = 0
        for level, x in enumerate(path):
            index = index * self.branching[level] + (x - 1)
        return index

    def leaf_span(self, path: Sequence[int]) -> tuple[int, int]:
        """Contiguous [start, end) of leaf indices under a node."""
        path = self.validate_path(path)
        width = math.prod(self.branching[len(path):])
        start = 0
        for level, x in enumerate(path):
            start = start * self.branching[level] + (x - 1)
        start *= width
        return start, start + width


def hierarchy_from_obj(obj: Any) -> TopicTree:
    if not isinstance(obj, Mapping) or "branching" not in obj:
        raise ValidationError("hierarchy file needs a 'branching' list")
    branching = obj["branching"]
    if not isinstance(branching, list):
        raise ValidationError("'branching' must be a list of integers")
    names = obj.get("names")
    if names is not None and not isinstance(names, Mapping):
        raise ValidationError("'names' must map topic ids to strings")
    return TopicTree(branching=tuple(branching), names=dict(names) if names else None)


def load_hierarchy(path: str) -> TopicTree:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    try:
        return hierarchy_from_obj(obj)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class SimConfig:
    """Population simulation settings; everything hangs off the seed."""

    voters: int
    seed: int
    distribution: str = "uniform"  # "uniform" | "zipf"
    zipf_s: float = 1.0
    style: str = "per-level"  # "per-level" | "generic"

    def __post_init__(self):
        if isinstance(self.voters, bool) or not isinstance(self.voters, int) \
                or self.voters < 1:
            raise ValidationError("voters must be a positive integer")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValidationError("seed must be an integer")
        if self.distribution not in ("uniform", "zipf"):
            raise ValidationError(f"unknown distribution {self.distribution!r}")
        if self.distribution == "zipf" and not self.zipf_s > 0:
            raise ValidationError("zipf exponent must be positive")
        if self.style not in ("per-level", "generic"):
            raise ValidationError(f"unknown delegation style {self.style!r}")


def simconfig_from_obj(obj: Any) -> SimConfig:
    if not isinstance(obj, Mapping):
        raise ValidationError("simulation config must be a JSON object")
    dist = obj.get("distribution", "uniform")
    zipf_s = 1.0
    if isinstance(dist, Mapping):
        if set(dist) != {"zipf"}:
            raise ValidationError("distribution object must be {\"zipf\": s}")
        zipf_s = float(dist["zipf"])
        dist = "zipf"
    return SimConfig(
        voters=obj.get("voters", 0),
        seed=obj.get("seed", 0),
        distribution=dist,
        zipf_s=zipf_s,
        style=obj.get("delegation_style", "per-level"),
    )


def load_simconfig(path: str) -> SimConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    try:
        return simconfig_from_obj(obj)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


class Assignment:
    """A simulated population: home leaves plus on-demand delegation graphs."""

    def __init__(self, tree: TopicTree, config: SimConfig, home_leaf: np.ndarray):
        self.tree = tree
        self.config = config
        self.home_leaf = home_leaf
        self.leaf_counts = np.bincount(home_leaf, minlength=tree.leaf_count)
        # voters sorted by home leaf, for participant range lookups
        self._order = np.argsort(home_leaf, kind="stable")
        self._sorted_home = home_leaf[self._order]

    @property
    def voters(self) -> int:
        return len(self.home_leaf)

    def mean_leaf_participation(self) -> Amount:
        return Fraction(self.voters, self.tree.leaf_count)

    def participants_in(self, path: Sequence[int]) -> int:
        start, end = self.tree.leaf_span(path)
        lo = np.searchsorted(self._sorted_home, start, side="left")
        hi = np.searchsorted(self._sorted_home, end, side="left")
        return int(hi - lo)

    def _pick_participant(self, span: tuple[int, int], k: int) -> int:
        lo = np.searchsorted(self._sorted_home, span[0], side="left")
        return int(self._order[lo + k])

    def _pick_outside_subtree(self, parent_span, own_span, k: int) -> int:
        p = np.searchsorted(self._sorted_home, parent_span[0], side="left")
        a = np.searchsorted(self._sorted_home, own_span[0], side="left")
        b = np.searchsorted(self._sorted_home, own_span[1], side="left")
        before_own = a - p
        pos = p + k if k < before_own else b + (k - before_own)
        return int(self._order[pos])

    def delegation_graph(self, topic: str | Sequence[int]) -> DelegationGraph:
        """Materialize the delegation graph every voter implies for one
        leaf topic.  Seeded per (voter, subtree), so the same choice
        reappears for every topic inside that subtree.  Meant for
        focused analysis, it walks voters in Python; use modest
        populations.
        """
        tree, cfg = self.tree, self.config
        path = tree.parse(topic) if isinstance(topic, str) else tree.validate_path(topic)
        if len(path) != tree.depth:
            raise ValidationError(f"{tree.id_of(path)} is not a leaf topic")
        triples = []
        names = [f"v{i}" for i in range(self.voters)]
        for i in range(self.voters):
            home = tree.leaf_path(int(self.home_leaf[i]))
            diverge = next((d for d in range(tree.depth) if home[d] != path[d]), None)
            if diverge is None:
                triples.append((names[i], SELF, 1))
                continue
            if cfg.style == "per-level":
                subtree = path[:diverge + 1]
                span = tree.leaf_span(subtree)
                pool = self.participants_in(subtree)
                if pool == 0:
                    continue  # nobody there to represent this voter
                rng = np.random.default_rng(
                    [cfg.seed, 1, i, diverge, *subtree])
                delegate = self._pick_participant(span, int(rng.integers(pool)))
            else:
                parent = home[:diverge]
                own = home[:diverge + 1]
                parent_span = tree.leaf_span(parent)
                own_span = tree.leaf_span(own)
                pool = self.participants_in(parent) - self.participants_in(own)
                if pool == 0:
                    continue
                rng = np.random.default_rng([cfg.seed, 2, i, diverge])
                delegate = self._pick_outside_subtree(
                    parent_span, own_span, int(rng.integers(pool)))
            triples.append((names[i], names[delegate], 1))
        return DelegationGraph.from_edges(triples, voters=names,
                                          scope=tree.id_of(path))


def simulate_population(tree: TopicTree, config: SimConfig) -> Assignment:
    """Assign every voter a home leaf, seed-deterministically."""
    rng = np.random.default_rng(config.seed)
    n = tree.leaf_count
    if config.distribution == "uniform":
        home = rng.integers(0, n, size=config.voters, dtype=np.int64)
    else:
        ranks = np.arange(1, n + 1, dtype=np.float64)
        p = ranks ** -config.zipf_s
        p /= p.sum()
        home = rng.choice(n, size=config.voters, p=p).astype(np.int64)
    return Assignment(tree, config, home)


@dataclass(frozen=True)
class WorkloadMetrics:
    """Explicit delegation decisions the style demands of each voter.

    The counts are structural: under per-level explicit delegation a
    voter covers every sibling subtree off their home path, one decision
    each, whether or not anybody lives there yet.
    """

    style: str
    per_voter: int
    max_decisions: int
    mean_decisions: int
    bound: int


def workload_metrics(tree: TopicTree, assignment: Assignment) -> WorkloadMetrics:
    style = assignment.config.style
    if style == "per-level":
        per_voter = sum(b - 1 for b in tree.branching)
    else:
        per_voter = tree.depth
    return WorkloadMetrics(style=style, per_voter=per_voter,
                           max_decisions=per_voter, mean_decisions=per_voter,
                           bound=sum(b - 1 for b in tree.branching)
                           if style == "per-level" else tree.depth)


# ---------------------------------------------------------------------------
# topic-level elections and escalation


def elect_topics(proposals: Sequence[str], ballots: Sequence[Ballot | Mapping[str, int]],
                 slots: int, method: str = "ctv", quota_rule: str = ""):
    """Pick which proposals fill the available slots.

    Ballots may be Ballot objects or bare parts maps; the contest runs
    on the requested transferable method.
    """
    concrete = []
    for i, b in enumerate(ballots):
        if isinstance(b, Ballot):
            concrete.append(b)
        else:
            concrete.append(Ballot(id=str(i + 1), parts=dict(b)))
    election = Election(id="topics", candidates=tuple(proposals), seats=slots,
                        method=method, quota_rule=quota_rule)
    return run_transfer(normalize_ballots(concrete, election), election)


@dataclass(frozen=True)
class BubbleTrail:
    final_level: int
    reached_root: bool
    steps: tuple[tuple[int, float, float, bool], ...]  # level, support, threshold, ok


def bubble_up(tree: TopicTree, topic: str,
              support: Mapping[int, float | Amount],
              thresholds: Mapping[int, float | Amount]) -> BubbleTrail:
    """Climb an issue from its topic toward the root.

    Ascending into level L requires support at least thresholds[L],
    measured in whatever scope convention produced the `support` map
    (see support_profile).  The climb stops at the first failed bar or
    where no bar is defined; level 0 is the root.
    """
    path = tree.parse(topic)
    level = len(path)
    for th in thresholds.values():
        if not 0 < th <= 1:
            raise ValidationError("bubble-up thresholds must be in (0, 1]")
    steps = []
    while level > 0:
        target = level - 1
        if target not in thresholds or target not in support:
            break
        ok = support[target] >= thresholds[target]
        steps.append((target, support[target], thresholds[target], ok))
        if not ok:
            break
        level = target
    return BubbleTrail(final_level=level, reached_root=level == 0,
                       steps=tuple(steps))


def support_profile(assignment: Assignment, topic: str,
                    supporters: Iterable[int],
                    measure: str = "participants") -> dict[int, Amount]:
    """Exact support fraction an issue enjoys at each enclosing scope.

    measure="participants" divides by the scope's population; the
    "electorate" alternative divides by all voters everywhere, making
    the bar absolute rather than local.
    """
    if measure not in ("participants", "electorate"):
        raise ValidationError(f"unknown support measure {measure!r}")
    tree = assignment.tree
    path = tree.parse(topic)
    idx = sorted(set(int(i) for i in supporters))
    for i in idx:
        if not 0 <= i < assignment.voters:
            raise ValidationError(f"supporter index {i} out of range")
    homes = assignment.home_leaf[idx] if idx else np.empty(0, dtype=np.int64)
    out: dict[int, Amount] = {}
    for level in range(len(path) - 1, -1, -1):
        start, end = tree.leaf_span(path[:level])
        inside = int(np.count_nonzero((homes >= start) & (homes < end)))
        denom = assignment.participants_in(path[:level]) \
            if measure == "participants" else assignment.voters
        out[level] = Fraction(inside, denom) if denom else Fraction(0)
    return out


def reweight_local(parts: Mapping[str, int], tree: TopicTree | None = None
                   ) -> dict[str, float]:
    """Quadratic weights for spreading attention among sibling topics.

    weight = sqrt(parts share), so a 4:1 split gives 2:1 weights and the
    squared weights always sum to one.  When a tree is supplied the
    topics must be siblings; weighting across unrelated scopes is
    rejected.
    """
    clean: dict[str, int] = {}
    for topic, p in parts.items():
        if isinstance(p, bool) or not isinstance(p, int) or p < 0:
            raise ValidationError(f"parts for {topic!r} must be a nonnegative integer")
        if p > 0:
            clean[topic] = p
    if not clean:
        raise ValidationError("reweighting needs at least one positive part")
    if tree is not None:
        paths = [tree.parse(t) for t in clean]
        if any(not p for p in paths):
            raise ValidationError("cannot reweight the root")
        parents = {p[:-1] for p in paths}
        if len(parents) != 1:
            raise ValidationError("reweighting spans non-sibling topics")
    total = sum(clean.values())
    return {t: math.sqrt(p / total) for t, p in clean.items()}
