"""Liquid election engine: spreading and transferable vote tallies,
delegation flow resolution, and topic-hierarchy simulation.
"""

from .model import (
    EXHAUSTED,
    METHODS,
    QUOTA_RULES,
    Action,
    Ballot,
    Election,
    InvariantError,
    NormalizedBallot,
    Profile,
    RoundRecord,
    TallyResult,
    Transfer,
    ValidationError,
    default_quota_rule,
    format_amount,
    load_ballots,
    load_election,
    load_profiles,
    normalize_ballot,
    normalize_ballots,
    parse_amount,
    resolve_profiles,
)
from .spread import (
    balloon_heights,
    collusion_scenario,
    qv_cost,
    rounding_error,
    tally_approval,
    tally_cumulative,
    tally_quadratic,
)
from .transfer import run_ctv, run_exponent, run_irv, run_qtv, run_stv, \
    run_transfer
from .delegation import (
    SELF,
    SUPPRESSED,
    ConcentrationReport,
    DelegationGraph,
    PowerMap,
    PublicationPolicy,
    concentration_report,
    direct_support,
    gini,
    load_delegations,
    publish_support,
    resolve_linear,
    resolve_quadratic,
)
from .hierarchy import (
    Assignment,
    SimConfig,
    TopicTree,
    bubble_up,
    elect_topics,
    load_hierarchy,
    load_simconfig,
    reweight_local,
    simulate_population,
    support_profile,
    workload_metrics,
)
from .tally import run_election
from .report import flows_dot, render_report, report_json

__version__ = "0.1.0"

__all__ = [
    "EXHAUSTED", "METHODS", "QUOTA_RULES", "Action", "Ballot", "Election",
    "InvariantError", "NormalizedBallot", "Profile", "RoundRecord",
    "TallyResult", "Transfer", "ValidationError", "default_quota_rule",
    "format_amount", "load_ballots", "load_election", "load_profiles",
    "normalize_ballot", "normalize_ballots", "parse_amount",
    "resolve_profiles", "balloon_heights", "collusion_scenario", "qv_cost",
    "rounding_error", "tally_approval", "tally_cumulative", "tally_quadratic",
    "run_ctv", "run_exponent", "run_irv", "run_qtv", "run_stv", "run_transfer",
    "SELF", "SUPPRESSED", "ConcentrationReport", "DelegationGraph", "PowerMap",
    "PublicationPolicy", "concentration_report", "direct_support", "gini",
    "load_delegations", "publish_support", "resolve_linear",
    "resolve_quadratic", "Assignment", "SimConfig", "TopicTree", "bubble_up",
    "elect_topics", "load_hierarchy", "load_simconfig", "reweight_local",
    "simulate_population", "support_profile", "workload_metrics",
    "run_election", "flows_dot", "render_report", "report_json",
    "__version__",
]
