"""Committee selection from budgeted preference queries.

Simulates elections in which voters answer structured refinement questions
under a spending cap, scores the resulting partial rankings positionally,
and measures how far the chosen committee lands from the full-information
Borda committee.
"""

from .core import (
    Committee,
    Election,
    PreferenceOrder,
    borda_scores,
    hamming,
    k_borda,
    select_top_k,
)
from .costs import (
    COST_FUNCTIONS,
    Axiom,
    AxiomVerdict,
    audit_axiom,
    audit_grid,
    bhatia_davis_floor,
    cost_bucket_count,
    cost_candidates,
    cost_computational,
    cost_last_bucket,
    cost_variance_aware,
    format_audit_table,
    get_cost_function,
    variance,
)
from .cultures import (
    KINDS,
    CultureSpec,
    euclidean_distance_oracle,
    generate,
    rank_by_distance,
)
from .election_io import (
    load_election,
    read_native,
    read_preflib,
    write_native,
    write_preflib,
)
from .experiments import (
    ExperimentConfig,
    ResultRow,
    default_budget_grid,
    difficulty_score,
    difficulty_scores,
    emit_csv,
    expected_random_distance,
    full_resolution_cost,
    load_config,
    parse_config,
    random_baseline,
    read_csv_rows,
    run_budget_sweep,
)
from .queries import (
    InfeasibleQueryError,
    OrderedPartition,
    QuestionType,
    RefinementQuery,
    answer_query,
    bucket_sizes,
    make_question,
)
from .scoring import borda_vector, partial_scores, query_based_committee
from .strategies import (
    ALL_STRATEGIES,
    UNLIMITED,
    BudgetPolicy,
    ElicitationRun,
    LogEntry,
    ProtocolError,
    VoterState,
    apply_answer,
    init_state,
    next_query,
    parse_strategy,
    read_log,
    replay_log,
    run_elicitation,
    strategy_label,
    write_log,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_STRATEGIES",
    "Axiom",
    "AxiomVerdict",
    "BudgetPolicy",
    "COST_FUNCTIONS",
    "Committee",
    "CultureSpec",
    "Election",
    "ElicitationRun",
    "ExperimentConfig",
    "InfeasibleQueryError",
    "KINDS",
    "LogEntry",
    "OrderedPartition",
    "PreferenceOrder",
    "ProtocolError",
    "QuestionType",
    "RefinementQuery",
    "ResultRow",
    "UNLIMITED",
    "VoterState",
    "answer_query",
    "apply_answer",
    "audit_axiom",
    "audit_grid",
    "bhatia_davis_floor",
    "borda_scores",
    "borda_vector",
    "bucket_sizes",
    "cost_bucket_count",
    "cost_candidates",
    "cost_computational",
    "cost_last_bucket",
    "cost_variance_aware",
    "default_budget_grid",
    "difficulty_score",
    "difficulty_scores",
    "emit_csv",
    "euclidean_distance_oracle",
    "expected_random_distance",
    "format_audit_table",
    "full_resolution_cost",
    "generate",
    "get_cost_function",
    "hamming",
    "init_state",
    "k_borda",
    "load_config",
    "load_election",
    "make_question",
    "next_query",
    "parse_config",
    "parse_strategy",
    "partial_scores",
    "query_based_committee",
    "random_baseline",
    "rank_by_distance",
    "read_csv_rows",
    "read_log",
    "read_native",
    "read_preflib",
    "replay_log",
    "run_budget_sweep",
    "run_elicitation",
    "select_top_k",
    "strategy_label",
    "variance",
    "write_log",
    "write_native",
    "write_preflib",
]
