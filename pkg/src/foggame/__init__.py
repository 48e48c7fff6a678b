"""Executable model of a two-level network creation game.

Fog devices buy links among themselves (level 1); jobs buy links into the
fog graph (level 2) under one of two cost models.  The package computes
exact best responses, equilibria, social optima, and the price of anarchy
at desk scale, and evaluates closed-form cost bounds against enumerated
instances.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundCheck,
    MidBetaCostReport,
    Type2PoAVerdict,
    check_bounds_on_instance,
    level1_lower_bound,
    make_check,
    rcs_holds,
    rcs_min_constant,
    type1_lower_bound,
    type1_poa_lower,
    type1_poa_upper,
    type1_saddle_grid,
    type1_social_optimum,
    type2_lower_bound,
    type2_mid_beta_report,
    type2_poa_bound,
)
from .equilibrium import (
    DeviationWitness,
    DominationDiagnostic,
    DynamicsOutcome,
    DynamicsTrace,
    Level,
    Move,
    PoAReport,
    Scope,
    best_response_dynamics,
    best_response_fog_exact,
    best_response_job_exact,
    best_response_job_greedy,
    construct_complete_bipartite,
    construct_mds_profile,
    domination_diagnostic,
    empirical_poa,
    enumerate_nash_level2,
    is_nash,
    social_optimum_level2,
)
from .errors import (
    FogGameError,
    FormatError,
    GenerationError,
    GuardExceeded,
    NoEquilibriumError,
    PolicyError,
    ScenarioError,
)
from .graph import (
    INF,
    DistanceMatrix,
    Graph,
    VertexSet,
    all_pairs_distances,
    generate,
    greedy_dominating_set,
    is_connected,
    is_dominating_set,
    min_dominating_set,
    new_graph,
    single_source_distances,
)
from .model import (
    CostReport,
    GameConfig,
    GameState,
    JobCostType,
    Level1Profile,
    Level2Profile,
    TransitPolicy,
    build_combined_graph,
    build_level1_graph,
    cost_report,
    edge_fog_player_cost,
    interconnection_count,
    interconnection_union,
    job_player_cost,
    social_cost_level1,
    social_cost_level2,
)
