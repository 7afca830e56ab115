"""Greedy-vs-global search on graphs under edge-weight uncertainty.

A simulator and closed-form analysis library that pits a prior
shortest-path searcher against a stochastic greedy searcher on graphs
whose edge weights carry two-point random perturbations, with independent
first-passage oracles validating every formula.
"""

from .errors import (
    AllCensored,
    Disconnected,
    GenerationFailed,
    GsuError,
    InvalidEdge,
    InvalidParams,
    NoInteriorOptimum,
    NotATree,
    NotFound,
    TooLarge,
)
from .generate import (
    GeneratorSpec,
    barabasi_albert,
    c_ary_tree,
    directed_scale_free,
    erdos_renyi,
    find_graph_with,
    lattice,
    random_regular,
    watts_strogatz,
)
from .graphs import (
    DegreeStats,
    Graph,
    PathResult,
    bfs_distances,
    bfs_path,
    build_graph,
    degree_stats,
    diameter,
    half_diameter_H,
    largest_component,
)
from .io import grid_to_csv, read_edge_list, stable_json, write_edge_list
from .mfpt import (
    MfptVector,
    cluster_weights,
    mfpt_linear_solve,
    mfpt_monte_carlo,
    mfpt_tree_cluster_sum,
)
from .searchers import (
    RunOutcome,
    default_max_steps,
    dijkstra_path_weight,
    greedy_walk,
    simulation_run,
)
from .sweep import (
    CellStats,
    RngStream,
    SweepGrid,
    average_ratio,
    derive_rng,
    sweep_ch,
    sweep_up,
)
from .theory import (
    CriticalCurve,
    TheoryPoint,
    critical_curve,
    critical_u,
    ln_z_tilde,
    mfpt_cary_approx,
    mfpt_cary_exact,
    optimal_p,
    theory_point,
    z_general,
    z_star,
    z_tilde,
)
from .uncertainty import UncertaintyModel, expected_eps, expected_xi, sample_xi

__version__ = "0.1.0"
