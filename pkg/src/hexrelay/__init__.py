"""hexrelay: relay placement on a hexagonal lattice for sparse two-tier networks."""

__version__ = "0.1.0"

from .hcs import (
    HcsFrame,
    HexCoord,
    HexVec,
    facade_track,
    facades,
    feasible_hop_offsets,
    from_cartesian,
    hex_distance,
    inner_product,
    is_coverage_connected,
    is_robustly_connected,
    orientation,
    perp_step,
    to_cartesian,
)
from .mst import EdgeMatrix, NodeRecord, extract_line_graphs, find_terminals, is_tree, kruskal_mst
from .placement import (
    Placement,
    PlacementState,
    case1_applicable,
    coverage_graph_connected,
    modify_mst,
    place_case1,
    place_case2,
    run_egdo,
    run_gdo,
    select_edge,
)
from .baselines import (
    FeasibleMatrix,
    build_feasible_matrix,
    dyn_smt,
    exhaustive_search,
    smt_in_hcs,
    sta_smt,
)
from .experiments import (
    PerturbationReport,
    ThresholdEstimate,
    perturb,
    post_perturbation_connected,
    rf_value,
    robustness_factor,
    survival_trials,
    threshold_estimate,
)
from .scenario import Scenario, generate_scenario, read_scenario, write_scenario

__all__ = [
    "__version__",
    "HcsFrame",
    "HexCoord",
    "HexVec",
    "facades",
    "facade_track",
    "feasible_hop_offsets",
    "from_cartesian",
    "hex_distance",
    "inner_product",
    "is_coverage_connected",
    "is_robustly_connected",
    "orientation",
    "perp_step",
    "to_cartesian",
    "EdgeMatrix",
    "NodeRecord",
    "extract_line_graphs",
    "find_terminals",
    "is_tree",
    "kruskal_mst",
    "Placement",
    "PlacementState",
    "case1_applicable",
    "coverage_graph_connected",
    "modify_mst",
    "place_case1",
    "place_case2",
    "run_egdo",
    "run_gdo",
    "select_edge",
    "FeasibleMatrix",
    "build_feasible_matrix",
    "dyn_smt",
    "exhaustive_search",
    "smt_in_hcs",
    "sta_smt",
    "PerturbationReport",
    "ThresholdEstimate",
    "perturb",
    "post_perturbation_connected",
    "rf_value",
    "robustness_factor",
    "survival_trials",
    "threshold_estimate",
    "Scenario",
    "generate_scenario",
    "read_scenario",
    "write_scenario",
]
