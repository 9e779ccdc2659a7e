"""Index sets, ratio constants and closed-form bounds of the separation argument."""

from src.structure_lab.hierarchy import closure, disjointness_check, hier_leaf_set
from src.structure_lab.index_set import IndexSet, union_all
from src.structure_lab.limits import (
    BoundSet,
    beta,
    beta_and_limits,
    bound_evaluators,
    convergence_rows,
    delta_limits,
    rho_limits,
    tracker_full_wins,
    tracker_growth_limit,
)
from src.structure_lab.masked import MaskedString, masked_string
from src.structure_lab.ratios import RatioConstants, ratio_constants
from src.structure_lab.sets import (
    index_set_report,
    overwritten_set_A,
    phi_ref_sets,
    u_adaptive,
    u_oblivious,
)

__all__ = [
    "BoundSet",
    "IndexSet",
    "MaskedString",
    "RatioConstants",
    "beta",
    "beta_and_limits",
    "bound_evaluators",
    "closure",
    "convergence_rows",
    "delta_limits",
    "disjointness_check",
    "hier_leaf_set",
    "index_set_report",
    "masked_string",
    "overwritten_set_A",
    "phi_ref_sets",
    "ratio_constants",
    "rho_limits",
    "tracker_full_wins",
    "tracker_growth_limit",
    "u_adaptive",
    "u_oblivious",
    "union_all",
]
