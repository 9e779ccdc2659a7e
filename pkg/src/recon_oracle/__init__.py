"""Dependency structure of the self-referential families and reconstruction checks."""

from src.recon_oracle.deduce import (
    Deduction,
    DependencyModel,
    build_model,
    deducible_closure,
    propagate,
)
from src.recon_oracle.parents import (
    DependencyNode,
    LeafExpansion,
    dependency_node,
    f_references,
    leaf_expansion,
    parents,
)
from src.recon_oracle.scenarios import (
    SCENARIOS,
    reconstruction_roundtrip,
    window_sets,
    window_start,
)

__all__ = [
    "Deduction",
    "DependencyModel",
    "DependencyNode",
    "LeafExpansion",
    "SCENARIOS",
    "build_model",
    "deducible_closure",
    "dependency_node",
    "f_references",
    "leaf_expansion",
    "parents",
    "propagate",
    "reconstruction_roundtrip",
    "window_sets",
    "window_start",
]
