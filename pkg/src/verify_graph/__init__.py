"""Verification graph: fans registered checks out over seeds and merges the verdicts."""

from src.verify_graph.checks import CHECKS
from src.verify_graph.configuration import ALL_CHECKS, VerifyConfiguration
from src.verify_graph.graph import graph

__all__ = ["ALL_CHECKS", "CHECKS", "VerifyConfiguration", "graph"]
