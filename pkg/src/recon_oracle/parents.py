"""Parity dependencies of Phi_h and F_{h+1} indices and their GF(2) leaf sets."""

from dataclasses import dataclass
from typing import Literal

from src.sequence_forge.boundaries import phi_references
from src.sequence_forge.primes import prime

FamilyName = Literal["phi", "f"]


@dataclass(frozen=True)
class DependencyNode:
    """An index with the indices whose XOR defines it (empty for plain symbols)."""

    index: int
    family: FamilyName
    parents: tuple[int, ...]


def f_references(h: int, index: int) -> tuple[int, ...]:
    """Parents q p_1, ..., q p_h of F_{h+1} index q p_{h+1}; empty otherwise."""
    p = prime(h + 1)
    if index <= 0 or index % p:
        return ()
    q = index // p
    return tuple(q * prime(k) for k in range(1, h + 1))


def parents(family: FamilyName, h: int, index: int) -> tuple[int, ...]:
    """Referenced indices of ``index``; always strictly smaller than it."""
    if index < 0:
        raise ValueError(f"index must be nonnegative, got {index}")
    if family == "phi":
        return phi_references(h, index)
    if family == "f":
        return f_references(h, index)
    raise ValueError(f"unknown family {family!r}")


def dependency_node(family: FamilyName, h: int, index: int) -> DependencyNode:
    return DependencyNode(index=index, family=family, parents=parents(family, h, index))


@dataclass(frozen=True)
class LeafExpansion:
    """Indices of odd multiplicity after expanding ``root`` ``depth`` levels."""

    root: int
    depth: int
    leaves: frozenset[int]


def leaf_expansion(family: FamilyName, h: int, root: int, depth: int) -> LeafExpansion:
    """Expand parity parents level by level, cancelling pairs.

    Plain indices stay in the frontier as they are, and nodes still carrying
    parents at the depth cap are kept as leaves, so the XOR of the symbols at
    the leaves always equals the symbol at the root.
    """
    if root < 1:
        raise ValueError(f"root must be >= 1, got {root}")
    frontier = {root}
    for _ in range(depth):
        expanded: set[int] = set()
        for node in frontier:
            for parent in parents(family, h, node) or (node,):
                expanded ^= {parent}
        if expanded == frontier:
            break
        frontier = expanded
    return LeafExpansion(root=root, depth=depth, leaves=frozenset(frontier))
