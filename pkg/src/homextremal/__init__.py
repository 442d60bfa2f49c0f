"""Exact H-colouring counts and extremal checks over small graphs."""

from .canon import certificate
from .enumeration import EnumSpec, count_classes, enumerate_graphs
from .graphs import SimpleGraph, TargetGraph
from .hom import (
    BudgetExceeded,
    CopiesTarget,
    hom,
    hom_brute_force,
    hom_complete_bipartite,
    hom_count,
    hom_disjoint_copies,
)

__all__ = [
    "BudgetExceeded",
    "CopiesTarget",
    "EnumSpec",
    "SimpleGraph",
    "TargetGraph",
    "certificate",
    "count_classes",
    "enumerate_graphs",
    "hom",
    "hom_brute_force",
    "hom_complete_bipartite",
    "hom_count",
    "hom_disjoint_copies",
]
