"""Brute-force ground-truth counters.

These exist to be obviously correct: plain enumeration, no clever
exponential-time algorithms.  Budgets are explicit so misuse fails loudly
instead of silently running for hours.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import kernels
from .errors import BudgetError
from .forest import forest_poly_bruteforce
from .graphs import Multigraph


@dataclass(frozen=True)
class OracleBudget:
    """Per-oracle size limits (vertices or edges)."""

    pm_vertices: int = 16
    subset_vertices: int = 25
    forest_edges: int = 22
    csp_vars: int = 24

    def __post_init__(self):
        if min(self.pm_vertices, self.subset_vertices, self.forest_edges, self.csp_vars) < 0:
            raise ValueError("budgets must be non-negative")


DEFAULT_BUDGET = OracleBudget()


def pm_bruteforce(g: Multigraph, budget: Optional[OracleBudget] = None) -> int:
    """Exact perfect-matching count by recursively matching the lowest
    unmatched vertex.  Zero whenever the vertex count is odd."""
    budget = budget or DEFAULT_BUDGET
    g = g.as_simple()
    if g.n > budget.pm_vertices:
        raise BudgetError(f"{g.n} vertices exceeds the matching budget of {budget.pm_vertices}")
    return kernels.count_perfect_matchings(g.n, g.adjacency_masks())


def is_bruteforce(g: Multigraph, budget: Optional[OracleBudget] = None) -> int:
    """Exact independent-set count by subset enumeration."""
    budget = budget or DEFAULT_BUDGET
    if g.n > budget.subset_vertices:
        raise BudgetError(f"{g.n} vertices exceeds the subset budget of {budget.subset_vertices}")
    return kernels.count_independent_sets(g.n, g.adjacency_masks())


def vc_bruteforce(g: Multigraph, budget: Optional[OracleBudget] = None) -> int:
    """Exact vertex-cover count by subset enumeration.

    Always equals the independent-set count (complementation), but computed
    independently so the pair can cross-check each other.
    """
    budget = budget or DEFAULT_BUDGET
    if g.n > budget.subset_vertices:
        raise BudgetError(f"{g.n} vertices exceeds the subset budget of {budget.subset_vertices}")
    return kernels.count_vertex_covers(g.n, g.adjacency_masks())


def vc_bruteforce_bucketed(
    g: Multigraph, inside: tuple[int, ...] = (), outside: tuple[int, ...] = (), budget: Optional[OracleBudget] = None
) -> int:
    """Vertex covers constrained to contain `inside` and avoid `outside`."""
    budget = budget or DEFAULT_BUDGET
    if g.n > budget.subset_vertices:
        raise BudgetError(f"{g.n} vertices exceeds the subset budget of {budget.subset_vertices}")
    required = 0
    for v in inside:
        required |= 1 << v
    forbidden = 0
    for v in outside:
        forbidden |= 1 << v
    if required & forbidden:
        raise ValueError("a vertex cannot be both required and forbidden")
    return kernels.count_vertex_covers(g.n, g.adjacency_masks(), required, forbidden)


def forests_bruteforce(g: Multigraph, budget: Optional[OracleBudget] = None) -> int:
    """Count acyclic edge subsets; parallel copies count separately."""
    budget = budget or DEFAULT_BUDGET
    result = forest_poly_bruteforce(g, guard=budget.forest_edges)
    return result.forest_count
