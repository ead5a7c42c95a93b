"""Star-vertex lift: perfect matchings of a graph as spanning hypertrees.

Adding a new vertex to every edge of a graph G gives a 3-uniform G' whose
spanning hypertrees are exactly {e + star : e in M} for the perfect
matchings M of G.  Only the graph-to-3-uniform lift is built, since the
decider consumes 3-uniform instances only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decider import DEFAULT_EPSILON_EXPONENT, Decision, decide
from .errors import NotAHypertree, UnsupportedUniformity
from .hypergraph import EdgeSubset, Hypergraph, is_spanning_hypertree


@dataclass(frozen=True)
class LiftMap:
    source: Hypergraph
    lifted: Hypergraph

    @property
    def star(self) -> int:
        return self.source.num_vertices + 1


def thomassen_lift(graph: Hypergraph) -> LiftMap:
    """Append vertex N + 1 to every edge of a graph.

    The star carries the largest label, so every lifted edge stays sorted
    and edge i of the lift is edge i of the source.
    """
    if graph.k != 2:
        raise UnsupportedUniformity(f"only graphs (k=2) can be lifted, got k={graph.k}")
    star = graph.num_vertices + 1
    src = graph.edge_array
    edges = np.empty((src.shape[0], 3), dtype=np.int64)
    edges[:, :2] = src
    edges[:, 2] = star
    return LiftMap(graph, Hypergraph(3, star, edges))


def pull_back(lift: LiftMap, tree: EdgeSubset) -> EdgeSubset:
    """The perfect matching of the source corresponding to a hypertree of the lift."""
    if not is_spanning_hypertree(lift.lifted, tree):
        raise NotAHypertree(f"edges {tuple(tree)} are not a spanning hypertree of the lift")
    return tuple(sorted(tree))


def decide_perfect_matching(
    graph: Hypergraph,
    epsilon_exponent: int = DEFAULT_EPSILON_EXPONENT,
    seed: int = 0,
    **kwargs,
) -> Decision:
    """YES means ``graph`` certainly has a perfect matching; NO_PROBABLE errs with probability <= 2^-b."""
    return decide(thomassen_lift(graph).lifted, epsilon_exponent, seed, **kwargs)
