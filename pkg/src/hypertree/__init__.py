"""Randomised detection of spanning hypertrees in 3-uniform hypergraphs.

A hypergraph has a spanning hypertree exactly when a signed generating
polynomial is nonzero; that polynomial is a Pfaffian of a skew matrix built
from edge weights, so evaluating a determinant at random points of GF(q)
decides the question with one-sided error.
"""

__version__ = "0.1.0"

from .decider import Decision, Mode, Strategy, Verdict, Witness, choose_strategy, decide, replay_witness
from .field import FieldCtx, FieldElem, field_new, smallest_prime_geq
from .hypergraph import Hypergraph, complete_hypergraph, is_connected, is_spanning_hypertree, parse, serialize
from .oracle import count_complete, enumerate_perfect_matchings, enumerate_spanning_hypertrees, zstar_exact
from .reduction import decide_perfect_matching, thomassen_lift

__all__ = [
    "Decision",
    "FieldCtx",
    "FieldElem",
    "Hypergraph",
    "Mode",
    "Strategy",
    "Verdict",
    "Witness",
    "choose_strategy",
    "complete_hypergraph",
    "count_complete",
    "decide",
    "decide_perfect_matching",
    "enumerate_perfect_matchings",
    "enumerate_spanning_hypertrees",
    "field_new",
    "is_connected",
    "is_spanning_hypertree",
    "parse",
    "replay_witness",
    "serialize",
    "smallest_prime_geq",
    "thomassen_lift",
    "zstar_exact",
]
