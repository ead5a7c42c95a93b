"""Exact brute-force ground truth for desk-scale instances."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import ContextMismatch, MissingWeight, NonIntegerResult, TooLarge, UnsupportedUniformity
from .field import FieldCtx, FieldElem
from .hypergraph import EdgeSubset, Hypergraph
from .signs import sign_exterior
from .skewmat import WeightAssignment

ENUMERATION_GUARD = 10**7
MATCHING_MAX_VERTICES = 16


def enumerate_spanning_hypertrees(graph: Hypergraph, guard: int = ENUMERATION_GUARD) -> list[EdgeSubset]:
    """All spanning hypertrees of ``graph``, as sorted edge-index tuples in lexicographic order.

    Depth-first over edges in index order.  An edge may join the partial
    forest only if its k vertices lie in k distinct components; after
    n = (N - 1)/(k - 1) such steps one component remains, so every leaf of
    the search is a spanning hypertree and nothing else is.
    """
    n = graph.tree_size
    if n is None:
        return []
    m = graph.num_edges
    if comb(m, n) > guard:
        raise TooLarge(f"C({m}, {n}) = {comb(m, n)} subsets exceeds the enumeration guard {guard}")
    if n == 0:
        return [()]
    edges = graph.edges
    k = graph.k
    found: list[EdgeSubset] = []
    chosen: list[int] = []

    def extend(start: int, comp: list[int]) -> None:
        depth = len(chosen)
        if depth == n:
            found.append(tuple(chosen))
            return
        for i in range(start, m - (n - depth) + 1):
            e = edges[i]
            labels = {comp[v] for v in e}
            if len(labels) < k:
                continue
            target = comp[e[0]]
            chosen.append(i)
            extend(i + 1, [target if c in labels else c for c in comp])
            chosen.pop()

    extend(0, list(range(graph.num_vertices + 1)))
    return found


@dataclass
class SignedHypertreePoly:
    """Multilinear polynomial: one monomial per spanning hypertree, coefficient +-1."""

    graph: Hypergraph
    terms: dict[EdgeSubset, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.terms)

    @property
    def support(self) -> list[EdgeSubset]:
        return sorted(self.terms)


def zstar_exact(graph: Hypergraph, guard: int = ENUMERATION_GUARD) -> SignedHypertreePoly:
    if graph.k != 3:
        raise UnsupportedUniformity(f"the signed polynomial is defined for k=3, got k={graph.k}")
    trees = enumerate_spanning_hypertrees(graph, guard)
    return SignedHypertreePoly(graph, {t: sign_exterior(graph, t, 1) for t in trees})


def evaluate_poly(poly: SignedHypertreePoly, w: WeightAssignment | Mapping, ctx: FieldCtx) -> FieldElem:
    """Sum over monomials of sign * product of edge weights, in GF(q)."""
    q = ctx.q
    if isinstance(w, WeightAssignment):
        if w.ctx != ctx:
            raise ContextMismatch(f"weights live in GF({w.ctx.q}), not GF({q})")
        if w.graph != poly.graph:
            raise ContextMismatch("weights belong to a different hypergraph")
        values = [int(v) for v in w.values]
    else:
        values = {}
        edges = poly.graph.edges
        for tree in poly.terms:
            for i in tree:
                if i in values:
                    continue
                e = edges[i]
                if e in w:
                    x = w[e]
                elif tuple(reversed(e)) in w:
                    x = w[tuple(reversed(e))]
                else:
                    raise MissingWeight(f"no weight for edge {e}")
                if isinstance(x, FieldElem) and x.ctx != ctx:
                    raise ContextMismatch(f"weight for {e} lives in GF({x.ctx.q})")
                values[i] = int(x) % q
    total = 0
    for tree, sign in poly.terms.items():
        prod = sign
        for i in tree:
            prod = prod * values[i] % q
        total += prod
    return FieldElem(total % q, ctx)


def count_complete(n: int, k: int) -> int:
    """Spanning hypertrees of the complete k-uniform hypergraph on (k-1)n + 1 vertices.

    ((k-1)n)! / (((k-1)n + 1) n!) * (((k-1)n + 1) / (k-1)!)^n, evaluated in
    exact rationals.
    """
    if n < 0 or k < 2:
        raise ValueError(f"need n >= 0 and k >= 2, got n={n}, k={k}")
    big_n = (k - 1) * n + 1
    value = Fraction(factorial((k - 1) * n), big_n * factorial(n)) * Fraction(big_n, factorial(k - 1)) ** n
    if value.denominator != 1:
        raise NonIntegerResult(f"count for n={n}, k={k} came out as {value}")
    return value.numerator


def enumerate_perfect_matchings(graph: Hypergraph) -> list[EdgeSubset]:
    """Edge subsets of a graph covering every vertex exactly once."""
    if graph.k != 2:
        raise UnsupportedUniformity(f"perfect matchings need a graph (k=2), got k={graph.k}")
    n = graph.num_vertices
    if n > MATCHING_MAX_VERTICES:
        raise TooLarge(f"{n} vertices exceeds the matching enumeration guard {MATCHING_MAX_VERTICES}")
    if n % 2:
        return []
    incident: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for i, (a, b) in enumerate(graph.edges):
        incident[a].append(i)
        incident[b].append(i)
    edges = graph.edges
    found: list[EdgeSubset] = []

    def extend(covered: set[int], chosen: list[int]) -> None:
        v = next((u for u in range(1, n + 1) if u not in covered), None)
        if v is None:
            found.append(tuple(sorted(chosen)))
            return
        for i in incident[v]:
            a, b = edges[i]
            other = b if a == v else a
            if other in covered:
                continue
            covered |= {v, other}
            chosen.append(i)
            extend(covered, chosen)
            chosen.pop()
            covered -= {v, other}

    extend(set(), [])
    return sorted(found)
