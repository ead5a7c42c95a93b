"""The sign of a spanning hypertree of a 3-uniform hypergraph.

Two independent constructions are provided and must agree:

* :func:`sign_exterior` roots the tree, orders each edge as (tip, j, k)
  with eps(tip, j, k) = +1, and takes the parity of the word
  (root, j_1, k_1, ..., j_n, k_n) read as a permutation of [N].
* :func:`sign_conjugation` multiplies the cyclic rotations of the edges
  into a single N-cycle and takes the parity of the permutation
  conjugating the standard cycle (1 2 ... N) onto it.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import IndexOutOfRange, NotAHypertree, NotAnNCycle, UnsupportedUniformity
from .hypergraph import Hypergraph, is_spanning_hypertree
from .skewmat import epsilon_tensor


@dataclass(frozen=True)
class OrientedEdge:
    index: int
    tip: int
    tails: tuple[int, int]


@dataclass(frozen=True)
class RootedOrientation:
    root: int
    edges: tuple[OrientedEdge, ...]


def permutation_parity(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``1..n`` given as its one-line word."""
    n = len(perm)
    seen = [False] * (n + 1)
    sign = 1
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x - 1]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _require_tree(graph: Hypergraph, tree: Sequence[int]) -> None:
    if graph.k != 3:
        raise UnsupportedUniformity(f"hypertree signs are defined for k=3, got k={graph.k}")
    if not is_spanning_hypertree(graph, tree):
        raise NotAHypertree(f"edges {tuple(tree)} do not form a spanning hypertree")


def orient(graph: Hypergraph, tree: Sequence[int], root: int) -> RootedOrientation:
    """Orient every edge of ``tree`` towards ``root``."""
    _require_tree(graph, tree)
    n = graph.num_vertices
    if not 1 <= root <= n:
        raise IndexOutOfRange(f"root {root} outside [1, {n}]")
    members = [graph.edges[i] for i in tree]
    incident: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for pos, e in enumerate(members):
        for v in e:
            incident[v].append(pos)

    # BFS over the incidence tree; an edge is entered through its tip
    tip: list[int | None] = [None] * len(members)
    reached = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for pos in incident[v]:
            if tip[pos] is not None:
                continue
            tip[pos] = v
            for u in members[pos]:
                if u not in reached:
                    reached.add(u)
                    queue.append(u)

    oriented = []
    for pos, e in enumerate(members):
        t = tip[pos]
        j, k = (u for u in e if u != t)
        if epsilon_tensor(t, j, k) < 0:
            j, k = k, j
        oriented.append(OrientedEdge(tree[pos], t, (j, k)))
    return RootedOrientation(root, tuple(oriented))


def sign_exterior(graph: Hypergraph, tree: Sequence[int], root: int = 1) -> int:
    """Sign of e(root) ^ (e(j_a) ^ e(k_a) over edges) against e(1) ^ ... ^ e(N)."""
    orientation = orient(graph, tree, root)
    word = [root]
    for edge in orientation.edges:
        word.extend(edge.tails)
    return permutation_parity(word)


def rotation_product(num_vertices: int, edges: Sequence[tuple[int, ...]]) -> list[int]:
    """One-line word of tau_{A_1} ... tau_{A_n}, rightmost factor applied first.

    tau_A sends each element of A to the next larger one in A and the
    largest back to the smallest.
    """
    image = list(range(num_vertices + 1))
    for edge in reversed(edges):
        s = sorted(edge)
        rot = {s[i]: s[(i + 1) % len(s)] for i in range(len(s))}
        image = [rot.get(x, x) for x in image]
    return image[1:]


def conjugating_permutation(cycle_word: Sequence[int], start: int = 1) -> list[int]:
    """sigma with tau = sigma (1 2 ... N) sigma^{-1}, reading tau's cycle from ``start``.

    Raises NotAnNCycle unless ``cycle_word`` is a single cycle through all N points.
    """
    n = len(cycle_word)
    sigma = [start]
    x = cycle_word[start - 1]
    while x != start:
        sigma.append(x)
        if len(sigma) > n:
            break
        x = cycle_word[x - 1]
    if len(sigma) != n:
        raise NotAnNCycle(f"rotation product is not a single {n}-cycle")
    return sigma


def sign_conjugation(graph: Hypergraph, tree: Sequence[int], order: Sequence[int] | None = None) -> int:
    """Sign via conjugation of the rotation product onto the standard N-cycle.

    ``order`` optionally lists the edges of ``tree`` in the order the
    rotations are multiplied; the result does not depend on it.
    """
    if graph.k != 3:
        raise UnsupportedUniformity(f"hypertree signs are defined for k=3, got k={graph.k}")
    factors = list(tree) if order is None else list(order)
    if sorted(factors) != sorted(tree):
        raise ValueError("order must be a permutation of the tree's edges")
    if graph.tree_size is None or len(factors) != graph.tree_size:
        raise NotAnNCycle(f"{len(factors)} edges cannot form a spanning hypertree on {graph.num_vertices} vertices")
    word = rotation_product(graph.num_vertices, [graph.edges[i] for i in factors])
    return permutation_parity(conjugating_permutation(word))
