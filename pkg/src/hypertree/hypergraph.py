"""k-uniform hypergraphs (k in {2, 3}): storage, file format, connectivity.

Vertices are 1-based everywhere a user can see them.  Edges are kept as an
``(M, k)`` integer array, each row sorted ascending and the rows sorted
lexicographically with duplicates removed, so edge indices are canonical
for a given edge set.  An edge subset is a sorted tuple of such indices.
"""

from __future__ import annotations

import hashlib
import logging
from collections.abc import Iterable, Sequence
from functools import cached_property
from math import comb

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    InstanceSyntaxError,
    RepeatedVertexInEdge,
    UniformityMismatch,
    UnsupportedUniformity,
    VertexOutOfRange,
)

log = logging.getLogger(__name__)

SUPPORTED_K = (2, 3)

EdgeSubset = tuple[int, ...]


class Hypergraph:
    """Immutable k-uniform hypergraph on vertices ``1..num_vertices``."""

    def __init__(self, k: int, num_vertices: int, edges: Iterable[Sequence[int]] | np.ndarray = ()):
        if k not in SUPPORTED_K:
            raise UnsupportedUniformity(f"uniformity {k} not supported (only 2 or 3)")
        if num_vertices < 1:
            raise ValueError("a hypergraph needs at least one vertex")
        arr = edges if isinstance(edges, np.ndarray) else np.array([tuple(e) for e in edges], dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, k), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != k:
            raise UniformityMismatch(f"every edge must have exactly {k} vertices")
        if arr.size and (arr.min() < 1 or arr.max() > num_vertices):
            bad = arr[(arr < 1).any(axis=1) | (arr > num_vertices).any(axis=1)][0]
            raise VertexOutOfRange(f"edge {tuple(int(v) for v in bad)} leaves [1, {num_vertices}]")
        arr = np.sort(arr.astype(np.int32, copy=False), axis=1)
        if arr.size:
            repeated = (np.diff(arr, axis=1) == 0).any(axis=1)
            if repeated.any():
                bad = arr[repeated][0]
                raise RepeatedVertexInEdge(f"edge {tuple(int(v) for v in bad)} repeats a vertex")
        before = arr.shape[0]
        if before > 1:
            arr = _unique_rows(arr, num_vertices)
        self.duplicates_dropped = before - arr.shape[0]
        arr.flags.writeable = False
        self._k = k
        self._n = int(num_vertices)
        self._edges = arr

    @property
    def k(self) -> int:
        return self._k

    @property
    def num_vertices(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return self._edges.shape[0]

    @property
    def edge_array(self) -> np.ndarray:
        """Read-only ``(M, k)`` int32 array of 1-based vertex labels."""
        return self._edges

    @cached_property
    def edge_array0(self) -> np.ndarray:
        """:attr:`edge_array` shifted to 0-based labels."""
        arr = self._edges - 1
        arr.flags.writeable = False
        return arr

    @cached_property
    def edges(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self._edges]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def index_of(self, edge: Sequence[int]) -> int:
        """Position of ``edge`` (any vertex order) in the edge list."""
        key = tuple(sorted(int(v) for v in edge))
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{key} is not an edge") from None

    def subset(self, edges: Iterable[Sequence[int]]) -> EdgeSubset:
        """Edge subset given by vertex tuples."""
        return tuple(sorted(self.index_of(e) for e in edges))

    @property
    def tree_size(self) -> int | None:
        """Edge count n of any spanning hypertree, or None if N != (k-1)n + 1."""
        n, rem = divmod(self._n - 1, self._k - 1)
        return None if rem else n

    @cached_property
    def digest(self) -> str:
        """SHA-256 over the canonical binary form (header + little-endian edges)."""
        h = hashlib.sha256(f"shg {self._k} {self._n} {self.num_edges}\n".encode())
        h.update(np.ascontiguousarray(self._edges, dtype="<i4").view("<u4"))
        return h.hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self._k, self._n) == (other._k, other._n) and np.array_equal(self._edges, other._edges)

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"Hypergraph(k={self._k}, N={self._n}, M={self.num_edges})"


def _unique_rows(arr: np.ndarray, num_vertices: int) -> np.ndarray:
    # rows encoded as base-(N+1) integers; lexicographic order is preserved
    base = num_vertices + 1
    if base ** arr.shape[1] < 2**62:
        code = np.zeros(arr.shape[0], dtype=np.int64)
        for col in range(arr.shape[1]):
            code = code * base + arr[:, col].astype(np.int64)
        if (code[1:] > code[:-1]).all():
            return arr
        _, first = np.unique(code, return_index=True)
        return arr[first]
    return np.unique(arr, axis=0)


# -- construction and I/O ---------------------------------------------------


def complete_hypergraph(num_vertices: int, k: int) -> Hypergraph:
    """All C(N, k) k-subsets of [N]."""
    if k not in SUPPORTED_K:
        raise UnsupportedUniformity(f"uniformity {k} not supported (only 2 or 3)")
    if num_vertices < k:
        raise ValueError(f"need N >= k, got N={num_vertices}, k={k}")
    n = num_vertices
    if k == 2:
        a, b = np.triu_indices(n, 1)
        edges = np.stack([a + 1, b + 1], axis=1)
    else:
        blocks = []
        for i in range(n - 2):
            a, b = np.triu_indices(n - i - 1, 1)
            block = np.empty((a.size, 3), dtype=np.int64)
            block[:, 0] = i + 1
            block[:, 1] = a + i + 2
            block[:, 2] = b + i + 2
            blocks.append(block)
        edges = np.concatenate(blocks)
    assert edges.shape[0] == comb(n, k)
    return Hypergraph(k, n, edges)


def parse(text: str | bytes) -> Hypergraph:
    """Read the ``shg`` instance format.

    ``#`` starts a comment line; blank lines are skipped.  The header is
    ``shg <k> <N> <M>`` followed by exactly M lines ``e v1 .. vk``.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceSyntaxError(f"not UTF-8 text ({exc.reason})") from None
    header = None
    edges: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if tokens[0] != "shg" or len(tokens) != 4:
                raise InstanceSyntaxError("expected header 'shg <k> <N> <M>'", lineno)
            k, n, m = (_int(t, lineno) for t in tokens[1:])
            if k not in SUPPORTED_K:
                raise UnsupportedUniformity(f"uniformity {k} not supported (only 2 or 3)", lineno)
            if n < 1 or m < 0:
                raise InstanceSyntaxError("need N >= 1 and M >= 0", lineno)
            header = (k, n, m)
            continue
        k, n, m = header
        if tokens[0] != "e":
            raise InstanceSyntaxError(f"unexpected record {tokens[0]!r}", lineno)
        vs = tuple(_int(t, lineno) for t in tokens[1:])
        if len(vs) != k:
            raise UniformityMismatch(f"edge has {len(vs)} vertices, header says {k}", lineno)
        for v in vs:
            if not 1 <= v <= n:
                raise VertexOutOfRange(f"vertex {v} outside [1, {n}]", lineno)
        if len(set(vs)) != k:
            raise RepeatedVertexInEdge(f"edge {vs} repeats a vertex", lineno)
        if len(edges) == m:
            raise InstanceSyntaxError(f"more than the {m} edges announced", lineno)
        edges.append(vs)
    if header is None:
        raise InstanceSyntaxError("missing 'shg' header")
    k, n, m = header
    if len(edges) != m:
        raise InstanceSyntaxError(f"header announces {m} edges, found {len(edges)}")
    graph = Hypergraph(k, n, edges)
    if graph.duplicates_dropped:
        log.warning("dropped %d duplicate edge(s)", graph.duplicates_dropped)
    return graph


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceSyntaxError(f"expected an integer, got {token!r}", lineno) from None


def serialize(graph: Hypergraph) -> str:
    lines = [f"shg {graph.k} {graph.num_vertices} {graph.num_edges}"]
    lines.extend("e " + " ".join(map(str, e)) for e in graph.edges)
    return "\n".join(lines) + "\n"


# -- connectivity -----------------------------------------------------------


def is_connected(graph: Hypergraph) -> bool:
    """Whether every vertex lies in one component of the incidence graph."""
    if graph.num_vertices == 1:
        return True
    if graph.num_edges == 0:
        return False
    if graph.num_edges <= 2000:
        return _connected_union_find(graph)
    return _connected_csgraph(graph)


def _connected_union_find(graph: Hypergraph) -> bool:
    parent = list(range(graph.num_vertices + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = graph.num_vertices
    for e in graph.edges:
        r0 = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != r0:
                parent[r] = r0
                components -= 1
    return components == 1


def _connected_csgraph(graph: Hypergraph, chunk: int = 1 << 16) -> bool:
    # contract components chunk by chunk; dense instances usually finish on the first chunk
    e = graph.edge_array0
    k = graph.k
    label = np.arange(graph.num_vertices)
    count = graph.num_vertices
    for start in range(0, e.shape[0], chunk):
        block = label[e[start : start + chunk]]
        block = block[(block[:, 1:] != block[:, :1]).any(axis=1)]
        if block.shape[0] == 0:
            continue
        # a star inside each edge spans the same components
        src = np.repeat(block[:, 0], k - 1)
        dst = block[:, 1:].ravel()
        adj = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(count, count))
        count, sub = connected_components(adj, directed=False)
        if count == 1:
            return True
        label = sub[label]
    return count == 1


def is_spanning_hypertree(graph: Hypergraph, subset: Iterable[int]) -> bool:
    """Whether the edges ``subset`` form a spanning hypertree of ``graph``.

    Tree criterion on the incidence graph: N + |S| nodes, k|S| incidences,
    connected and with k|S| = N + |S| - 1.
    """
    idx = list(subset)
    if len(set(idx)) != len(idx):
        raise ValueError("edge subset repeats an index")
    m = graph.num_edges
    for i in idx:
        if not 0 <= i < m:
            raise IndexError(f"edge index {i} outside [0, {m})")
    n, k, s = graph.num_vertices, graph.k, len(idx)
    if k * s != n + s - 1:
        return False
    # vertex nodes 1..n, edge nodes n+1..n+s; with the count fixed, a tree is a forest
    parent = list(range(n + s + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = graph.edge_array
    for pos, i in enumerate(idx):
        node = n + 1 + pos
        for v in edges[i]:
            a, b = find(int(v)), find(node)
            if a == b:
                return False
            parent[a] = b
    return True
