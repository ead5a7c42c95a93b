"""Matrices over GF(q): the skew matrix Lambda, Laplacians, det and Pfaffian.

Entries are canonical residues held in numpy arrays (``ctx.dtype``).
Elimination is row-vectorised, so one pivot step costs a handful of
O(D^2) array operations and a full determinant O(D^3) word operations.
"""

from __future__ import annotations

import hashlib
from collections.abc import Mapping, Sequence

import numpy as np

from .errors import ContextMismatch, IndexOutOfRange, NotSkew, UnsupportedUniformity
from .field import FieldCtx, FieldElem, inv_array
from .hypergraph import Hypergraph


def epsilon_tensor(i: int, j: int, k: int) -> int:
    """Totally antisymmetric symbol: +1 on cyclic rotations of an increasing triple."""
    if i == j or j == k or i == k:
        return 0
    # parity of the permutation sorting (i, j, k)
    inversions = (i > j) + (i > k) + (j > k)
    return -1 if inversions % 2 else 1


class WeightAssignment:
    """Field weights aligned with the edge list of a hypergraph.

    Edges never given a weight carry 0, which is the same as the edge
    being absent from the instance.
    """

    def __init__(self, graph: Hypergraph, ctx: FieldCtx, values, canonical: bool = False):
        # canonical=True: caller guarantees residues in [0, q) of ctx.dtype
        values = values if canonical else ctx.asarray(values)
        if values.shape != (graph.num_edges,):
            raise ValueError(f"expected {graph.num_edges} weights, got shape {values.shape}")
        values.flags.writeable = False
        self.graph = graph
        self.ctx = ctx
        self.values = values

    @classmethod
    def from_mapping(cls, graph: Hypergraph, ctx: FieldCtx, mapping: Mapping) -> WeightAssignment:
        values = np.zeros(graph.num_edges, dtype=ctx.dtype)
        for edge, w in mapping.items():
            try:
                i = graph.index_of(edge)
            except KeyError:
                raise ContextMismatch(f"weight given for {tuple(edge)}, which is not an edge") from None
            if isinstance(w, FieldElem) and w.ctx != ctx:
                raise ContextMismatch(f"weight for {tuple(edge)} lives in GF({w.ctx.q}), not GF({ctx.q})")
            values[i] = int(w) % ctx.q
        return cls(graph, ctx, values)

    @classmethod
    def constant(cls, graph: Hypergraph, ctx: FieldCtx, value: int = 1) -> WeightAssignment:
        return cls(graph, ctx, np.full(graph.num_edges, value % ctx.q, dtype=ctx.dtype))

    def __getitem__(self, edge: Sequence[int]) -> FieldElem:
        return FieldElem(int(self.values[self.graph.index_of(edge)]), self.ctx)

    def __len__(self):
        return self.graph.num_edges

    def items(self):
        for e, v in zip(self.graph.edges, self.values):
            yield e, FieldElem(int(v), self.ctx)

    def digest(self) -> str:
        """SHA-256 binding the instance digest, q, and the residues in edge order.

        The instance digest already fixes the canonical edge list, so this
        identifies the full (edge -> residue) map.
        """
        h = hashlib.sha256(f"{self.graph.digest}\nGF({self.ctx.q})\n".encode())
        # residues are below 2^63, so the signed little-endian layout is the u64 layout
        h.update(np.ascontiguousarray(self.values, dtype="<i8").view("<u8"))
        return h.hexdigest()


class SquareMatrix:
    """Dense D x D matrix over GF(q).

    ``labels`` records the 1-based row/column names, so a principal minor
    still knows which vertices it is indexed by.
    """

    def __init__(self, entries, ctx: FieldCtx, labels: Sequence[int] | None = None):
        a = ctx.asarray(entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"matrix must be square, got shape {a.shape}")
        a.flags.writeable = False
        self.entries = a
        self.ctx = ctx
        self.labels = tuple(labels) if labels is not None else tuple(range(1, a.shape[0] + 1))
        if len(self.labels) != a.shape[0]:
            raise ValueError("one label per row required")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij) -> int:
        """Entry by 0-based position, as a plain residue."""
        return int(self.entries[ij])

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, q={self.ctx.q})"


class SkewMatrix(SquareMatrix):
    """Square matrix with M^T = -M and zero diagonal."""

    def __init__(self, entries, ctx: FieldCtx, labels: Sequence[int] | None = None):
        super().__init__(entries, ctx, labels)
        _require_skew(self.entries, ctx.q)


def _require_skew(a: np.ndarray, q: int) -> None:
    if a.shape[0] and ((a + a.T) % q != 0).any():
        raise NotSkew("matrix is not skew-symmetric with zero diagonal")


def _check_weights(graph: Hypergraph, w: WeightAssignment, ctx: FieldCtx) -> None:
    if w.ctx != ctx:
        raise ContextMismatch(f"weights live in GF({w.ctx.q}), not GF({ctx.q})")
    if w.graph is not graph and w.graph != graph:
        raise ContextMismatch("weights belong to a different hypergraph")


_LAMBDA_CHUNK = 1 << 18


def _lambda_upper_indices(graph: Hypergraph, e: np.ndarray | None = None):
    """Flat (row*N + col) targets and signs for each edge's three entries."""
    n = graph.num_vertices
    e = graph.edge_array0 if e is None else e
    if n * n >= 2**31:
        e = e.astype(np.int64)
    i, j, k = e[:, 0], e[:, 1], e[:, 2]
    # for i < j < k: eps(i,j,k) = +1, eps(i,k,j) = -1, eps(j,k,i) = +1
    return (i * n + j, 1), (i * n + k, -1), (j * n + k, 1)


def build_lambda(graph: Hypergraph, w: WeightAssignment, ctx: FieldCtx) -> SkewMatrix:
    """Lambda_ij = sum over edges {i, j, m} of eps(i, j, m) * w_{ijm}."""
    if graph.k != 3:
        raise UnsupportedUniformity(f"Lambda needs a 3-uniform hypergraph, got k={graph.k}")
    _check_weights(graph, w, ctx)
    n, q = graph.num_vertices, ctx.q
    upper = np.zeros(n * n, dtype=ctx.dtype)
    edges, values = graph.edge_array0, w.values
    # small blocks keep the index temporaries cache sized
    for start in range(0, graph.num_edges, _LAMBDA_CHUNK):
        block = values[start : start + _LAMBDA_CHUNK]
        for target, sign in _lambda_upper_indices(graph, edges[start : start + _LAMBDA_CHUNK]):
            (np.add if sign > 0 else np.subtract).at(upper, target, block)
    upper = upper.reshape(n, n) % q
    return SkewMatrix((upper - upper.T) % q, ctx)


def build_lambda_batch(graph: Hypergraph, weights: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    """Stack of Lambda matrices, one per row of ``weights`` (shape (B, M))."""
    if graph.k != 3:
        raise UnsupportedUniformity(f"Lambda needs a 3-uniform hypergraph, got k={graph.k}")
    weights = np.asarray(weights, dtype=ctx.dtype)
    b, n, q = weights.shape[0], graph.num_vertices, ctx.q
    if weights.shape != (b, graph.num_edges):
        raise ValueError(f"weights must have shape (B, {graph.num_edges})")
    upper = np.zeros(b * n * n, dtype=ctx.dtype)
    offsets = (np.arange(b, dtype=np.int64) * n * n)[:, None]
    for target, sign in _lambda_upper_indices(graph):
        np.add.at(upper, (offsets + target[None, :]).ravel(), (weights if sign > 0 else -weights).ravel())
    upper = upper.reshape(b, n, n) % q
    return (upper - upper.transpose(0, 2, 1)) % q


def build_laplacian(graph: Hypergraph, w: WeightAssignment, ctx: FieldCtx) -> SquareMatrix:
    """Weighted graph Laplacian: -w_ij off the diagonal, incident sums on it."""
    if graph.k != 2:
        raise UnsupportedUniformity(f"Laplacian needs a graph (k=2), got k={graph.k}")
    _check_weights(graph, w, ctx)
    n, q = graph.num_vertices, ctx.q
    e = graph.edge_array0.astype(np.int64)
    flat = np.zeros(n * n, dtype=ctx.dtype)
    np.add.at(flat, e[:, 0] * n + e[:, 1], -w.values)
    np.add.at(flat, e[:, 1] * n + e[:, 0], -w.values)
    np.add.at(flat, e[:, 0] * (n + 1), w.values)
    np.add.at(flat, e[:, 1] * (n + 1), w.values)
    return SquareMatrix(flat.reshape(n, n) % q, ctx)


def principal_minor(m: SquareMatrix, i0: int) -> SquareMatrix:
    """Delete row and column ``i0`` (1-based)."""
    if not 1 <= i0 <= m.dim:
        raise IndexOutOfRange(f"i0={i0} outside [1, {m.dim}]")
    keep = np.r_[0 : i0 - 1, i0 : m.dim]
    entries = m.entries[np.ix_(keep, keep)]
    labels = m.labels[: i0 - 1] + m.labels[i0:]
    return type(m)(entries, m.ctx, labels)


# -- elimination kernels ----------------------------------------------------


def _det_mod(a: np.ndarray, q: int) -> int:
    a = a.copy()
    d = a.shape[0]
    det = 1
    for k in range(d):
        nz = np.flatnonzero(a[k:, k])
        if nz.size == 0:
            return 0
        p = k + int(nz[0])
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        piv = int(a[k, k])
        det = det * piv % q
        if k + 1 < d:
            f = a[k + 1 :, k] * pow(piv, -1, q) % q
            a[k + 1 :, k + 1 :] = (a[k + 1 :, k + 1 :] - np.outer(f, a[k, k + 1 :]) % q) % q
    return det % q


def _pf_mod(a: np.ndarray, q: int) -> int:
    # congruence by unit-determinant transforms; pivot block [[0, p], [-p, 0]]
    d = a.shape[0]
    if d % 2:
        return 0
    a = a.copy()
    pf = 1
    for k in range(0, d, 2):
        nz = np.flatnonzero(a[k, k + 1 :])
        if nz.size == 0:
            return 0
        j = k + 1 + int(nz[0])
        if j != k + 1:
            a[[k + 1, j]] = a[[j, k + 1]]
            a[:, [k + 1, j]] = a[:, [j, k + 1]]
            pf = -pf
        piv = int(a[k, k + 1])
        pf = pf * piv % q
        if k + 2 < d:
            inv = pow(piv, -1, q)
            c0 = a[k, k + 2 :]
            c1 = a[k + 1, k + 2 :]
            # Schur complement D + C^T B^{-1} C
            u = c1 * inv % q
            v = c0 * inv % q
            a[k + 2 :, k + 2 :] = (a[k + 2 :, k + 2 :] + np.outer(u, c0) % q - np.outer(v, c1) % q) % q
    return pf % q


def det_gf(m: SquareMatrix) -> FieldElem:
    """Exact determinant by Gaussian elimination (first nonzero pivot)."""
    return FieldElem(_det_mod(m.entries, m.ctx.q), m.ctx)


def pfaffian_gf(m: SquareMatrix) -> FieldElem:
    """Exact Pfaffian of a skew matrix; 0 for odd dimension."""
    _require_skew(m.entries, m.ctx.q)
    return FieldElem(_pf_mod(m.entries, m.ctx.q), m.ctx)


def det_gf_batch(stack: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    """Determinants of a (B, D, D) stack of residue matrices."""
    q = ctx.q
    a = np.array(stack, dtype=ctx.dtype, copy=True) % q
    b, d, _ = a.shape
    rows = np.arange(b)
    det = np.ones(b, dtype=ctx.dtype)
    alive = np.ones(b, dtype=bool)
    for k in range(d):
        nonzero = a[:, k:, k] != 0
        has = nonzero.any(axis=1)
        alive &= has
        p = k + np.argmax(nonzero, axis=1)
        swap = p != k
        if swap.any():
            rk = a[rows, k].copy()
            a[rows, k] = a[rows, p]
            a[rows, p] = rk
            det = np.where(swap, (q - det) % q, det)
        piv = np.where(has, a[:, k, k], 1)
        det = det * piv % q
        if k + 1 < d:
            f = a[:, k + 1 :, k] * inv_array(piv, q)[:, None] % q
            a[:, k + 1 :, k + 1 :] = (a[:, k + 1 :, k + 1 :] - f[:, :, None] * a[:, k, None, k + 1 :] % q) % q
    return np.where(alive, det, 0)


# -- exact integer tree counting --------------------------------------------


def _bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free integer determinant."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1] if n else 1


def matrix_tree_count(graph: Hypergraph) -> int:
    """Number of spanning trees of a graph: det L(1) with unit weights, exactly."""
    if graph.k != 2:
        raise UnsupportedUniformity(f"matrix-tree count needs a graph (k=2), got k={graph.k}")
    n = graph.num_vertices
    lap = [[0] * n for _ in range(n)]
    for a, b in graph.edges:
        a, b = a - 1, b - 1
        lap[a][b] -= 1
        lap[b][a] -= 1
        lap[a][a] += 1
        lap[b][b] += 1
    return _bareiss_det([row[1:] for row in lap[1:]])
