"""Incidence matrices and the generalized hypergraph Laplacians.

``D[p, r]`` marks which ``p``-simplices lie inside which ``r``-simplices
(rows: ``r``-simplices, columns: ``p``-simplices). From these:

* ``L_k`` relates ``k``-simplices through shared neighbours of any
  dimension: the diagonal is ``|neighbours| + 1`` and off-diagonal entries
  count shared neighbours.
* ``cross_block(p, r)`` relates ``p``- and ``r``-simplices: direct
  incidence counts twice, plus shared neighbours of every other dimension.
* ``L_H`` stacks the ``L_k`` on the diagonal and the cross blocks off it.

All matrices are :mod:`scipy.sparse` CSR with ``int64`` entries at unit
weights, so comparisons against hand-computed matrices are exact.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Literal

import numpy as np
import scipy.sparse as sp

from .errors import ArgumentError, PreconditionError
from .hypergraph import SimplexRegistry


def vertex_incidence(registry: SimplexRegistry, k: int | None = None) -> sp.csr_matrix:
    """Binary (simplex x vertex) membership matrix, optionally for one dimension."""
    col = {v: j for j, v in enumerate(registry.vertices)}
    ids = range(len(registry)) if k is None else registry.ids_of_dim(k)
    rows, cols = [], []
    for r, sid in enumerate(ids):
        for v in registry.simplices[sid].vertices:
            rows.append(r)
            cols.append(col[v])
    data = np.ones(len(rows), dtype=np.int64)
    return sp.csr_matrix((data, (rows, cols)), shape=(len(ids), registry.num_vertices))


class LaplacianBuilder:
    """Caches incidence matrices of one registry and derives Laplacians from them."""

    def __init__(self, registry: SimplexRegistry):
        self.registry = registry
        self._incidence: dict[tuple[int, int], sp.csr_matrix] = {}

    @cached_property
    def _members(self) -> list[sp.csr_matrix]:
        return [vertex_incidence(self.registry, k) for k in range(self.registry.n + 1)]

    def incidence(self, p: int, r: int) -> sp.csr_matrix:
        n = self.registry.n
        if not 0 <= p < r <= n:
            raise ArgumentError(f"need 0 <= p < r <= {n}, got p={p}, r={r}")
        key = (p, r)
        if key not in self._incidence:
            mp, mr = self._members[p], self._members[r]
            if mp.shape[0] == 0 or mr.shape[0] == 0:
                m = sp.csr_matrix((mr.shape[0], mp.shape[0]), dtype=np.int64)
            else:
                overlap = (mr @ mp.T).tocsr()
                # sigma^p is inside sigma^r iff they share all p + 1 vertices
                overlap.data = (overlap.data == p + 1).astype(np.int64)
                overlap.eliminate_zeros()
                m = overlap
            self._incidence[key] = m
        return self._incidence[key]

    def _between(self, a: int, b: int) -> sp.csr_matrix:
        """Incidence oriented as (a-simplices x b-simplices) for a != b."""
        return self.incidence(b, a) if b < a else self.incidence(a, b).T.tocsr()

    def weights(self, k: int) -> np.ndarray:
        return np.array([s.weight for s in self.registry.of_dim(k)], dtype=float)

    def lk(self, k: int, weighted: bool = False, mediators: set[int] | None = None) -> sp.csr_matrix:
        n = self.registry.n
        if not 0 <= k <= n:
            raise ArgumentError(f"k={k} outside 0..{n}")
        size = self.registry.count(k)
        dtype = float if weighted else np.int64
        out = sp.identity(size, dtype=dtype, format="csr")
        for l in range(n + 1):
            if l == k or (mediators is not None and l not in mediators):
                continue
            d = self._between(k, l)  # k-simplices x l-simplices
            if d.nnz == 0:
                continue
            if weighted:
                term = sp.diags(1.0 / self.weights(k)) @ d @ sp.diags(self.weights(l)) @ d.T
            else:
                term = d @ d.T
            out = out + term
        return out.tocsr()

    def cross_block(self, p: int, r: int) -> sp.csr_matrix:
        n = self.registry.n
        if not 0 <= p < r <= n:
            raise ArgumentError(f"need 0 <= p < r <= {n}, got p={p}, r={r}")
        out = 2 * self.incidence(p, r)
        for q in range(n + 1):
            if q in (p, r):
                continue
            # q-simplices adjacent to both: (r x q) @ (q x p)
            term = self._between(r, q) @ self._between(q, p)
            if term.nnz:
                out = out + term
        return out.tocsr()

    def lh(self) -> sp.csr_matrix:
        n = self.registry.n
        blocks: list[list[sp.csr_matrix | None]] = [[None] * (n + 1) for _ in range(n + 1)]
        for k in range(n + 1):
            blocks[k][k] = self.lk(k)
        for p in range(n + 1):
            for r in range(p + 1, n + 1):
                c = self.cross_block(p, r)
                blocks[r][p] = c
                blocks[p][r] = c.T
        return sp.bmat(blocks, format="csr", dtype=np.int64)

    def adjacency(self) -> sp.csr_matrix:
        """Symmetric proper-subset adjacency over all simplices (dimension-major)."""
        n = self.registry.n
        blocks: list[list[sp.csr_matrix | None]] = [[None] * (n + 1) for _ in range(n + 1)]
        for k in range(n + 1):
            blocks[k][k] = sp.csr_matrix((self.registry.count(k),) * 2, dtype=np.int64)
        for p in range(n + 1):
            for r in range(p + 1, n + 1):
                d = self.incidence(p, r)
                blocks[r][p] = d
                blocks[p][r] = d.T
        return sp.bmat(blocks, format="csr", dtype=np.int64)


def build_incidence(registry: SimplexRegistry, p: int, r: int) -> sp.csr_matrix:
    return LaplacianBuilder(registry).incidence(p, r)


def build_lk(registry: SimplexRegistry, k: int, weighted: bool = False) -> sp.csr_matrix:
    """Laplacian between ``k``-simplices through simplices of every other dimension.

    With ``weighted=True`` each mediating term is ``W_k^-1 D^T W_l D``
    (float entries); otherwise all weights are one and entries are exact
    integers.
    """
    return LaplacianBuilder(registry).lk(k, weighted=weighted)


def build_cross_block(registry: SimplexRegistry, p: int, r: int) -> sp.csr_matrix:
    return LaplacianBuilder(registry).cross_block(p, r)


def assemble_lh(registry: SimplexRegistry) -> sp.csr_matrix:
    return LaplacianBuilder(registry).lh()


def adjacency_matrix(registry: SimplexRegistry) -> sp.csr_matrix:
    return LaplacianBuilder(registry).adjacency()


# -- classical simplicial Laplacians ---------------------------------------


def missing_faces(registry: SimplexRegistry, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """``(simplex, face)`` pairs where a ``(k-1)``-face of a ``k``-simplex is absent."""
    out = []
    if k < 1:
        return out
    for s in registry.of_dim(k):
        for face in combinations(s.vertices, k):
            if face not in registry:
                out.append((s.vertices, face))
    return out


def build_updown(
    registry: SimplexRegistry, i: int, direction: Literal["up", "down", "both"] = "both"
) -> sp.csr_matrix:
    """Weighted up/down/both Laplacian of dimension ``i`` on a simplicial complex.

    ``up = W_i^-1 D_i^T W_{i+1} D_i`` and ``down = D_{i-1} W_{i-1}^-1 D_{i-1}^T W_i``.
    Faces needed by the requested direction must all be present.
    """
    if direction not in ("up", "down", "both"):
        raise ArgumentError(f"unknown direction {direction!r}")
    n = registry.n
    if not 0 <= i <= n:
        raise ArgumentError(f"i={i} outside 0..{n}")
    builder = LaplacianBuilder(registry)
    size = registry.count(i)
    up = down = sp.csr_matrix((size, size), dtype=float)
    if direction in ("up", "both") and i < n:
        gaps = missing_faces(registry, i + 1)
        if gaps:
            raise PreconditionError(f"not closed under faces in dimension {i}: {gaps[0][0]} lacks {gaps[0][1]}")
        d = builder.incidence(i, i + 1)
        up = sp.diags(1.0 / builder.weights(i)) @ d.T @ sp.diags(builder.weights(i + 1)) @ d
    if direction in ("down", "both") and i > 0:
        gaps = missing_faces(registry, i)
        if gaps:
            raise PreconditionError(f"not closed under faces in dimension {i - 1}: {gaps[0][0]} lacks {gaps[0][1]}")
        d = builder.incidence(i - 1, i)
        down = d @ sp.diags(1.0 / builder.weights(i - 1)) @ d.T @ sp.diags(builder.weights(i))
    return (up + down).tocsr()


# -- naive set-counting definitions (test oracle) ---------------------------


def naive_lh(registry: SimplexRegistry) -> np.ndarray:
    """Dense ``L_H`` from explicit neighbour-set counting, O(N^2) pairs."""
    verts = [frozenset(s.vertices) for s in registry.simplices]
    dims = registry.dims()
    size = len(verts)
    nbrs = [{j for j in range(size) if verts[i] < verts[j] or verts[j] < verts[i]} for i in range(size)]
    out = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        out[i, i] = len(nbrs[i]) + 1
        for j in range(i + 1, size):
            shared = nbrs[i] & nbrs[j]
            if dims[i] == dims[j]:
                val = len(shared)
            else:
                direct = 2 if j in nbrs[i] else 0
                val = direct + sum(1 for q in shared if dims[q] not in (dims[i], dims[j]))
            out[i, j] = out[j, i] = val
    return out


def naive_incidence(registry: SimplexRegistry, p: int, r: int) -> np.ndarray:
    rows = registry.of_dim(r)
    cols = registry.of_dim(p)
    return np.array(
        [[int(set(c.vertices) < set(s.vertices)) for c in cols] for s in rows], dtype=np.int64
    ).reshape(len(rows), len(cols))


# -- text export ------------------------------------------------------------


def format_dense(matrix, labels: list[str] | None = None) -> str:
    """Whitespace-separated grid, optionally with a header row and row labels."""
    m = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
    lines = []
    if labels is not None:
        lines.append("\t".join(["#"] + labels))
    for i, row in enumerate(m):
        cells = [_num(x) for x in row]
        if labels is not None:
            cells = [labels[i]] + cells
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def format_triplets(matrix) -> str:
    """Sparse coordinate text: a ``rows cols nnz`` header then ``i j value`` lines (0-based)."""
    m = sp.coo_matrix(matrix)
    order = np.lexsort((m.col, m.row))
    lines = [f"{m.shape[0]} {m.shape[1]} {m.nnz}"]
    lines += [f"{m.row[k]} {m.col[k]} {_num(m.data[k])}" for k in order]
    return "\n".join(lines) + "\n"


def _num(x) -> str:
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))
