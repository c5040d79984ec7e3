"""Sparse Boolean/weighted adjacency matrices and structural graph routines.

Row ``i`` of a matrix lists the *sources* of the edges entering vertex ``i``:
entry ``(i, j)`` is set exactly when the graph has an edge ``j -> i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

IndexSet = tuple[int, ...]

_EMPTY = np.zeros(0, dtype=np.int64)
_EMPTY.setflags(write=False)


def _frozen(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=np.int64)
    if a.size == 0:
        return _EMPTY
    a.setflags(write=False)
    return a


class BoolMatrix:
    """Immutable n x n Boolean matrix stored as sorted in-neighbour rows."""

    __slots__ = ("n", "rows", "_out", "_hash")

    def __init__(self, n: int, rows: Iterable[Sequence[int]]):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        clean = []
        for i, row in enumerate(rows):
            a = np.unique(np.asarray(row, dtype=np.int64))
            if a.size and (a[0] < 0 or a[-1] >= n):
                raise IndexError(f"row {i} has an index outside [0, {n})")
            clean.append(_frozen(a))
        if len(clean) != n:
            raise ValueError(f"expected {n} rows, got {len(clean)}")
        self._set(n, tuple(clean))

    def _set(self, n, rows):
        self.n = n
        self.rows = rows
        self._out = None
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[np.ndarray]) -> "BoolMatrix":
        # rows must already be sorted, unique, in range
        m = cls.__new__(cls)
        m._set(n, tuple(_frozen(r) for r in rows))
        return m

    @classmethod
    def empty(cls, n: int) -> "BoolMatrix":
        return cls._trusted(n, [_EMPTY] * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "BoolMatrix":
        """Build from directed edges ``(u, v)`` meaning ``u -> v``."""
        rows: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"edge ({u}, {v}) outside [0, {n})")
            rows[v].append(u)
        return cls(n, rows)

    @classmethod
    def from_dense(cls, arr) -> "BoolMatrix":
        a = np.asarray(arr)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("dense input must be square")
        return cls._trusted(a.shape[0], [np.flatnonzero(a[i]) for i in range(a.shape[0])])

    def __getitem__(self, key) -> bool:
        i, j = key
        row = self.rows[i]
        k = np.searchsorted(row, j)
        return bool(k < row.size and row[k] == j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.n == other.n and all(
            np.array_equal(a, b) for a, b in zip(self.rows, other.rows)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(r.tobytes() for r in self.rows)))
        return self._hash

    def __repr__(self) -> str:
        return f"BoolMatrix(n={self.n}, edges={edge_count(self)})"

    @property
    def pattern(self) -> "BoolMatrix":
        return self

    def row_values(self, i: int) -> np.ndarray:
        return np.ones(self.rows[i].size)

    def row_sizes(self) -> np.ndarray:
        return np.fromiter((r.size for r in self.rows), dtype=np.int64, count=self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` (``u -> v``) sorted lexicographically."""
        out = [(int(j), i) for i, row in enumerate(self.rows) for j in row]
        out.sort()
        return out

    def self_loops(self) -> list[int]:
        return [i for i in range(self.n) if self[i, i]]

    def out_adjacency(self) -> list[list[int]]:
        """Out-neighbour lists (ascending), built once and cached."""
        if self._out is None:
            out: list[list[int]] = [[] for _ in range(self.n)]
            for i, row in enumerate(self.rows):
                for j in row.tolist():
                    out[j].append(i)
            self._out = out
        return self._out

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix._trusted(self.n, [np.asarray(r, dtype=np.int64) for r in self.out_adjacency()])

    def to_dense(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for i, row in enumerate(self.rows):
            a[i, row] = 1
        return a

    def to_csr(self) -> sp.csr_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.row_sizes(), out=indptr[1:])
        indices = np.concatenate(self.rows) if self.n else _EMPTY
        data = np.ones(indices.size)
        return sp.csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def is_subgraph_of(self, other: "BoolMatrix") -> bool:
        if self.n != other.n:
            return False
        return all(
            np.isin(a, b, assume_unique=True).all() for a, b in zip(self.rows, other.rows)
        )


class WeightedMatrix:
    """Immutable matrix with strictly positive entries on a sparse pattern.

    ``weights[i][k]`` is the weight of the edge ``rows[i][k] -> i``.
    """

    __slots__ = ("n", "rows", "weights", "_pattern")

    def __init__(self, n: int, rows: Iterable[Sequence[int]], weights: Iterable[Sequence[float]]):
        n = int(n)
        rs, ws = [], []
        for i, (row, w) in enumerate(zip(rows, weights, strict=True)):
            a = np.asarray(row, dtype=np.int64)
            wa = np.asarray(w, dtype=float)
            if a.shape != wa.shape:
                raise ValueError(f"row {i}: index/weight length mismatch")
            if wa.size and not np.all(wa > 0):
                raise ValueError(f"row {i}: weights must be strictly positive")
            order = np.argsort(a, kind="stable")
            a, wa = a[order], wa[order]
            if a.size and (np.any(np.diff(a) == 0)):
                raise ValueError(f"row {i}: duplicate entries")
            if a.size and (a[0] < 0 or a[-1] >= n):
                raise IndexError(f"row {i} has an index outside [0, {n})")
            wa.setflags(write=False)
            rs.append(_frozen(a))
            ws.append(wa)
        if len(rs) != n:
            raise ValueError(f"expected {n} rows, got {len(rs)}")
        self.n = n
        self.rows = tuple(rs)
        self.weights = tuple(ws)
        self._pattern = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]]) -> "WeightedMatrix":
        rows: list[dict[int, float]] = [{} for _ in range(n)]
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"edge ({u}, {v}) outside [0, {n})")
            rows[v][u] = float(w)
        return cls(n, [list(r) for r in rows], [list(r.values()) for r in rows])

    @classmethod
    def uniform(cls, A: BoolMatrix, weight: float = 1.0) -> "WeightedMatrix":
        return cls(A.n, A.rows, [np.full(r.size, weight) for r in A.rows])

    @property
    def pattern(self) -> BoolMatrix:
        if self._pattern is None:
            self._pattern = BoolMatrix._trusted(self.n, self.rows)
        return self._pattern

    def row_values(self, i: int) -> np.ndarray:
        return self.weights[i]

    def row_sizes(self) -> np.ndarray:
        return self.pattern.row_sizes()

    def edges(self) -> list[tuple[int, int, float]]:
        out = [
            (int(j), i, float(w))
            for i, (row, ws) in enumerate(zip(self.rows, self.weights))
            for j, w in zip(row, ws)
        ]
        out.sort()
        return out

    def weight(self, i: int, j: int) -> float:
        row = self.rows[i]
        k = np.searchsorted(row, j)
        if k < row.size and row[k] == j:
            return float(self.weights[i][k])
        return 0.0

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, (row, w) in enumerate(zip(self.rows, self.weights)):
            a[i, row] = w
        return a

    def to_csr(self) -> sp.csr_matrix:
        csr = self.pattern.to_csr()
        if self.n:
            csr.data = np.concatenate(self.weights)
        return csr

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedMatrix):
            return NotImplemented
        return self.n == other.n and all(
            np.array_equal(a, b) and np.array_equal(x, y)
            for a, b, x, y in zip(self.rows, other.rows, self.weights, other.weights)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"WeightedMatrix(n={self.n}, edges={edge_count(self.pattern)})"


@dataclass(frozen=True)
class FrobeniusForm:
    """Permutation to block upper triangular form with irreducible blocks.

    ``order[p]`` is the original index placed at position ``p``.  Blocks are
    listed in position order; an edge ``j -> i`` always has ``i`` in the same
    block as ``j`` or in an earlier one, so sink components come first.
    """

    order: IndexSet
    blocks: tuple[IndexSet, ...]

    @property
    def q(self) -> int:
        return len(self.blocks)

    def block_index(self, n: int | None = None) -> np.ndarray:
        n = len(self.order) if n is None else n
        out = np.empty(n, dtype=np.int64)
        for b, blk in enumerate(self.blocks):
            out[list(blk)] = b
        return out

    def position(self) -> np.ndarray:
        pos = np.empty(len(self.order), dtype=np.int64)
        pos[list(self.order)] = np.arange(len(self.order))
        return pos


def edge_count(M) -> int:
    return int(sum(r.size for r in M.rows))


def is_acyclic(M) -> bool:
    """Structural cycle test (Kahn); self-loops count as cycles."""
    M = M.pattern
    indeg = M.row_sizes().tolist()
    out = M.out_adjacency()
    queue = deque(i for i in range(M.n) if indeg[i] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for w in out[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == M.n


def topological_order(M) -> list[int] | None:
    """Sources-first order of an acyclic graph, or None when a cycle exists."""
    M = M.pattern
    indeg = M.row_sizes().tolist()
    out = M.out_adjacency()
    ready = [i for i in range(M.n) if indeg[i] == 0]
    ready.reverse()
    order = []
    while ready:
        u = ready.pop()
        order.append(u)
        for w in reversed(out[u]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == M.n else None


def strongly_connected_components(M) -> list[IndexSet]:
    """Tarjan's algorithm over out-edges, iterative.

    Components come out in reverse topological order of the condensation
    (a component is emitted after every component it has edges into), which
    is exactly the block order of the Frobenius form.
    """
    M = M.pattern
    n = M.n
    succ = M.out_adjacency()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[IndexSet] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work_v = [root]
        work_i = [0]
        while work_v:
            v = work_v[-1]
            nbrs = succ[v]
            k = work_i[-1]
            if k < len(nbrs):
                work_i[-1] = k + 1
                w = nbrs[k]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work_v.append(w)
                    work_i.append(0)
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work_v.pop()
            work_i.pop()
            if work_v and low[v] < low[work_v[-1]]:
                low[work_v[-1]] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                comps.append(tuple(comp))
    return comps


def frobenius_factorize(M) -> FrobeniusForm:
    blocks = strongly_connected_components(M)
    order = tuple(i for blk in blocks for i in blk)
    return FrobeniusForm(order=order, blocks=tuple(blocks))


def permute(M, order: Sequence[int]):
    """Relabel so that new index ``p`` is old index ``order[p]``."""
    order = np.asarray(order, dtype=np.int64)
    n = M.n
    if order.size != n or not np.array_equal(np.sort(order), np.arange(n)):
        raise ValueError("order must be a permutation of range(n)")
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    rows, weights = [], []
    for old in order:
        new_cols = pos[M.rows[old]]
        srt = np.argsort(new_cols, kind="stable")
        rows.append(new_cols[srt])
        weights.append(M.row_values(old)[srt])
    if isinstance(M, WeightedMatrix):
        return WeightedMatrix(n, rows, weights)
    return BoolMatrix._trusted(n, rows)


def restrict(M, S: Sequence[int]):
    """Principal submatrix on the sorted index set ``S`` (reindexed 0..|S|-1)."""
    S = np.asarray(S, dtype=np.int64)
    if S.size and (S.min() < 0 or S.max() >= M.n):
        raise IndexError("index set has entries outside the matrix")
    if S.size > 1 and np.any(np.diff(S) <= 0):
        raise ValueError("index set must be strictly increasing")
    remap = np.full(M.n, -1, dtype=np.int64)
    remap[S] = np.arange(S.size)
    rows, weights = [], []
    for i in S:
        mapped = remap[M.rows[i]]
        keep = mapped >= 0
        rows.append(mapped[keep])
        if isinstance(M, WeightedMatrix):
            weights.append(M.weights[i][keep])
    if isinstance(M, WeightedMatrix):
        return WeightedMatrix(S.size, rows, weights)
    return BoolMatrix._trusted(S.size, rows)


def reachable_from(M, sources: Iterable[int]) -> list[int]:
    """Vertices reachable from ``sources`` along edges, sources included; sorted."""
    out = M.pattern.out_adjacency()
    seen = set(sources)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in out[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)
