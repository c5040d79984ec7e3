"""Brute-force ground truth for small instances.

Nothing here shares code paths with the greedy solver: orders are
enumerated with branch-and-bound over prefixes, and spectral radii come from
dense LAPACK eigenvalues on scipy's strong components.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .graphmat import BoolMatrix

DEFAULT_CAP = 9
DEFAULT_ENUM_LIMIT = 10**6


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimum: float
    witness: Any
    enumerated: int


def dense_spectral_radius(M) -> float:
    """rho(M) as the max over strong components of dense eigenvalue moduli.

    Splitting into irreducible blocks keeps the Perron root simple, so LAPACK
    returns it accurately even when the full matrix is defective.
    """
    D = M.to_dense() if hasattr(M, "to_dense") else np.asarray(M, dtype=float)
    n = D.shape[0]
    if n == 0:
        return 0.0
    _, labels = connected_components(D != 0, directed=True, connection="strong")
    rho = 0.0
    for lab in np.unique(labels):
        idx = np.flatnonzero(labels == lab)
        blk = D[np.ix_(idx, idx)]
        if idx.size == 1:
            rho = max(rho, abs(float(blk[0, 0])))
        elif blk.any():
            rho = max(rho, float(np.abs(np.linalg.eigvals(blk)).max()))
    return rho


def _check_cap(A: BoolMatrix, cap: int) -> None:
    if A.n > cap:
        raise OracleLimitError(f"n={A.n} exceeds the enumeration cap {cap}")


def _in_masks(A: BoolMatrix, with_loops: bool) -> list[int]:
    masks = []
    for i, row in enumerate(A.rows):
        m = 0
        for j in row.tolist():
            if j != i or with_loops:
                m |= 1 << j
        masks.append(m)
    return masks


def forward_edges(A: BoolMatrix, order: Sequence[int]) -> int:
    """Edges ``u -> v`` with ``u`` strictly before ``v`` in ``order``."""
    pos = np.empty(A.n, dtype=np.int64)
    pos[list(order)] = np.arange(A.n)
    return int(sum((pos[row] < pos[i]).sum() for i, row in enumerate(A.rows)))


def backward_in_counts(A: BoolMatrix, order: Sequence[int]) -> np.ndarray:
    """Per vertex: in-edges from itself or from later vertices (what must be cut)."""
    pos = np.empty(A.n, dtype=np.int64)
    pos[list(order)] = np.arange(A.n)
    return np.array([int((pos[row] >= pos[i]).sum()) for i, row in enumerate(A.rows)],
                    dtype=np.int64)


def exact_mas(A: BoolMatrix, cap: int = DEFAULT_CAP) -> OracleResult:
    """Maximum number of forward edges over all vertex orders."""
    _check_cap(A, cap)
    n = A.n
    inm = _in_masks(A, with_loops=False)
    und = [0] * n
    for v in range(n):
        for u in range(n):
            if inm[v] >> u & 1:
                und[v] |= 1 << u
                und[u] |= 1 << v
    full = (1 << n) - 1
    ident = list(range(n))
    best = [forward_edges(A, ident), ident]
    rev = ident[::-1]
    if forward_edges(A, rev) > best[0]:
        best = [forward_edges(A, rev), rev]
    visited = 0

    def bound(placed, kept):
        rest = full & ~placed
        extra = 0
        pairs = 0
        for u in range(n):
            if rest >> u & 1:
                extra += bin(inm[u] & placed).count("1")
                pairs += bin(und[u] & rest).count("1")
        return kept + extra + pairs // 2

    def dfs(placed, kept, prefix):
        nonlocal visited
        visited += 1
        if len(prefix) == n:
            if kept > best[0]:
                best[0], best[1] = kept, list(prefix)
            return
        if bound(placed, kept) <= best[0]:
            return
        for v in range(n):
            if placed >> v & 1:
                continue
            prefix.append(v)
            dfs(placed | 1 << v, kept + bin(inm[v] & placed).count("1"), prefix)
            prefix.pop()

    dfs(0, 0, [])
    return OracleResult(best[0], tuple(best[1]), visited)


def exact_max_mas(A: BoolMatrix, cap: int = DEFAULT_CAP) -> OracleResult:
    """Minimum over vertex orders of the largest per-vertex backward in-degree.

    Self-loops always count as backward.  Exact for max-MAS: any acyclic
    subgraph is the forward set of its topological orders, and keeping every
    forward edge only lowers cut counts.
    """
    _check_cap(A, cap)
    n = A.n
    inm = _in_masks(A, with_loops=True)
    full = (1 << n) - 1
    ident = list(range(n))
    best = [int(backward_in_counts(A, ident).max(initial=0)), ident]
    visited = 0
    # self-loops are cut whatever the order
    floor = max((1 if A[i, i] else 0) for i in range(n)) if n else 0

    def dfs(placed, worst, prefix):
        nonlocal visited
        visited += 1
        if len(prefix) == n:
            if worst < best[0]:
                best[0], best[1] = worst, list(prefix)
            return
        for v in range(n):
            if placed >> v & 1:
                continue
            c = bin(inm[v] & (full & ~placed)).count("1")
            w = max(worst, c)
            if w >= best[0]:
                continue
            prefix.append(v)
            dfs(placed | 1 << v, w, prefix)
            prefix.pop()
            if best[0] <= floor:
                return

    if best[0] > floor:
        dfs(0, 0, [])
    return OracleResult(best[0], tuple(best[1]), visited)


def exact_min_rho(A: BoolMatrix, budgets, untouchable=None,
                  limit: int = DEFAULT_ENUM_LIMIT) -> OracleResult:
    """Minimum spectral radius over every way of cutting <= r_i entries per row.

    Only cut sets of maximal size are evaluated: removing entries never
    increases the spectral radius of a nonnegative matrix.
    """
    n = A.n
    r = [int(budgets)] * n if np.isscalar(budgets) else [int(b) for b in budgets]
    prot = untouchable or [()] * n
    options = []
    size = 1
    for i, row in enumerate(A.rows):
        elig = [int(j) for j in row if j not in set(prot[i])]
        k = min(r[i], len(elig))
        size *= sum(math.comb(len(elig), t) for t in range(k + 1))
        options.append(list(itertools.combinations(elig, k)))
    if size > limit:
        raise OracleLimitError(f"{size} candidate matrices exceed the limit {limit}")

    base = A.to_dense()
    combos = list(itertools.product(*options))
    batch = np.repeat(base[None], len(combos), axis=0)
    for c, combo in enumerate(combos):
        for i, cut in enumerate(combo):
            if cut:
                batch[c, i, list(cut)] = 0.0
    if n == 0:
        return OracleResult(0.0, A, 1)
    approx = np.abs(np.linalg.eigvals(batch)).max(axis=1)
    # Boolean spectra: either 0 or >= 1
    approx[approx < 0.5] = 0.0
    lo = approx.min()
    best_val, best_idx = np.inf, -1
    for c in np.flatnonzero(approx <= lo + 1e-3):
        val = dense_spectral_radius(batch[c])
        if val < best_val:
            best_val, best_idx = val, int(c)
    return OracleResult(best_val, BoolMatrix.from_dense(batch[best_idx]), len(combos))
