"""Max-MAS by bisection over the cut budget, its variants, and MAS approximation."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graphmat import (
    BoolMatrix,
    IndexSet,
    WeightedMatrix,
    edge_count,
    frobenius_factorize,
    is_acyclic,
)
from .greedy import (
    BudgetSpec,
    MinRhoResult,
    SolverConfig,
    SolverInvariantError,
    min_rho_over_ball,
)


class PreconditionViolation(ValueError):
    pass


@dataclass(frozen=True)
class Probe:
    budget: float
    rho: float
    eig_count: int

    @property
    def feasible(self) -> bool:
        return self.rho == 0.0


@dataclass
class MaxMasSolution:
    """Smallest per-vertex budget making ``A`` acyclic, with its witness.

    ``r_star`` is ``None`` and ``G0`` is ``None`` when no budget works (only
    possible with untouchable edges that already form a cycle).
    """

    r_star: float | None
    G0: BoolMatrix | None
    per_vertex_cuts: np.ndarray
    eig_count: int
    wall_time: float
    probes: list[Probe] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.G0 is not None


@dataclass
class Problem1Result:
    feasible: bool
    rho: float
    witness: BoolMatrix | None
    per_vertex_cuts: np.ndarray
    eig_count: int
    wall_time: float


@dataclass
class MasApproximation:
    ordering: tuple[int, ...]
    G_bar: BoolMatrix
    gamma: float
    contains_G0: bool


def cut_counts(A: BoolMatrix, G: BoolMatrix) -> np.ndarray:
    return A.row_sizes() - G.row_sizes()


def cut_weights(W: WeightedMatrix, G: BoolMatrix) -> np.ndarray:
    out = np.zeros(W.n)
    for i, (row, w) in enumerate(zip(W.rows, W.weights)):
        out[i] = w[~np.isin(row, G.rows[i], assume_unique=True)].sum()
    return out


def gamma(A: BoolMatrix, G: BoolMatrix) -> float:
    m = edge_count(A)
    return edge_count(G) / m if m else 1.0


def _untouchable_rows(n: int, untouchable) -> tuple[IndexSet, ...] | None:
    if untouchable is None:
        return None
    if isinstance(untouchable, BoolMatrix):
        return tuple(tuple(int(j) for j in r) for r in untouchable.rows)
    rows = tuple(tuple(sorted(int(j) for j in r)) for r in untouchable)
    if len(rows) != n:
        raise ValueError("untouchable needs one entry per vertex")
    return rows


def _integer_bisection(A: BoolMatrix, r0: int, make_spec, cfg, warm_start: bool):
    """Smallest r in [0, r0] whose min-rho is zero; r0 must be feasible."""
    probes: list[Probe] = []
    results: dict[int, MinRhoResult] = {}
    eig = 0

    def probe(r):
        nonlocal eig
        start = None
        if warm_start:
            below = [s for s in results if s < r and results[s].rho > 0]
            if below:
                # the minimiser for a smaller radius lies inside the larger ball
                start = results[max(below)].X_hat
        res = min_rho_over_ball(A, make_spec(r), cfg, start=start)
        results[r] = res
        eig += res.eig_count
        probes.append(Probe(r, res.rho, res.eig_count))
        return res.rho == 0.0

    lo, hi = 0, r0
    while lo < hi:
        mid = (lo + hi) // 2
        if probe(mid):
            hi = mid
        else:
            lo = mid + 1
    if lo not in results:
        probe(lo)
    return lo, results[lo], probes, eig


def solve_max_mas(A: BoolMatrix, cfg: SolverConfig | None = None, *, untouchable=None,
                  warm_start: bool = True) -> MaxMasSolution:
    """Minimal uniform in-edge cut budget that makes ``A`` acyclic.

    Integer bisection on ``[0, max in-degree]``; each probe minimises the
    spectral radius over the corresponding ball and is feasible iff the
    result is acyclic.  ``untouchable`` (per-row protected sources, or a
    BoolMatrix of protected edges) gives the protected-edge variant.
    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    prot = _untouchable_rows(A.n, untouchable)
    if prot is not None:
        P = BoolMatrix(A.n, prot)
        if not P.is_subgraph_of(A):
            raise PreconditionViolation("untouchable edges must be edges of the graph")
        if not is_acyclic(P):
            return MaxMasSolution(None, None, np.zeros(A.n, dtype=np.int64), 0,
                                  time.perf_counter() - t0)
        r0 = int((A.row_sizes() - P.row_sizes()).max(initial=0))
    else:
        r0 = int(A.row_sizes().max(initial=0))

    if is_acyclic(A):
        return MaxMasSolution(0, A, np.zeros(A.n, dtype=np.int64), 0, time.perf_counter() - t0)

    def make_spec(r):
        return BudgetSpec.uniform(A.n, r, untouchable=prot)

    r_star, res, probes, eig = _integer_bisection(A, r0, make_spec, cfg, warm_start)
    G0 = res.X_hat
    return MaxMasSolution(r_star, G0, cut_counts(A, G0), eig, time.perf_counter() - t0, probes)


def solve_problem1(A: BoolMatrix, budgets: Sequence[int], cfg: SolverConfig | None = None,
                   untouchable=None) -> Problem1Result:
    """Can ``A`` be made acyclic cutting at most ``budgets[i]`` in-edges of each ``i``?"""
    t0 = time.perf_counter()
    spec = BudgetSpec(tuple(int(b) for b in budgets),
                      untouchable=_untouchable_rows(A.n, untouchable))
    res = min_rho_over_ball(A, spec, cfg)
    ok = res.rho == 0.0
    return Problem1Result(ok, res.rho, res.X_hat if ok else None, cut_counts(A, res.X_hat),
                          res.eig_count, time.perf_counter() - t0)


def solve_problem2(W: WeightedMatrix, cfg: SolverConfig | None = None, *, gap: float | None = None,
                   key: str = "product") -> MaxMasSolution:
    """Weighted max-MAS: smallest per-vertex cut weight that makes the graph acyclic.

    Real bisection down to ``gap`` (default ``1e-6`` of the largest row
    weight).  Rows are cut greedily by ``key`` (see ``weighted_row_order``),
    so the result is a heuristic upper bound; ``r_star`` is the largest
    per-vertex cut weight of the returned witness.
    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    A = W.pattern
    totals = np.array([w.sum() for w in W.weights]) if W.n else np.zeros(0)
    if is_acyclic(A):
        return MaxMasSolution(0.0, A, np.zeros(A.n), 0, time.perf_counter() - t0)
    hi = float(totals.max())
    gap = 1e-6 * hi if gap is None else gap
    probes: list[Probe] = []
    eig = 0

    def probe(b):
        nonlocal eig
        res = min_rho_over_ball(A, BudgetSpec.uniform(A.n, b, weights=W, weight_key=key), cfg)
        eig += res.eig_count
        probes.append(Probe(b, res.rho, res.eig_count))
        return res

    best = probe(hi)
    if best.rho != 0.0:
        raise RuntimeError("cutting every edge did not give an acyclic graph")
    hi = float(cut_weights(W, best.X_hat).max())
    lo = 0.0
    while hi - lo > gap:
        mid = 0.5 * (lo + hi)
        res = probe(mid)
        if res.rho == 0.0:
            best = res
            hi = float(cut_weights(W, res.X_hat).max())
        else:
            lo = mid
    G0 = best.X_hat
    cuts = cut_weights(W, G0)
    return MaxMasSolution(float(cuts.max()), G0, cuts, eig, time.perf_counter() - t0, probes)


def solve_problem3(A: BoolMatrix, untouchable, cfg: SolverConfig | None = None) -> MaxMasSolution:
    """Max-MAS where the given edges may not be cut."""
    return solve_max_mas(A, cfg, untouchable=untouchable)


def _greedy_topological_order(A: BoolMatrix, G0: BoolMatrix) -> list[int]:
    """Topological order of ``G0`` (sources first) that consults ``A`` on ties.

    Among the vertices whose ``G0`` predecessors are all placed, take the one
    with the fewest not-yet-placed ``A`` in-neighbours minus out-neighbours,
    i.e. the one losing the fewest edges of ``A`` to the backward side.
    """
    out = A.out_adjacency()
    g_out = G0.out_adjacency()
    indeg = G0.row_sizes().copy()
    score = A.row_sizes() - np.array([len(o) for o in out], dtype=np.int64)
    ready = set(np.flatnonzero(indeg == 0).tolist())
    order = []
    while ready:
        v = min(ready, key=lambda x: (score[x], x))
        ready.remove(v)
        order.append(v)
        score[A.rows[v]] += 1
        score[out[v]] -= 1
        for w in g_out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.add(w)
    return order


def approx_mas(A: BoolMatrix, G0: BoolMatrix, *, best_of_both: bool = False,
               order: str = "frobenius") -> MasApproximation:
    """Grow an acyclic subgraph ``G0`` of ``A`` into the forward edges of its order.

    The Frobenius form of the nilpotent ``G0`` is a vertex order (sinks
    first); every edge of ``A`` lying strictly above the diagonal of the
    permuted matrix is kept.  ``order="greedy"`` instead picks, among the
    topological orders of ``G0``, one built greedily against ``A``.  With
    ``best_of_both`` the complementary edge set is also considered and the
    larger one returned.
    """
    if not G0.is_subgraph_of(A):
        raise PreconditionViolation("G0 must be a subgraph of A")
    if not is_acyclic(G0):
        raise PreconditionViolation("G0 must be acyclic")
    if order == "frobenius":
        perm = frobenius_factorize(G0).order
    elif order == "greedy":
        perm = _greedy_topological_order(A, G0)[::-1]
    else:
        raise ValueError("order must be 'frobenius' or 'greedy'")
    pos = np.empty(A.n, dtype=np.int64)
    pos[list(perm)] = np.arange(A.n)
    above = [row[pos[row] > pos[i]] for i, row in enumerate(A.rows)]
    G_bar = BoolMatrix._trusted(A.n, above)
    ordering = tuple(int(x) for x in reversed(perm))
    contains = True
    if best_of_both:
        below = [row[pos[row] < pos[i]] for i, row in enumerate(A.rows)]
        G_rev = BoolMatrix._trusted(A.n, below)
        if edge_count(G_rev) > edge_count(G_bar):
            G_bar, ordering, contains = G_rev, tuple(int(x) for x in perm), G0.is_subgraph_of(G_rev)
    return MasApproximation(ordering, G_bar, gamma(A, G_bar), contains)


def approx_mas_constrained(A: BoolMatrix, G0: BoolMatrix, budgets: Sequence[int] | None = None,
                           untouchable=None, order: str = "frobenius") -> MasApproximation:
    """``approx_mas`` for the budgeted / protected variants, constraints re-checked."""
    out = approx_mas(A, G0, order=order)
    if budgets is not None:
        if len(budgets) != A.n:
            raise ValueError("need one budget per vertex")
        if np.any(cut_counts(A, G0) > np.asarray(budgets)):
            raise PreconditionViolation("G0 violates the budgets")
        if np.any(cut_counts(A, out.G_bar) > np.asarray(budgets)):
            raise SolverInvariantError("completed graph exceeds the budgets")
    prot = _untouchable_rows(A.n, untouchable)
    if prot is not None:
        P = BoolMatrix(A.n, prot)
        if not P.is_subgraph_of(G0):
            raise PreconditionViolation("G0 dropped an untouchable edge")
        if not P.is_subgraph_of(out.G_bar):
            raise SolverInvariantError("completed graph lost an untouchable edge")
    return out


def baseline_random_permutation(A: BoolMatrix, seed=None) -> MasApproximation:
    """Random vertex order; keep whichever of forward/backward edges is larger."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(A.n)
    pos = np.empty(A.n, dtype=np.int64)
    pos[order] = np.arange(A.n)
    # edge j -> i is forward when j comes first
    fwd = [row[pos[row] < pos[i]] for i, row in enumerate(A.rows)]
    bwd = [row[pos[row] > pos[i]] for i, row in enumerate(A.rows)]
    F, B = BoolMatrix._trusted(A.n, fwd), BoolMatrix._trusted(A.n, bwd)
    if edge_count(F) >= edge_count(B):
        return MasApproximation(tuple(int(x) for x in order), F, gamma(A, F), False)
    return MasApproximation(tuple(int(x) for x in order[::-1]), B, gamma(A, B), False)


def max_probes(r0: int) -> int:
    return math.ceil(math.log2(r0 + 1)) + 1
