"""Spectral radius minimisation over products of L1-balls around the rows of A.

A row of ``X`` lies in the ball of radius ``r_i`` around row ``A_i`` when it is
``A_i`` with at most ``r_i`` entries removed (weighted mode: removed weight at
most ``r_i``).  ``min_rho_over_ball`` runs the non-cycling greedy relaxation:
rows are swapped for their minimal counterparts with respect to a minimal
leading eigenvector, working on the eigenvector's support, until either the
graph is acyclic or every active row is already minimal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graphmat import BoolMatrix, IndexSet, WeightedMatrix, is_acyclic, restrict
from .spectral import (
    DEFAULT_RHO_RTOL,
    DEFAULT_TOL,
    basic_set,
    minimal_leading_eigenvector,
    rho_of_boolean,
)

log = logging.getLogger(__name__)

WEIGHT_KEYS = ("product", "ratio")


class SolverInvariantError(RuntimeError):
    """An internal invariant of the relaxation failed; never silenced."""


@dataclass(frozen=True)
class BudgetSpec:
    """Per-vertex cut budgets with optional weights and protected in-edges.

    ``budgets[i]`` bounds what may be cut from row ``i`` (a count, or a total
    weight when ``weights`` is given).  ``untouchable[i]`` lists sources ``j``
    whose edge ``j -> i`` must never be cut.
    """

    budgets: tuple[float, ...]
    weights: WeightedMatrix | None = None
    untouchable: tuple[IndexSet, ...] | None = None
    weight_key: str = "product"

    @classmethod
    def uniform(cls, n: int, r: float, **kw) -> "BudgetSpec":
        return cls(budgets=(r,) * n, **kw)

    def validate(self, A: BoolMatrix) -> None:
        if len(self.budgets) != A.n:
            raise ValueError(f"need {A.n} budgets, got {len(self.budgets)}")
        if any(b < 0 for b in self.budgets):
            raise ValueError("budgets must be nonnegative")
        if self.weights is None and any(float(b) != int(b) for b in self.budgets):
            raise ValueError("unweighted budgets must be integers")
        if self.weights is not None and self.weights.pattern != A:
            raise ValueError("weights must be given on exactly the edges of A")
        if self.weight_key not in WEIGHT_KEYS:
            raise ValueError(f"weight_key must be one of {WEIGHT_KEYS}")
        if self.untouchable is not None:
            if len(self.untouchable) != A.n:
                raise ValueError("untouchable needs one entry per row")
            for i, prot in enumerate(self.untouchable):
                if not np.isin(np.asarray(prot, dtype=np.int64), A.rows[i]).all():
                    raise ValueError(f"untouchable entries of row {i} are not edges of A")


@dataclass(frozen=True)
class SolverConfig:
    tol: float = DEFAULT_TOL
    rho_rtol: float = DEFAULT_RHO_RTOL
    # value-based row minimality; eigenvectors carry ~1e-12 noise so exact
    # ties must survive it
    minimality_tol: float = 1e-9
    max_steps: int = 100_000
    debug_asserts: bool = False


@dataclass
class MinRhoResult:
    X_hat: BoolMatrix
    rho: float
    optimal: bool
    eig_count: int
    outer_iterations: int = 0
    weights: WeightedMatrix | None = None
    history: list[dict] = field(default_factory=list)


# ---------------------------------------------------------------- row level

def _cut_order(cand: np.ndarray, v: np.ndarray) -> np.ndarray:
    # largest v first, lowest index on ties
    return cand[np.lexsort((cand, -v[cand]))]


def minimal_row(A_row: Sequence[int], v, budget: int, untouchable: Sequence[int] = (),
                active=None) -> IndexSet:
    """Surviving entries after cutting the ``budget`` largest-``v`` entries.

    Only entries of ``A_row`` that are not untouchable (and, if ``active`` is
    given, lie in it) are eligible; everything else survives.
    """
    a = np.asarray(A_row, dtype=np.int64)
    v = np.asarray(v, dtype=float)
    eligible = ~np.isin(a, np.asarray(untouchable, dtype=np.int64))
    if active is not None:
        eligible &= np.isin(a, np.asarray(active, dtype=np.int64))
    cut = _cut_order(a[eligible], v)[: int(budget)]
    return tuple(int(x) for x in np.setdiff1d(a, cut))


def is_row_minimal(X_row, A_row, v, budget: int, untouchable: Sequence[int] = (), active=None,
                   tol: float = 1e-12) -> bool:
    """True when ``<X_row, v>`` equals the minimum over the ball (within ``tol``)."""
    v = np.asarray(v, dtype=float)
    best = minimal_row(A_row, v, budget, untouchable, active)
    x = np.asarray(X_row, dtype=np.int64)
    if active is not None:
        act = np.asarray(active, dtype=np.int64)
        x = x[np.isin(x, act)]
        best = np.asarray(best, dtype=np.int64)
        best = best[np.isin(best, act)]
    return float(v[x].sum()) <= float(v[np.asarray(best, dtype=np.int64)].sum()) + tol


def weighted_row_order(A_row, weights, v, key: str = "product") -> list[int]:
    """Cut priority for a weighted row: ``w_j v_j`` (or ``v_j / w_j``) descending."""
    a = np.asarray(A_row, dtype=np.int64)
    w = np.asarray(weights, dtype=float)
    vv = np.asarray(v, dtype=float)[a]
    score = w * vv if key == "product" else vv / w
    return [int(x) for x in a[np.lexsort((a, -score))]]


def _greedy_weighted_cut(order_pos: np.ndarray, costs: np.ndarray, budget: float) -> np.ndarray:
    """Skip-and-continue greedy: positions (into ``order_pos``) that get cut."""
    taken = []
    spent = 0.0
    eps = 1e-12 * max(1.0, budget)
    for p in order_pos:
        c = costs[p]
        if spent + c <= budget + eps:
            taken.append(p)
            spent += c
    return np.asarray(taken, dtype=np.int64)


def weighted_minimal_row(A_row, weights, v, budget: float, untouchable=(), active=None,
                         key: str = "product") -> IndexSet:
    a = np.asarray(A_row, dtype=np.int64)
    w = np.asarray(weights, dtype=float)
    eligible = ~np.isin(a, np.asarray(untouchable, dtype=np.int64))
    if active is not None:
        eligible &= np.isin(a, np.asarray(active, dtype=np.int64))
    pos = np.flatnonzero(eligible)
    vv = np.asarray(v, dtype=float)[a[pos]]
    score = w[pos] * vv if key == "product" else vv / w[pos]
    order = pos[np.lexsort((a[pos], -score))]
    cut = _greedy_weighted_cut(order, w, float(budget))
    keep = np.ones(a.size, dtype=bool)
    keep[cut] = False
    return tuple(int(x) for x in a[keep])


# ---------------------------------------------------------------- the ball

class _Ball:
    """Precomputed per-row data; the solver state is one keep-mask per row of A."""

    def __init__(self, A: BoolMatrix, spec: BudgetSpec):
        spec.validate(A)
        self.A = A
        self.n = A.n
        self.spec = spec
        self.weighted = spec.weights is not None
        self.costs = [spec.weights.weights[i] if self.weighted else np.ones(A.rows[i].size)
                      for i in range(A.n)]
        self.budgets = np.asarray(spec.budgets, dtype=float)
        self.cuttable = []
        for i in range(A.n):
            c = np.ones(A.rows[i].size, dtype=bool)
            if spec.untouchable is not None and len(spec.untouchable[i]):
                c &= ~np.isin(A.rows[i], np.asarray(spec.untouchable[i], dtype=np.int64))
            self.cuttable.append(c)

    def full(self) -> list[np.ndarray]:
        return [np.ones(r.size, dtype=bool) for r in self.A.rows]

    def matrix(self, keep):
        rows = [r[k] for r, k in zip(self.A.rows, keep)]
        if self.weighted:
            return WeightedMatrix(self.n, rows, [w[k] for w, k in zip(self.costs, keep)])
        return BoolMatrix._trusted(self.n, rows)

    def feasible(self, keep) -> bool:
        for i, k in enumerate(keep):
            if (~k & ~self.cuttable[i]).any():
                return False
            if self.costs[i][~k].sum() > self.budgets[i] + 1e-9 * max(1.0, self.budgets[i]):
                return False
        return True

    def minimal_keep(self, i: int, in_s: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, float]:
        """Keep-mask of the minimal row on the active set, and its cut value."""
        a = self.A.rows[i]
        pos = np.flatnonzero(self.cuttable[i] & in_s[a])
        keep = np.ones(a.size, dtype=bool)
        if pos.size == 0:
            return keep, 0.0
        vv = v[a[pos]]
        if self.weighted:
            w = self.costs[i][pos]
            score = w * vv if self.spec.weight_key == "product" else vv / w
            order = np.lexsort((a[pos], -score))
            cut = pos[_greedy_weighted_cut(order, w, self.budgets[i])]
            keep[cut] = False
            return keep, float(self.costs[i][cut] @ v[a[cut]])
        r = int(self.budgets[i])
        if pos.size <= r:
            cut = pos
        else:
            cut = pos[np.lexsort((a[pos], -vv))[:r]]
        keep[cut] = False
        return keep, float(v[a[cut]].sum())

    def cut_value(self, i: int, keep: np.ndarray, in_s: np.ndarray, v: np.ndarray) -> float:
        a = self.A.rows[i]
        m = ~keep & in_s[a]
        return float(self.costs[i][m] @ v[a[m]])


def _state_key(S: np.ndarray, keep) -> int:
    return hash((S.tobytes(), tuple(keep[i].tobytes() for i in S.tolist())))


def min_rho_over_ball(A: BoolMatrix, budgets: BudgetSpec | Sequence[float] | int,
                      cfg: SolverConfig | None = None, start: BoolMatrix | None = None
                      ) -> MinRhoResult:
    """Minimise the spectral radius over the product of row balls around ``A``.

    ``budgets`` may be a BudgetSpec, a per-vertex sequence, or one integer.
    ``start`` optionally warm-starts from a matrix already inside the ball.
    In unweighted mode the returned matrix is a global minimiser.
    """
    cfg = cfg or SolverConfig()
    if isinstance(budgets, BudgetSpec):
        spec = budgets
    elif np.isscalar(budgets):
        spec = BudgetSpec.uniform(A.n, budgets)
    else:
        spec = BudgetSpec(tuple(budgets))
    ball = _Ball(A, spec)
    n = A.n

    if start is None:
        keep = ball.full()
    else:
        keep = [np.isin(a, s, assume_unique=True) for a, s in zip(A.rows, start.rows)]
        if not start.is_subgraph_of(A) or not ball.feasible(keep):
            raise ValueError("start matrix is not inside the ball")

    eig_count = 0
    steps = 0
    outer = 0
    history: list[dict] = []
    prev_rho = np.inf
    tol_m = cfg.minimality_tol

    def done(keep_, rho, optimal):
        X = ball.matrix(keep_)
        return MinRhoResult(X.pattern, rho, optimal, eig_count, outer,
                            X if ball.weighted else None, history)

    while True:
        outer += 1
        X = ball.matrix(keep)
        if is_acyclic(X):
            history.append({"event": "acyclic", "rho": 0.0, "support": 0, "eig_count": eig_count})
            return done(keep, 0.0, True)
        mle = minimal_leading_eigenvector(X, tol=cfg.tol, rho_rtol=cfg.rho_rtol)
        eig_count += 1
        rho = mle.value
        if rho > prev_rho + cfg.rho_rtol * max(1.0, prev_rho):
            raise SolverInvariantError(f"spectral radius increased: {prev_rho} -> {rho}")
        prev_rho = rho
        S = np.asarray(mle.support, dtype=np.int64)
        H = np.asarray(mle.basic, dtype=np.int64)
        v = mle.vector
        history.append({"event": "outer", "rho": rho, "support": int(S.size), "eig_count": eig_count})
        seen: set[int] = set()

        while True:
            steps += 1
            if steps > cfg.max_steps:
                raise SolverInvariantError(f"step cap {cfg.max_steps} exceeded")
            key = _state_key(S, keep)
            if key in seen:
                if ball.weighted:
                    # heuristic row choice in weighted mode can revisit states
                    log.debug("weighted relaxation revisited a state; stopping")
                    return done(keep, rho, False)
                raise SolverInvariantError("relaxation revisited a state within one iteration")
            seen.add(key)

            in_s = np.zeros(n, dtype=bool)
            in_s[S] = True
            new_keep = list(keep)
            minimal = np.zeros(n, dtype=bool)
            for i in S.tolist():
                best_keep, best_val = ball.minimal_keep(i, in_s, v)
                cur_val = ball.cut_value(i, keep[i], in_s, v)
                if cur_val >= best_val - tol_m:
                    minimal[i] = True
                else:
                    # off the support the row goes back to A
                    new_keep[i] = best_keep
            if minimal[S].all():
                history.append({"event": "optimal", "rho": rho, "support": int(S.size),
                                "eig_count": eig_count, "active": S.tolist()})
                return done(keep, rho, True)

            if cfg.debug_asserts and not ball.feasible(new_keep):
                raise SolverInvariantError("left the ball")
            if minimal[H].all():
                sub = restrict(ball.matrix(new_keep), S)
                mle2 = minimal_leading_eigenvector(sub, tol=cfg.tol, rho_rtol=cfg.rho_rtol)
                eig_count += 1
                if abs(mle2.value - rho) > 10 * cfg.rho_rtol * max(1.0, rho):
                    raise SolverInvariantError(
                        f"rho changed on the basic-set-minimal branch: {rho} -> {mle2.value}"
                    )
                keep = new_keep
                v = np.zeros(n)
                v[S] = mle2.vector
                H = S[np.asarray(mle2.basic, dtype=np.int64)]
                S = S[np.asarray(mle2.support, dtype=np.int64)]
                history.append({"event": "inner", "rho": rho, "support": int(S.size),
                                "eig_count": eig_count})
                if cfg.debug_asserts:
                    h2 = basic_set(restrict(ball.matrix(keep), S), tol=cfg.tol)
                    if not np.array_equal(S[list(h2)], np.sort(H)):
                        raise SolverInvariantError("basic set disagrees with the carried block")
                continue

            if cfg.debug_asserts:
                new_rho = rho_of_boolean(restrict(ball.matrix(new_keep), S), cfg.tol)
                if new_rho >= rho - cfg.rho_rtol * max(1.0, rho):
                    raise SolverInvariantError(f"no strict decrease on the support: {rho} -> {new_rho}")
            keep = new_keep
            break
