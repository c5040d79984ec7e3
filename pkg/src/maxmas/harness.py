"""Seeded random instances and the experiment runner behind the result tables.

Randomness comes from numpy's PCG64 (``numpy.random.default_rng``), seeded with
``spec.seed + trial`` per instance, so reports reproduce across platforms.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .graphmat import BoolMatrix, edge_count
from .greedy import SolverConfig
from .solver import approx_mas, solve_max_mas

log = logging.getLogger(__name__)

THREADS_ENV = "MAXMAS_THREADS"
FAMILIES = ("uniform", "small-world")


@dataclass(frozen=True)
class GenSpec:
    family: str = "uniform"
    n: int = 50
    p_edge: float = 0.3
    k: int = 4
    p: float = 0.1
    seed: int = 0
    self_loops: bool = False

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not 0.0 <= self.p_edge <= 1.0:
            raise ValueError("p_edge must lie in [0, 1]")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.family == "small-world" and not 0 <= self.k < self.n:
            raise ValueError(f"small-world needs 0 <= k < n (k={self.k}, n={self.n})")

    def label(self) -> str:
        if self.family == "uniform":
            return f"uniform n={self.n} p_edge={self.p_edge}"
        return f"small-world n={self.n} k={self.k} p={self.p}"


def gen_uniform(spec: GenSpec) -> BoolMatrix:
    """Each ordered pair ``(i, j)``, ``i != j``, becomes an edge with prob. ``p_edge``."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    mask = rng.random((n, n)) < spec.p_edge
    if not spec.self_loops:
        np.fill_diagonal(mask, False)
    return BoolMatrix.from_dense(mask)


def gen_small_world(spec: GenSpec) -> BoolMatrix:
    """Watts-Strogatz ring with random edge orientations.

    Every node is joined to its ``k // 2`` nearest neighbours on each side of
    the ring; each lattice edge ``(u, u + d)`` then has its far end moved to a
    uniform random node with probability ``p`` (avoiding self-loops and
    duplicates), and finally every undirected edge is given a uniformly random
    direction.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    n, half = spec.n, spec.k // 2
    adj: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for d in range(1, half + 1):
            w = (u + d) % n
            adj[u].add(w)
            adj[w].add(u)
    for d in range(1, half + 1):
        for u in range(n):
            w = (u + d) % n
            if rng.random() >= spec.p or w not in adj[u]:
                continue
            if len(adj[u]) >= n - 1:
                continue
            while True:
                t = int(rng.integers(n))
                if t != u and t not in adj[u]:
                    break
            adj[u].discard(w)
            adj[w].discard(u)
            adj[u].add(t)
            adj[t].add(u)
    edges = []
    for u in range(n):
        for w in sorted(adj[u]):
            if u < w:
                edges.append((u, w) if rng.random() < 0.5 else (w, u))
    return BoolMatrix.from_edges(n, edges)


def generate(spec: GenSpec) -> BoolMatrix:
    return gen_uniform(spec) if spec.family == "uniform" else gen_small_world(spec)


@dataclass
class InstanceRow:
    family: str
    n: int
    p_edge: float | None
    k: int | None
    p: float | None
    seed: int
    edges: int
    r_star: int | None = None
    gamma: float | None = None
    eig_count: int | None = None
    wall_time: float | None = None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class CellSummary:
    spec: GenSpec
    trials: int
    failures: int
    mean_r_star: float
    mean_gamma: float
    mean_eig_count: float
    mean_wall_time: float


@dataclass
class ExperimentReport:
    rows: list[InstanceRow] = field(default_factory=list)
    cells: list[CellSummary] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rows": [asdict(r) for r in self.rows],
            "cells": [dict(asdict(c), spec=asdict(c.spec)) for c in self.cells],
        }


def _mean(xs) -> float:
    xs = [x for x in xs if x is not None]
    return float(np.mean(xs)) if xs else float("nan")


def summarize(spec: GenSpec, rows: list[InstanceRow]) -> CellSummary:
    ok = [r for r in rows if not r.failed]
    return CellSummary(
        spec=spec,
        trials=len(rows),
        failures=len(rows) - len(ok),
        mean_r_star=_mean(r.r_star for r in ok),
        mean_gamma=_mean(r.gamma for r in ok),
        mean_eig_count=_mean(r.eig_count for r in ok),
        mean_wall_time=_mean(r.wall_time for r in ok),
    )


def run_instance(spec: GenSpec, cfg: SolverConfig | None = None) -> InstanceRow:
    A = generate(spec)
    uni = spec.family == "uniform"
    row = InstanceRow(spec.family, spec.n, spec.p_edge if uni else None,
                      None if uni else spec.k, None if uni else spec.p, spec.seed, edge_count(A))
    try:
        t0 = time.perf_counter()
        sol = solve_max_mas(A, cfg)
        approx = approx_mas(A, sol.G0)
        row.wall_time = time.perf_counter() - t0
    except Exception as exc:  # recorded per instance; the run goes on
        log.warning("instance %s seed=%d failed: %s", spec.label(), spec.seed, exc)
        row.error = f"{type(exc).__name__}: {exc}"
        return row
    row.r_star = int(sol.r_star)
    row.gamma = approx.gamma
    row.eig_count = sol.eig_count
    return row


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_table(specs: list[GenSpec], trials: int, cfg: SolverConfig | None = None,
              workers: int | None = None) -> ExperimentReport:
    """Run ``trials`` seeded instances per spec (seed + trial index) and aggregate."""
    workers = default_workers() if workers is None else workers
    jobs = [replace(s, seed=s.seed + t) for s in specs for t in range(trials)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_instance, jobs, [cfg] * len(jobs)))
    else:
        rows = [run_instance(j, cfg) for j in jobs]
    report = ExperimentReport(rows=rows)
    for c, spec in enumerate(specs):
        report.cells.append(summarize(spec, rows[c * trials:(c + 1) * trials]))
    return report
