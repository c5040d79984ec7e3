"""Command-line entry point, edge-list files and result documents.

Edge-list format, one directed edge per line::

    # comment
    n 5          optional; pins the vertex count (isolated vertices)
    0 1          edge 0 -> 1
    1 2 2.5      edge 1 -> 2 with weight 2.5

Result documents are JSON (canonical) or a one-row CSV with the columns in
``CSV_COLUMNS``; list-valued fields are space separated and the edge field is
``u>v`` tokens.  Both carry ``schema_version``.

Exit codes: 0 success, 1 bad input, 2 infeasible instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .graphmat import BoolMatrix, WeightedMatrix, edge_count, is_acyclic, topological_order
from .greedy import BudgetSpec, SolverConfig, min_rho_over_ball
from .harness import GenSpec, default_workers, generate, run_table
from .oracle import OracleLimitError, backward_in_counts, exact_mas, exact_max_mas, exact_min_rho
from .solver import (
    PreconditionViolation,
    approx_mas,
    approx_mas_constrained,
    baseline_random_permutation,
    cut_counts,
    cut_weights,
    solve_max_mas,
    solve_problem2,
)

log = logging.getLogger("maxmas")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2

CSV_COLUMNS = (
    "schema_version", "problem", "n", "num_edges", "feasible", "r_star", "rho",
    "gamma", "eig_count", "wall_time_ms", "budgets", "per_vertex_cuts", "ordering", "edges",
)
BENCH_COLUMNS = (
    "schema_version", "family", "n", "p_edge", "k", "p", "trials", "failures",
    "mean_r_star", "mean_gamma", "mean_eig_count", "mean_wall_time_s",
)


class InputError(ValueError):
    """Malformed or inconsistent user input (exit code 1)."""


# ------------------------------------------------------------ edge lists

def parse_edge_list(text: str, one_based: bool = False) -> BoolMatrix | WeightedMatrix:
    """Parse an edge list; weighted lines give a WeightedMatrix.

    Duplicate edges collapse to one (conflicting duplicate weights are an
    error).  Without an ``n`` header the vertex count is the largest index
    plus one.
    """
    n_header = None
    edges: dict[tuple[int, int], float | None] = {}
    weighted = None
    shift = 1 if one_based else 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if len(tok) != 2 or n_header is not None:
                raise InputError(f"line {lineno}: bad header {raw.strip()!r}")
            n_header = _int(tok[1], lineno)
            if n_header < 0:
                raise InputError(f"line {lineno}: negative vertex count")
            continue
        if len(tok) not in (2, 3):
            raise InputError(f"line {lineno}: expected 'u v' or 'u v w', got {raw.strip()!r}")
        has_w = len(tok) == 3
        if weighted is None:
            weighted = has_w
        elif weighted != has_w:
            raise InputError(f"line {lineno}: mixes weighted and unweighted edges")
        u, v = _int(tok[0], lineno) - shift, _int(tok[1], lineno) - shift
        if u < 0 or v < 0:
            raise InputError(f"line {lineno}: vertex index below {shift}")
        w = None
        if has_w:
            try:
                w = float(tok[2])
            except ValueError:
                raise InputError(f"line {lineno}: bad weight {tok[2]!r}") from None
            if not (w > 0 and math.isfinite(w)):
                raise InputError(f"line {lineno}: weights must be positive, got {tok[2]}")
        if (u, v) in edges and edges[(u, v)] != w:
            raise InputError(f"line {lineno}: edge {tok[0]} {tok[1]} repeated with another weight")
        edges[(u, v)] = w
    top = max((max(e) for e in edges), default=-1) + 1
    if n_header is None:
        n = top
    elif top > n_header:
        raise InputError(f"vertex index {top - 1 + shift} out of range for n {n_header}")
    else:
        n = n_header
    if weighted:
        return WeightedMatrix.from_edges(n, [(u, v, w) for (u, v), w in edges.items()])
    return BoolMatrix.from_edges(n, list(edges))


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: expected an integer, got {tok!r}") from None


def format_edge_list(M: BoolMatrix | WeightedMatrix, one_based: bool = False) -> str:
    """Canonical text: ``n`` header then edges sorted by (source, target)."""
    s = 1 if one_based else 0
    out = [f"n {M.n}"]
    if isinstance(M, WeightedMatrix):
        out += [f"{u + s} {v + s} {w!r}" for u, v, w in sorted(M.edges())]
    else:
        out += [f"{u + s} {v + s}" for u, v in M.edges()]
    return "\n".join(out) + "\n"


def parse_budgets(text: str, n: int, integer: bool = True) -> list[float]:
    vals = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for tok in raw.split("#", 1)[0].split():
            try:
                x = int(tok) if integer else float(tok)
            except ValueError:
                raise InputError(f"budgets line {lineno}: bad value {tok!r}") from None
            if x < 0:
                raise InputError(f"budgets line {lineno}: negative budget")
            vals.append(x)
    if len(vals) != n:
        raise InputError(f"expected {n} budgets, got {len(vals)}")
    return vals


def untouchable_rows(P: BoolMatrix, n: int) -> tuple[tuple[int, ...], ...]:
    if P.n > n:
        raise InputError(f"untouchable edges mention vertex {P.n - 1}, graph has {n}")
    rows = [tuple(int(j) for j in r) for r in P.rows]
    return tuple(rows + [()] * (n - P.n))


# ------------------------------------------------------------ documents

@dataclass
class ResultDocument:
    """Solver output.  ``edges`` is the output graph as (source, target) pairs;
    ``per_vertex_cuts`` counts (or weighs) input in-edges missing from it."""

    problem: str
    n: int
    num_edges: int
    feasible: bool
    r_star: float | None = None
    rho: float | None = None
    gamma: float | None = None
    eig_count: int | None = None
    wall_time_ms: float | None = None
    budgets: list[float] | None = None
    per_vertex_cuts: list[float] = field(default_factory=list)
    ordering: list[int] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def graph(self) -> BoolMatrix:
        return BoolMatrix.from_edges(self.n, self.edges)

    def to_json(self) -> str:
        d = asdict(self)
        d["edges"] = [list(e) for e in self.edges]
        return json.dumps(d, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        d = json.loads(text)
        d["edges"] = [tuple(e) for e in d.get("edges", [])]
        return cls(**d)

    def to_csv(self) -> str:
        d = asdict(self)
        d["per_vertex_cuts"] = _join(self.per_vertex_cuts)
        d["ordering"] = _join(self.ordering)
        d["budgets"] = "" if self.budgets is None else _join(self.budgets)
        d["edges"] = " ".join(f"{u}>{v}" for u, v in self.edges)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerow({k: "" if d[k] is None else d[k] for k in CSV_COLUMNS})
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ResultDocument":
        rows = list(csv.DictReader(io.StringIO(text)))
        if len(rows) != 1:
            raise InputError("a CSV result document has exactly one data row")
        r = rows[0]

        def opt(key, conv):
            return conv(r[key]) if r.get(key, "") != "" else None

        return cls(
            problem=r["problem"], n=int(r["n"]), num_edges=int(r["num_edges"]),
            feasible=r["feasible"] == "True", r_star=opt("r_star", _num), rho=opt("rho", float),
            gamma=opt("gamma", float), eig_count=opt("eig_count", int),
            wall_time_ms=opt("wall_time_ms", float),
            budgets=opt("budgets", lambda s: [_num(x) for x in s.split()]),
            per_vertex_cuts=[_num(x) for x in r["per_vertex_cuts"].split()],
            ordering=[int(x) for x in r["ordering"].split()],
            edges=[tuple(int(x) for x in t.split(">")) for t in r["edges"].split()],
            schema_version=int(r["schema_version"]),
        )

    def dumps(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()

    @classmethod
    def loads(cls, text: str) -> "ResultDocument":
        try:
            if text.lstrip().startswith("{"):
                return cls.from_json(text)
            return cls.from_csv(text)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"unreadable result document: {exc}") from exc


def _num(s: str) -> float:
    x = float(s)
    return int(x) if x.is_integer() and "." not in s and "e" not in s.lower() else x


def _join(xs) -> str:
    return " ".join(str(x) for x in xs)


def validate_document(doc: ResultDocument, A: BoolMatrix | WeightedMatrix | None = None,
                      untouchable: Sequence[Sequence[int]] | None = None) -> list[str]:
    """Re-check a result document; returns the violations found (empty if valid)."""
    errs = []
    if doc.schema_version != SCHEMA_VERSION:
        errs.append(f"schema_version {doc.schema_version} != {SCHEMA_VERSION}")
    try:
        G = doc.graph()
    except (ValueError, IndexError) as exc:
        return errs + [f"bad edge list: {exc}"]
    acyclic = is_acyclic(G)
    if doc.feasible and not acyclic:
        errs.append("output graph is not acyclic")
    if doc.ordering:
        if sorted(doc.ordering) != list(range(doc.n)):
            errs.append("ordering is not a permutation")
        elif doc.feasible:
            pos = np.empty(doc.n, dtype=np.int64)
            pos[doc.ordering] = np.arange(doc.n)
            if any(pos[u] >= pos[v] for u, v in doc.edges):
                errs.append("an output edge is not forward under the ordering")
    if doc.gamma is not None and doc.num_edges:
        if not math.isclose(doc.gamma, len(doc.edges) / doc.num_edges, rel_tol=1e-9):
            errs.append("gamma does not match the edge counts")
    if A is None:
        return errs
    pattern = A.pattern if isinstance(A, WeightedMatrix) else A
    if A.n != doc.n or edge_count(pattern) != doc.num_edges:
        return errs + ["document does not describe this input graph"]
    if not G.is_subgraph_of(pattern):
        return errs + ["output graph has edges missing from the input"]
    cuts = cut_weights(A, G) if isinstance(A, WeightedMatrix) else cut_counts(A, G)
    if doc.per_vertex_cuts and not np.allclose(cuts, doc.per_vertex_cuts, rtol=1e-9, atol=1e-12):
        errs.append("per_vertex_cuts do not match the input and output graphs")
    cap = None
    if doc.budgets is not None:
        cap = np.asarray(doc.budgets, dtype=float)
    elif doc.r_star is not None and doc.problem.endswith("maxmas"):
        cap = np.full(doc.n, float(doc.r_star))
    if cap is not None and doc.feasible and np.any(cuts > cap + 1e-9):
        errs.append("cuts exceed the budget")
    if untouchable is not None:
        for i, prot in enumerate(untouchable):
            if not set(prot) <= set(G.rows[i].tolist()):
                errs.append(f"protected in-edges of vertex {i} were cut")
                break
    return errs


# ------------------------------------------------------------ commands

def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(args, weighted: bool = False):
    M = parse_edge_list(_read(args.input), one_based=args.one_based)
    if weighted:
        if not isinstance(M, WeightedMatrix):
            raise InputError("--weights needs 'u v w' lines")
        return M
    return M.pattern if isinstance(M, WeightedMatrix) else M


def _load_untouchable(args, n: int):
    if not args.untouchable:
        return None
    P = parse_edge_list(_read(args.untouchable), one_based=args.one_based)
    return untouchable_rows(P.pattern if isinstance(P, WeightedMatrix) else P, n)


def _load_budgets(args, n: int, integer: bool = True):
    if args.budget is not None and args.budgets is not None:
        raise InputError("give --budget or --budgets, not both")
    if args.budget is not None:
        if args.budget < 0:
            raise InputError("--budget must be nonnegative")
        return [args.budget] * n
    if args.budgets is not None:
        return parse_budgets(_read(args.budgets), n, integer)
    raise InputError("minrho needs --budget or --budgets")


def _cfg(args) -> SolverConfig:
    return SolverConfig(debug_asserts=args.debug_asserts)


def _ordering_of(G: BoolMatrix) -> list[int]:
    return topological_order(G) or []


def cmd_maxmas(args) -> ResultDocument:
    if args.weights:
        W = _load_graph(args, weighted=True)
        if args.untouchable:
            raise InputError("--weights and --untouchable cannot be combined")
        sol = solve_problem2(W, _cfg(args), key=args.key)
        A, problem = W.pattern, "weighted-maxmas"
    else:
        A = _load_graph(args)
        W = None
        prot = _load_untouchable(args, A.n)
        sol = solve_max_mas(A, _cfg(args), untouchable=prot)
        problem = "protected-maxmas" if prot is not None else "maxmas"
    if not sol.feasible:
        return ResultDocument(problem, A.n, edge_count(A), False,
                              eig_count=sol.eig_count, wall_time_ms=1e3 * sol.wall_time)
    if W is None and args.untouchable:
        approx = approx_mas_constrained(A, sol.G0, untouchable=prot, order=args.order)
    else:
        approx = approx_mas(A, sol.G0, best_of_both=args.best_of_both, order=args.order)
    G = approx.G_bar if not args.witness_only else sol.G0
    cuts = cut_weights(W, G) if W is not None else cut_counts(A, G)
    return ResultDocument(
        problem, A.n, edge_count(A), True, r_star=_plain(sol.r_star), rho=0.0,
        gamma=edge_count(G) / edge_count(A) if edge_count(A) else 1.0,
        eig_count=sol.eig_count, wall_time_ms=1e3 * sol.wall_time,
        per_vertex_cuts=[_plain(c) for c in cuts], ordering=list(approx.ordering),
        edges=G.edges())


def cmd_minrho(args) -> ResultDocument:
    import time

    A = _load_graph(args, weighted=args.weights)
    W = A if args.weights else None
    if W is not None:
        A = W.pattern
    budgets = _load_budgets(args, A.n, integer=W is None)
    spec = BudgetSpec(tuple(budgets), weights=W, untouchable=_load_untouchable(args, A.n),
                      weight_key=args.key)
    t0 = time.perf_counter()
    res = min_rho_over_ball(A, spec, _cfg(args))
    ms = 1e3 * (time.perf_counter() - t0)
    X = res.X_hat
    cuts = cut_weights(W, X) if W is not None else cut_counts(A, X)
    m = edge_count(A)
    return ResultDocument(
        "minrho", A.n, m, res.rho == 0.0, rho=res.rho, gamma=edge_count(X) / m if m else 1.0,
        eig_count=res.eig_count, wall_time_ms=ms, budgets=[_plain(b) for b in budgets],
        per_vertex_cuts=[_plain(c) for c in cuts], ordering=_ordering_of(X), edges=X.edges())


def cmd_approx(args) -> ResultDocument:
    A = _load_graph(args)
    m = edge_count(A)
    if args.baseline:
        out = baseline_random_permutation(A, args.seed)
        problem = "baseline"
    else:
        if not args.witness:
            raise InputError("approx-mas needs --witness (or --baseline)")
        G0 = parse_edge_list(_read(args.witness), one_based=args.one_based)
        G0 = G0.pattern if isinstance(G0, WeightedMatrix) else G0
        if G0.n < A.n:
            G0 = BoolMatrix(A.n, list(G0.rows) + [()] * (A.n - G0.n))
        try:
            out = approx_mas(A, G0, best_of_both=args.best_of_both, order=args.order)
        except PreconditionViolation as exc:
            raise InputError(str(exc)) from exc
        problem = "approx-mas"
    return ResultDocument(problem, A.n, m, True, gamma=out.gamma,
                          per_vertex_cuts=[int(c) for c in cut_counts(A, out.G_bar)],
                          ordering=list(out.ordering), edges=out.G_bar.edges())


def cmd_oracle(args) -> ResultDocument:
    A = _load_graph(args)
    m = edge_count(A)
    try:
        if args.kind == "minrho":
            budgets = _load_budgets(args, A.n)
            res = exact_min_rho(A, budgets, untouchable=_load_untouchable(args, A.n))
            X = res.witness
            return ResultDocument("oracle-minrho", A.n, m, res.optimum < 0.5, rho=res.optimum,
                                  gamma=edge_count(X) / m if m else 1.0, budgets=budgets,
                                  per_vertex_cuts=[int(c) for c in cut_counts(A, X)],
                                  ordering=_ordering_of(X), edges=X.edges())
        res = exact_mas(A) if args.kind == "mas" else exact_max_mas(A)
    except OracleLimitError as exc:
        raise InputError(str(exc)) from exc
    order = list(res.witness)
    pos = np.empty(A.n, dtype=np.int64)
    pos[order] = np.arange(A.n)
    G = BoolMatrix._trusted(A.n, [row[pos[row] < pos[i]] for i, row in enumerate(A.rows)])
    doc = ResultDocument(f"oracle-{args.kind}", A.n, m, True, rho=0.0,
                         gamma=edge_count(G) / m if m else 1.0,
                         per_vertex_cuts=[int(c) for c in cut_counts(A, G)],
                         ordering=order, edges=G.edges())
    if args.kind == "maxmas":
        doc.r_star = int(backward_in_counts(A, order).max(initial=0))
    return doc


def _gen_spec(args, family: str) -> GenSpec:
    spec = GenSpec(family=family, n=args.n, p_edge=args.p_edge, k=args.k, p=args.p,
                   seed=args.seed, self_loops=getattr(args, "self_loops", False))
    try:
        spec.validate()
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return spec


def cmd_gen(args) -> str:
    family = "uniform" if args.family == "uniform" else "small-world"
    return format_edge_list(generate(_gen_spec(args, family)), one_based=args.one_based)


def cmd_bench(args) -> str:
    family = "uniform" if args.family == "uniform" else "small-world"
    spec = _gen_spec(args, family)
    workers = args.workers if args.workers is not None else default_workers()
    report = run_table([spec], args.trials, _cfg(args), workers=workers)
    if args.format == "json":
        return json.dumps(dict(report.to_dict(), schema_version=SCHEMA_VERSION), indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for c in report.cells:
        uni = c.spec.family == "uniform"
        w.writerow([SCHEMA_VERSION, c.spec.family, c.spec.n, c.spec.p_edge if uni else "",
                    "" if uni else c.spec.k, "" if uni else c.spec.p, c.trials, c.failures,
                    f"{c.mean_r_star:.6g}", f"{c.mean_gamma:.6g}", f"{c.mean_eig_count:.6g}",
                    f"{c.mean_wall_time:.6g}"])
    return buf.getvalue()


def cmd_validate(args) -> int:
    doc = ResultDocument.loads(_read(args.result))
    A = None
    if args.input:
        A = _load_graph(args, weighted=doc.problem.startswith("weighted"))
    errs = validate_document(doc, A, _load_untouchable(args, doc.n))
    for e in errs:
        print(f"invalid: {e}", file=sys.stderr)
    if not errs:
        print("valid", file=sys.stderr)
    return EXIT_INPUT if errs else EXIT_OK


def _plain(x):
    if x is None:
        return None
    x = float(x)
    return int(x) if x.is_integer() else x


# ------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", "-i", help="edge-list file ('-' or omitted: stdin)")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"),
                        help="output format (default: json; csv for bench)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--weights", action="store_true",
                        help="use the third column of the edge list as edge weights")
    common.add_argument("--untouchable", help="edge-list file of edges that may not be cut")
    common.add_argument("--one-based", action="store_true", help="vertex indices start at 1")
    common.add_argument("--debug-asserts", action="store_true",
                        help="check solver invariants at every step")
    common.add_argument("--verbose", "-v", action="store_true")

    budgets = _Parser(add_help=False)
    budgets.add_argument("--budget", type=int, help="uniform per-vertex cut budget")
    budgets.add_argument("--budgets", help="file with one budget per vertex")

    gen = _Parser(add_help=False)
    gen.add_argument("--n", type=int, default=50)
    gen.add_argument("--p-edge", type=float, default=0.3, help="uniform edge probability")
    gen.add_argument("--k", type=int, default=4, help="small-world ring degree")
    gen.add_argument("--p", type=float, default=0.1, help="small-world rewiring probability")

    p = _Parser(prog="maxmas", description="Acyclic subgraphs via spectral radius minimisation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("maxmas", parents=[common], help="minimal per-vertex cut budget")
    s.add_argument("--key", choices=("product", "ratio"), default="product",
                   help="weighted cut priority (with --weights)")
    s.add_argument("--best-of-both", action="store_true")
    s.add_argument("--order", choices=("frobenius", "greedy"), default="frobenius",
                   help="which topological order of the witness to complete")
    s.add_argument("--witness-only", action="store_true",
                   help="output the bisection witness instead of the completed ordering")

    s = sub.add_parser("minrho", parents=[common, budgets], help="minimise rho within budgets")
    s.add_argument("--key", choices=("product", "ratio"), default="product")

    s = sub.add_parser("approx-mas", parents=[common], help="complete an acyclic witness")
    s.add_argument("--witness", help="edge-list file of an acyclic subgraph")
    s.add_argument("--baseline", action="store_true", help="random-permutation baseline")
    s.add_argument("--best-of-both", action="store_true")
    s.add_argument("--order", choices=("frobenius", "greedy"), default="frobenius")

    s = sub.add_parser("oracle", parents=[common, budgets], help="exact brute force, small n")
    s.add_argument("kind", choices=("mas", "maxmas", "minrho"))

    s = sub.add_parser("gen", parents=[common, gen], help="random instance edge list")
    s.add_argument("family", choices=("uniform", "smallworld"))
    s.add_argument("--self-loops", action="store_true")

    s = sub.add_parser("bench", parents=[common, gen], help="seeded experiment table")
    s.add_argument("family", choices=("uniform", "smallworld"))
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--workers", type=int, help="processes (default: $MAXMAS_THREADS or 1)")

    s = sub.add_parser("validate", parents=[common], help="re-check a result document")
    s.add_argument("--result", required=True, help="result document (JSON or CSV)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(f"maxmas: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command in ("gen", "bench"):
            text = cmd_gen(args) if args.command == "gen" else cmd_bench(args)
            _write(text, args.output)
            return EXIT_OK
        handler = {"maxmas": cmd_maxmas, "minrho": cmd_minrho,
                   "approx-mas": cmd_approx, "oracle": cmd_oracle}[args.command]
        doc = handler(args)
    except (InputError, ValueError, IndexError) as exc:
        print(f"maxmas: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write(doc.dumps(args.format or "json"), args.output)
    if not doc.feasible:
        print("maxmas: infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def run() -> None:
    sys.exit(main())
