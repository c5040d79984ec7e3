"""Acyclic subgraphs with per-vertex cut budgets via spectral radius minimisation."""

from .graphmat import (
    BoolMatrix,
    FrobeniusForm,
    WeightedMatrix,
    edge_count,
    frobenius_factorize,
    is_acyclic,
    permute,
    restrict,
    strongly_connected_components,
    topological_order,
)
from .greedy import (
    BudgetSpec,
    MinRhoResult,
    SolverConfig,
    SolverInvariantError,
    is_row_minimal,
    min_rho_over_ball,
    minimal_row,
    weighted_row_order,
)
from .harness import ExperimentReport, GenSpec, gen_small_world, gen_uniform, run_table
from .oracle import OracleLimitError, OracleResult, exact_mas, exact_max_mas, exact_min_rho
from .solver import (
    MasApproximation,
    MaxMasSolution,
    PreconditionViolation,
    Problem1Result,
    approx_mas,
    approx_mas_constrained,
    baseline_random_permutation,
    gamma,
    solve_max_mas,
    solve_problem1,
    solve_problem2,
    solve_problem3,
)
from .spectral import (
    EigenConvergenceError,
    EigenPair,
    MinimalLeadingEigenvector,
    PreconditionError,
    basic_set,
    leading_pair_irreducible,
    minimal_leading_eigenvector,
    rho_of_boolean,
)

__version__ = "0.1.0"
