import itertools

import numpy as np
import pytest
from helpers import bool_matrices, complete, cycle, random_matrix
from hypothesis import given
from hypothesis import strategies as st

from maxmas.graphmat import BoolMatrix, WeightedMatrix, is_acyclic
from maxmas.greedy import (
    BudgetSpec,
    SolverConfig,
    is_row_minimal,
    min_rho_over_ball,
    minimal_row,
    weighted_minimal_row,
    weighted_row_order,
)
from maxmas.oracle import dense_spectral_radius, exact_min_rho

DEBUG = SolverConfig(debug_asserts=True)


def test_minimal_row_cuts_largest_components():
    assert minimal_row((0, 1, 2), (3, 1, 2, 5), 2) == (1,)


def test_minimal_row_budget_exceeds_row():
    assert minimal_row((0, 1, 2), np.ones(3), 5) == ()
    assert minimal_row((0, 1, 2), np.ones(3), 5, untouchable=(1,)) == (1,)


def test_minimal_row_tie_break_lowest_index():
    v = np.ones(3)
    kept = minimal_row((0, 1, 2), v, 1)
    assert kept == (1, 2)
    best = min(v[list(set((0, 1, 2)) - {c})].sum() for c in range(3))
    assert v[list(kept)].sum() == best


def test_minimal_row_respects_active_set():
    # only entries inside the active set may be cut
    assert minimal_row((0, 1, 2), (1.0, 5.0, 2.0), 1, active=(0, 2)) == (0, 1)


def test_is_row_minimal_examples():
    v = np.array([0.5, 2.0, 1.0])
    row = (0, 1, 2)
    assert is_row_minimal(minimal_row(row, v, 1), row, v, 1)
    assert not is_row_minimal(row, row, v, 1)
    # keeps the high-v entry 1 and drops the low-v entry 0: 3.0 > 1.5
    assert not is_row_minimal((1, 2), row, v, 1)


def test_is_row_minimal_is_value_based():
    v = np.array([1.0, 1.0, 3.0])
    assert is_row_minimal((0, 1), (0, 1, 2), v, 1)
    assert is_row_minimal((1, 0), (0, 1, 2), v, 1)


def test_weighted_row_order_examples():
    assert weighted_row_order((0, 1), (2.0, 1.0), (1.0, 1.5)) == [0, 1]
    v = np.array([0.3, 0.9, 0.1, 0.9])
    row = (0, 1, 2, 3)
    order = weighted_row_order(row, np.ones(4), v)
    assert order == [1, 3, 0, 2]
    for b in range(5):
        kept = set(minimal_row(row, v, b))
        assert kept == set(row) - set(order[:b])


def test_weighted_budget_skips_unaffordable_edge():
    assert weighted_minimal_row((0, 1), (2.0, 1.0), (1.0, 1.5), 1.5) == (0,)


def test_ratio_key():
    assert weighted_row_order((0, 1), (2.0, 1.0), (1.0, 1.5), key="ratio") == [1, 0]


def test_budget_spec_validation():
    A = cycle(3)
    with pytest.raises(ValueError):
        BudgetSpec((1, 1)).validate(A)
    with pytest.raises(ValueError):
        BudgetSpec((1, -1, 1)).validate(A)
    with pytest.raises(ValueError):
        BudgetSpec((0.5, 1, 1)).validate(A)
    with pytest.raises(ValueError):
        BudgetSpec((1, 1, 1), untouchable=((1,), (), ())).validate(A)
    with pytest.raises(ValueError):
        BudgetSpec((1, 1, 1), weight_key="sum").validate(A)


def test_cycle_budget_one():
    A = cycle(6)
    res = min_rho_over_ball(A, 1, DEBUG)
    assert res.rho == 0.0 and res.optimal
    assert is_acyclic(res.X_hat)
    cuts = A.row_sizes() - res.X_hat.row_sizes()
    assert cuts.max() <= 1 and cuts.sum() >= 1


def test_complete_three_budget_one():
    res = min_rho_over_ball(complete(3), 1, DEBUG)
    assert res.rho == pytest.approx(1.0)
    assert exact_min_rho(complete(3), 1).optimum == pytest.approx(1.0)


def test_budget_zero_returns_A():
    A = BoolMatrix.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)])
    res = min_rho_over_ball(A, 0)
    assert res.X_hat == A
    assert res.rho == pytest.approx(dense_spectral_radius(A))


def test_start_must_lie_in_ball():
    with pytest.raises(ValueError):
        min_rho_over_ball(cycle(3), 0, start=BoolMatrix.empty(3))


def _check_result(A, budgets, res, untouchable=None):
    X = res.X_hat
    assert X.is_subgraph_of(A)
    cuts = A.row_sizes() - X.row_sizes()
    assert np.all(cuts <= np.asarray(budgets))
    if untouchable is not None:
        for i, prot in enumerate(untouchable):
            assert set(prot) <= set(X.rows[i].tolist())
    assert res.rho == pytest.approx(dense_spectral_radius(X), abs=1e-8)
    assert (res.rho == 0.0) == is_acyclic(X)
    outer = [h["rho"] for h in res.history if h["event"] == "outer"]
    assert all(b <= a + 1e-8 * max(1.0, a) for a, b in zip(outer, outer[1:]))


@given(bool_matrices(min_n=1, max_n=5, loops=None), st.data())
def test_matches_exhaustive_minimum(A, data):
    budgets = [data.draw(st.integers(0, 3)) for _ in range(A.n)]
    res = min_rho_over_ball(A, budgets, DEBUG)
    _check_result(A, budgets, res)
    assert res.optimal
    assert res.rho == pytest.approx(exact_min_rho(A, budgets).optimum, abs=1e-6)


@given(bool_matrices(min_n=2, max_n=5, loops=False), st.data())
def test_untouchable_matches_exhaustive_minimum(A, data):
    prot = tuple(
        tuple(j for j in A.rows[i].tolist() if data.draw(st.booleans(), label=f"p{i},{j}"))
        for i in range(A.n)
    )
    budgets = [data.draw(st.integers(0, 2)) for _ in range(A.n)]
    spec = BudgetSpec(tuple(budgets), untouchable=prot)
    res = min_rho_over_ball(A, spec, DEBUG)
    _check_result(A, budgets, res, prot)
    oracle = exact_min_rho(A, budgets, untouchable=prot)
    assert res.rho == pytest.approx(oracle.optimum, abs=1e-6)


@given(bool_matrices(min_n=1, max_n=12), st.integers(0, 4))
def test_invariants_larger(A, r):
    res = min_rho_over_ball(A, r, DEBUG)
    _check_result(A, [r] * A.n, res)


def test_weighted_unit_weights_match_unweighted():
    rng = np.random.default_rng(11)
    for _ in range(30):
        A = random_matrix(rng, 7, 0.4)
        for r in (1, 2):
            plain = min_rho_over_ball(A, r)
            spec = BudgetSpec.uniform(A.n, float(r), weights=WeightedMatrix.uniform(A))
            weighted = min_rho_over_ball(A, spec)
            assert weighted.rho == pytest.approx(plain.rho, abs=1e-8)


def test_weighted_result_respects_weight_budget():
    rng = np.random.default_rng(3)
    A = random_matrix(rng, 8, 0.5)
    W = WeightedMatrix(A.n, A.rows, [rng.uniform(0.5, 3.0, r.size) for r in A.rows])
    for key in ("product", "ratio"):
        res = min_rho_over_ball(A, BudgetSpec.uniform(A.n, 2.0, weights=W, weight_key=key))
        for i in range(A.n):
            cut = ~np.isin(A.rows[i], res.X_hat.rows[i])
            assert W.weights[i][cut].sum() <= 2.0 + 1e-12


def test_exhaustive_uses_maximal_cuts_only():
    # removing entries never raises rho, so cutting exactly min(r, |row|) suffices
    rng = np.random.default_rng(9)
    for _ in range(20):
        A = random_matrix(rng, 4, 0.6)
        rows = [list(r) for r in A.rows]
        best = np.inf
        choices = [[c for k in range(2) for c in itertools.combinations(r, k)] for r in rows]
        for combo in itertools.product(*choices):
            keep = [sorted(set(r) - set(c)) for r, c in zip(rows, combo)]
            best = min(best, dense_spectral_radius(BoolMatrix(A.n, keep)))
        assert exact_min_rho(A, 1).optimum == pytest.approx(best, abs=1e-9)
