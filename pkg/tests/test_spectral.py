import numpy as np
import pytest
from helpers import bool_matrices, complete, cycle, random_matrix
from hypothesis import given
from hypothesis import strategies as st

from maxmas.graphmat import (
    BoolMatrix,
    WeightedMatrix,
    is_acyclic,
    restrict,
    strongly_connected_components,
)
from maxmas.oracle import dense_spectral_radius
from maxmas.spectral import (
    DEFAULT_TOL,
    EigenConvergenceError,
    PreconditionError,
    basic_set,
    leading_pair_irreducible,
    minimal_leading_eigenvector,
    residual,
    rho_of_boolean,
)


def test_leading_pair_examples():
    p = leading_pair_irreducible(cycle(3))
    assert p.value == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(p.vector, 1.0)

    p = leading_pair_irreducible(BoolMatrix.empty(1))
    assert p.value == 0.0 and p.vector.tolist() == [1.0]

    p = leading_pair_irreducible(complete(2, loops=True))
    assert p.value == pytest.approx(2.0, abs=1e-10)
    assert np.allclose(p.vector, 1.0)


@pytest.mark.parametrize("method", ["power", "auto"])
def test_leading_pair_residual(method):
    rng = np.random.default_rng(5)
    M = random_matrix(rng, 60, 0.1)
    B = restrict(M, max(strongly_connected_components(M), key=len))
    p = leading_pair_irreducible(B, method=method)
    assert residual(B, p.value, p.vector) <= DEFAULT_TOL * max(1.0, p.value)
    assert p.vector.max() == pytest.approx(1.0)
    assert np.all(p.vector > 0)
    assert p.value == pytest.approx(dense_spectral_radius(B), abs=1e-8)


def test_large_block_uses_fallbacks_correctly():
    # long cycle plus one chord: slow for plain power iteration
    n = 400
    edges = [(i, (i + 1) % n) for i in range(n)] + [(0, n // 2)]
    B = BoolMatrix.from_edges(n, edges)
    p = leading_pair_irreducible(B)
    assert residual(B, p.value, p.vector) <= DEFAULT_TOL * max(1.0, p.value)
    assert p.value == pytest.approx(dense_spectral_radius(B), abs=1e-8)


def test_power_iteration_reports_nonconvergence():
    with pytest.raises(EigenConvergenceError) as err:
        leading_pair_irreducible(cycle(50), method="power", max_iter=3,
                                 v0=np.arange(1, 51, dtype=float))
    assert err.value.residual > 0


def test_weighted_block():
    W = WeightedMatrix.from_edges(2, [(0, 1, 4.0), (1, 0, 1.0)])
    p = leading_pair_irreducible(W)
    assert p.value == pytest.approx(2.0)


def test_rho_examples():
    assert rho_of_boolean(BoolMatrix.from_edges(3, [(0, 1), (1, 2)])) == 0.0
    assert rho_of_boolean(cycle(3)) == pytest.approx(1.0)
    assert rho_of_boolean(complete(4)) == pytest.approx(3.0)


@given(bool_matrices(max_n=8))
def test_rho_matches_dense_eigenvalues(M):
    rho = rho_of_boolean(M)
    ref = np.abs(np.linalg.eigvals(M.to_dense())).max() if M.n else 0.0
    assert rho == pytest.approx(dense_spectral_radius(M), abs=1e-6)
    # LAPACK on the whole (possibly defective) matrix is only a loose check
    assert abs(rho - ref) < 1e-3


@given(bool_matrices(max_n=12))
def test_acyclic_iff_rho_below_half(M):
    assert is_acyclic(M) == (rho_of_boolean(M) < 0.5)


@given(bool_matrices(min_n=1, max_n=10), st.integers(0, 2**32 - 1))
def test_collatz_wielandt_lower_bound(M, seed):
    rng = np.random.default_rng(seed)
    u = rng.random(M.n) * (rng.random(M.n) < 0.8)
    if not u.any():
        u[0] = 1.0
    Mu = M.to_dense() @ u
    lam = min(Mu[i] / u[i] for i in range(M.n) if u[i] > 0)
    assert rho_of_boolean(M) >= lam - 1e-9


def test_mle_irreducible_equals_perron():
    M = complete(4)
    m = minimal_leading_eigenvector(M)
    assert m.support == (0, 1, 2, 3)
    assert np.allclose(m.vector, leading_pair_irreducible(M).vector)


def test_mle_disjoint_cycles_picks_one_block():
    M = BoolMatrix.from_edges(5, [(0, 1), (1, 0), (2, 3), (3, 4), (4, 2)])
    m = minimal_leading_eigenvector(M)
    assert m.value == pytest.approx(1.0)
    # both blocks attain rho; the one holding the smallest index wins
    assert m.support == (0, 1)
    assert np.all(m.vector[[0, 1]] > 0) and np.all(m.vector[2:] == 0)


def test_mle_single_edge():
    m = minimal_leading_eigenvector(BoolMatrix.from_edges(2, [(0, 1)]))
    assert m.value == 0.0
    assert m.support == (1,)
    assert m.vector.tolist() == [0.0, 1.0]


def test_mle_extends_downstream():
    # loops on {0,1} give rho 2; the 2-cycle {2,3} downstream gets positive mass
    M = BoolMatrix.from_edges(4, [(0, 0), (1, 1), (0, 1), (1, 0), (2, 3), (3, 2), (1, 2)])
    m = minimal_leading_eigenvector(M)
    assert m.value == pytest.approx(2.0)
    assert m.support == (0, 1, 2, 3)
    D = M.to_dense()
    assert np.allclose(D @ m.vector, 2.0 * m.vector, atol=1e-9)
    assert m.basic == (0, 1)


@given(bool_matrices(min_n=1, max_n=10))
def test_mle_properties(M):
    m = minimal_leading_eigenvector(M)
    D = M.to_dense()
    assert m.value == pytest.approx(dense_spectral_radius(M), abs=1e-6)
    assert np.all(m.vector >= 0) and m.vector.max() == pytest.approx(1.0)
    assert np.abs(D @ m.vector - m.value * m.vector).max() <= 1e-8 * max(1.0, m.value)
    S = list(m.support)
    assert S == np.flatnonzero(m.vector > 0).tolist()
    # restricted to its support the vector is a positive leading eigenvector
    R = restrict(M, S)
    assert np.all(m.vector[S] > 1e-12)
    assert rho_of_boolean(R) == pytest.approx(m.value, abs=1e-8)
    # no strictly smaller support carries a leading eigenvector: the chosen
    # block is the only rho-attaining block of the restriction
    assert basic_set(R) == tuple(S.index(i) for i in m.basic)


def _transpose_support(D, rho):
    w, V = np.linalg.eig(D.T)
    k = np.argmin(np.abs(w - rho))
    x = np.real(V[:, k])
    x = x / x[np.argmax(np.abs(x))]
    return tuple(np.flatnonzero(x > 1e-8).tolist())


def test_basic_set_examples():
    assert basic_set(cycle(4)) == (0, 1, 2, 3)

    bridge = BoolMatrix.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)])
    m = minimal_leading_eigenvector(bridge)
    R = restrict(bridge, m.support)
    assert m.support == (2, 3)
    assert basic_set(R) == (0, 1)

    # last block is the looped singleton 0, which feeds vertex 1
    M = BoolMatrix.from_edges(2, [(0, 0), (0, 1)])
    assert basic_set(M) == (0,)
    assert _transpose_support(M.to_dense(), 1.0) == (0,)


def test_basic_set_precondition():
    two = BoolMatrix.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    with pytest.raises(PreconditionError):
        basic_set(two)


@given(bool_matrices(min_n=1, max_n=8))
def test_basic_set_matches_transpose_eigenvector(M):
    m = minimal_leading_eigenvector(M)
    if m.value == 0.0:
        return
    R = restrict(M, m.support)
    H = basic_set(R)
    assert H == _transpose_support(R.to_dense(), m.value)
