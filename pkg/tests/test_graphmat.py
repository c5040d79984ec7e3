import networkx as nx
import numpy as np
import pytest
from helpers import bool_matrices, chain, complete, cycle
from hypothesis import given

from maxmas.graphmat import (
    BoolMatrix,
    WeightedMatrix,
    edge_count,
    frobenius_factorize,
    is_acyclic,
    permute,
    reachable_from,
    restrict,
    strongly_connected_components,
    topological_order,
)


def test_rows_hold_in_neighbours():
    M = BoolMatrix.from_edges(3, [(0, 1), (2, 1)])
    assert M.rows[1].tolist() == [0, 2]
    assert M[1, 0] and not M[0, 1]
    assert M.edges() == [(0, 1), (2, 1)]


def test_constructor_sorts_and_dedups():
    M = BoolMatrix(3, [[2, 1, 2], [], [0]])
    assert M.rows[0].tolist() == [1, 2]
    assert not M.rows[0].flags.writeable


@pytest.mark.parametrize("n, rows, exc", [
    (2, [[2], []], IndexError),
    (2, [[-1], []], IndexError),
    (2, [[0]], ValueError),
    (-1, [], ValueError),
])
def test_constructor_rejects(n, rows, exc):
    with pytest.raises(exc):
        BoolMatrix(n, rows)


def test_weighted_rejects_nonpositive():
    with pytest.raises(ValueError):
        WeightedMatrix(2, [[1], []], [[0.0], []])
    W = WeightedMatrix.from_edges(2, [(0, 1, 2.5)])
    assert W.weight(1, 0) == 2.5
    assert W.pattern == BoolMatrix.from_edges(2, [(0, 1)])


def test_dense_round_trip():
    D = np.array([[0, 1, 0], [1, 0, 1], [1, 1, 1]], dtype=float)
    M = BoolMatrix.from_dense(D)
    assert np.array_equal(M.to_dense(), D)
    assert np.array_equal(M.to_csr().toarray(), D)
    assert M.transpose().transpose() == M
    assert np.array_equal(M.transpose().to_dense(), D.T)


def test_is_acyclic_examples():
    assert not is_acyclic(cycle(3))
    assert is_acyclic(chain(3))
    assert not is_acyclic(BoolMatrix.from_edges(1, [(0, 0)]))
    assert is_acyclic(BoolMatrix.empty(0))


def test_scc_examples():
    two = BoolMatrix.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    assert sorted(strongly_connected_components(two)) == [(0, 1), (2, 3)]
    assert sorted(strongly_connected_components(chain(3))) == [(0,), (1,), (2,)]
    assert strongly_connected_components(complete(3)) == [(0, 1, 2)]


def test_frobenius_examples():
    F = frobenius_factorize(cycle(5))
    assert F.q == 1
    F = frobenius_factorize(chain(3))
    assert F.q == 3
    # sinks first, so reversing gives a sources-first topological order
    assert list(reversed(F.order)) == [0, 1, 2]


def test_frobenius_two_cycles_with_bridge():
    # 2-cycle {0,1} with an edge 1 -> 2 into the 2-cycle {2,3}
    M = BoolMatrix.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)])
    F = frobenius_factorize(M)
    assert F.blocks == ((2, 3), (0, 1))
    assert F.order == (2, 3, 0, 1)
    expected = np.array([
        [0, 1, 0, 1],
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ])
    assert np.array_equal(permute(M, F.order).to_dense(), expected)


def test_restrict_examples():
    M = cycle(3)
    assert restrict(M, [0, 1, 2]) == M
    assert restrict(M, [0, 1]).edges() == [(0, 1)]
    assert restrict(M, []).n == 0
    with pytest.raises(IndexError):
        restrict(M, [0, 3])
    with pytest.raises(ValueError):
        restrict(M, [1, 0])


def test_edge_count_examples():
    assert edge_count(cycle(3)) == 3
    assert edge_count(BoolMatrix.empty(4)) == 0
    assert edge_count(complete(4)) == 12


def test_reachable_from():
    assert reachable_from(chain(4), [1]) == [1, 2, 3]


def _nx(M):
    G = nx.DiGraph()
    G.add_nodes_from(range(M.n))
    G.add_edges_from(M.edges())
    return G


@given(bool_matrices(max_n=12))
def test_scc_matches_networkx(M):
    ours = sorted(strongly_connected_components(M))
    theirs = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(_nx(M)))
    assert ours == theirs


@given(bool_matrices(max_n=12))
def test_frobenius_is_block_upper_triangular(M):
    F = frobenius_factorize(M)
    assert sorted(F.order) == list(range(M.n))
    assert sorted(i for b in F.blocks for i in b) == list(range(M.n))
    bidx = F.block_index(M.n)
    P = permute(M, F.order)
    pb = bidx[list(F.order)]
    for p, row in enumerate(P.rows):
        assert np.all(pb[row] >= pb[p])
    for blk in F.blocks:
        if len(blk) > 1:
            assert nx.is_strongly_connected(_nx(restrict(M, blk)))


@given(bool_matrices(max_n=12))
def test_acyclic_iff_trivial_blocks(M):
    F = frobenius_factorize(M)
    trivial = all(len(b) == 1 for b in F.blocks) and not M.self_loops()
    assert is_acyclic(M) == trivial == nx.is_directed_acyclic_graph(_nx(M))


@given(bool_matrices(max_n=10))
def test_topological_order(M):
    order = topological_order(M)
    if not is_acyclic(M):
        assert order is None
        return
    pos = {v: k for k, v in enumerate(order)}
    assert all(pos[u] < pos[v] for u, v in M.edges())


@given(bool_matrices(max_n=9))
def test_restrict_preserves_entries(M):
    S = list(range(0, M.n, 2))
    R = restrict(M, S)
    D, RD = M.to_dense(), R.to_dense()
    for a, i in enumerate(S):
        for b, j in enumerate(S):
            assert RD[a, b] == D[i, j]


def test_permute_weighted():
    W = WeightedMatrix.from_edges(3, [(0, 1, 2.0), (1, 2, 3.0)])
    P = permute(W, [2, 1, 0])
    assert P.weight(1, 2) == 2.0 and P.weight(0, 1) == 3.0
