import numpy as np
from hypothesis import strategies as st

from maxmas.graphmat import BoolMatrix


def cycle(n: int) -> BoolMatrix:
    return BoolMatrix.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def chain(n: int) -> BoolMatrix:
    return BoolMatrix.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int, loops: bool = False) -> BoolMatrix:
    D = np.ones((n, n), dtype=bool)
    if not loops:
        np.fill_diagonal(D, False)
    return BoolMatrix.from_dense(D)


def random_matrix(rng, n: int, p: float, loops: bool = False) -> BoolMatrix:
    D = rng.random((n, n)) < p
    if not loops:
        np.fill_diagonal(D, False)
    return BoolMatrix.from_dense(D)


@st.composite
def bool_matrices(draw, min_n=0, max_n=8, loops=None):
    """Random Boolean matrices of varied density; loops sometimes allowed."""
    n = draw(st.integers(min_n, max_n))
    p = draw(st.sampled_from([0.0, 0.1, 0.2, 0.35, 0.5, 0.8, 1.0]))
    seed = draw(st.integers(0, 2**32 - 1))
    with_loops = draw(st.booleans()) if loops is None else loops
    return random_matrix(np.random.default_rng(seed), n, p, with_loops)
