"""Perron-Frobenius routines for nonnegative sparse matrices.

Irreducible blocks are solved by power iteration on ``B + I`` (primitive, so
periodic blocks still converge) or, for larger blocks, by ARPACK on the same
shifted operator.  Reducible matrices are handled block by block through the
Frobenius form, with the eigenvector continued into downstream blocks by
exact linear solves instead of iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spl

from .graphmat import FrobeniusForm, IndexSet, frobenius_factorize, restrict

DEFAULT_TOL = 1e-10
DEFAULT_RHO_RTOL = 1e-8
# blocks up to this size use plain power iteration
POWER_MAX_SIZE = 32


class EigenConvergenceError(RuntimeError):
    """Raised when an eigensolver misses its residual target."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (last residual {residual:.3e})")
        self.residual = residual


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


@dataclass(frozen=True)
class MinimalLeadingEigenvector:
    """Leading eigenvector with inclusion-minimal support.

    ``basic`` is the Frobenius block that carries the eigenvalue; restricted to
    ``support`` the matrix has this block as its last block, so it is also the
    basic set of that restriction.
    """

    value: float
    vector: np.ndarray
    support: IndexSet
    basic: IndexSet


def _csr(B) -> sp.csr_matrix:
    if sp.issparse(B):
        return sp.csr_matrix(B, dtype=float)
    if isinstance(B, np.ndarray):
        return sp.csr_matrix(B.astype(float))
    return B.to_csr()


def residual(B, value: float, vector: np.ndarray) -> float:
    csr = _csr(B)
    if csr.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(csr @ vector - value * vector)))


def _power_shifted(csr, tol, v0, max_iter):
    s = csr.shape[0]
    v = np.ones(s) if v0 is None else np.maximum(np.asarray(v0, dtype=float), 0.0)
    if not v.any():
        v = np.ones(s)
    v = v / v.max()
    Bv = csr @ v
    res = np.inf
    for _ in range(max_iter):
        w = Bv + v
        mu = w.max()
        v = w / mu
        lam = mu - 1.0
        Bv = csr @ v
        res = float(np.max(np.abs(Bv - lam * v)))
        if res <= tol * max(1.0, lam):
            return max(lam, 0.0), v, res
    raise EigenConvergenceError(f"power iteration did not converge in {max_iter} steps", res)


def _normalize_perron(vec) -> np.ndarray:
    v = np.real(np.asarray(vec)).ravel()
    if v.sum() < 0:
        v = -v
    v = np.abs(v)
    return v / v.max()


def _arpack(csr, v0):
    s = csr.shape[0]
    shifted = csr + sp.identity(s, format="csr")
    start = None
    if v0 is not None:
        start = np.maximum(np.asarray(v0, dtype=float), 0.0) + 1e-3
    vals, vecs = spl.eigs(shifted, k=1, which="LM", v0=start, tol=0)
    return float(np.real(vals[0])) - 1.0, _normalize_perron(vecs[:, 0])


def _dense(csr):
    vals, vecs = np.linalg.eig(csr.toarray())
    k = int(np.argmax(np.real(vals)))
    return float(np.real(vals[k])), _normalize_perron(vecs[:, k])


def leading_pair_irreducible(B, tol: float = DEFAULT_TOL, *, v0=None, method: str = "auto",
                             max_iter: int | None = None) -> EigenPair:
    """Perron eigenpair of an irreducible (or 1 x 1) nonnegative matrix.

    ``method`` is ``"power"`` (shifted power iteration only, raises on failure)
    or ``"auto"`` (power iteration for small blocks, ARPACK for large ones,
    each falling back to the other and finally to dense LAPACK).
    The vector is normalised to unit max-norm.
    """
    csr = _csr(B)
    s = csr.shape[0]
    if s == 0:
        raise ValueError("empty block")
    if s == 1:
        return EigenPair(float(csr[0, 0]), np.ones(1))
    cap = max_iter if max_iter is not None else 50 * s + 1000
    if method == "power":
        lam, v, _ = _power_shifted(csr, tol, v0, cap)
        return EigenPair(lam, v)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")

    attempts = []
    if s <= POWER_MAX_SIZE:
        attempts = ["power", "dense"]
    else:
        attempts = ["arpack", "power", "dense"]
    last_res = np.inf
    for how in attempts:
        try:
            if how == "power":
                lam, v, _ = _power_shifted(csr, tol, v0, cap)
                return EigenPair(lam, v)
            lam, v = _arpack(csr, v0) if how == "arpack" else _dense(csr)
        except (EigenConvergenceError, spl.ArpackNoConvergence, spl.ArpackError) as exc:
            last_res = getattr(exc, "residual", last_res)
            continue
        lam = max(lam, 0.0)
        last_res = float(np.max(np.abs(csr @ v - lam * v)))
        if last_res <= tol * max(1.0, lam):
            return EigenPair(lam, v)
        # polish: a few shifted power steps usually close the last digits
        try:
            lam, v, _ = _power_shifted(csr, tol, v, 200)
            return EigenPair(lam, v)
        except EigenConvergenceError as exc:
            last_res = min(last_res, exc.residual)
    raise EigenConvergenceError(f"no eigensolver converged on a {s} x {s} block", last_res)


def _block_radii(M, F: FrobeniusForm, tol, warm=None):
    radii = np.zeros(F.q)
    pairs: dict[int, EigenPair] = {}
    for b, blk in enumerate(F.blocks):
        if len(blk) == 1:
            i = blk[0]
            vals = M.row_values(i)
            row = M.rows[i]
            k = np.searchsorted(row, i)
            radii[b] = float(vals[k]) if k < row.size and row[k] == i else 0.0
            continue
        v0 = None
        if warm is not None:
            w = np.asarray(warm)[list(blk)]
            if w.max() > 0:
                v0 = w
        pair = leading_pair_irreducible(restrict(M, blk), tol, v0=v0)
        pairs[b] = pair
        radii[b] = pair.value
    return radii, pairs


def _block_successors(M, bidx: np.ndarray, q: int) -> list[set[int]]:
    """succ[b] = blocks that receive an edge from block b."""
    succ: list[set[int]] = [set() for _ in range(q)]
    for i, row in enumerate(M.rows):
        bi = bidx[i]
        for bj in np.unique(bidx[row]).tolist():
            if bj != bi:
                succ[bj].add(int(bi))
    return succ


def block_spectral_radii(M, F: FrobeniusForm | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    F = F if F is not None else frobenius_factorize(M)
    return _block_radii(M, F, tol)[0]


def rho_of_boolean(M, tol: float = DEFAULT_TOL) -> float:
    """Spectral radius as the maximum over irreducible diagonal blocks."""
    if M.n == 0:
        return 0.0
    return float(block_spectral_radii(M, None, tol).max())


def minimal_leading_eigenvector(M, F: FrobeniusForm | None = None, tol: float = DEFAULT_TOL,
                                rho_rtol: float = DEFAULT_RHO_RTOL, warm=None
                                ) -> MinimalLeadingEigenvector:
    """Leading eigenvector of ``M`` whose support is minimal by inclusion.

    Picks a diagonal block attaining the spectral radius that has no other
    such block downstream of it (ties: smallest vertex index), takes its
    Perron vector and extends it to every vertex reachable from the block by
    solving ``(rho I - B_jj) u_j = (coupling into block j)`` block by block.
    Everything else is zero.
    """
    n = M.n
    if n == 0:
        raise ValueError("empty matrix has no eigenvector")
    F = F if F is not None else frobenius_factorize(M)
    radii, pairs = _block_radii(M, F, tol, warm)
    rho = float(radii.max())
    attaining = radii >= rho - rho_rtol * max(1.0, rho)

    bidx = F.block_index(n)
    succ = _block_successors(M, bidx, F.q)
    # successors always sit at smaller block positions, so ascending order works
    att_below = np.zeros(F.q, dtype=bool)
    for b in range(F.q):
        att_below[b] = any(attaining[c] or att_below[c] for c in succ[b])
    final = [b for b in range(F.q) if attaining[b] and not att_below[b]]
    chosen = min(final, key=lambda b: F.blocks[b][0])

    reach = {chosen}
    frontier = [chosen]
    while frontier:
        b = frontier.pop()
        for c in succ[b]:
            if c not in reach:
                reach.add(c)
                frontier.append(c)

    u = np.zeros(n)
    blk = list(F.blocks[chosen])
    u[blk] = pairs[chosen].vector if chosen in pairs else 1.0
    for b in range(chosen - 1, -1, -1):
        if b not in reach:
            continue
        idx = list(F.blocks[b])
        rhs = np.empty(len(idx))
        for a, i in enumerate(idx):
            row = M.rows[i]
            off = bidx[row] != b
            rhs[a] = M.row_values(i)[off] @ u[row[off]]
        if len(idx) == 1:
            u[idx[0]] = rhs[0] / (rho - radii[b])
        else:
            sub = restrict(M, idx).to_csr()
            lhs = rho * sp.identity(len(idx), format="csr") - sub
            if len(idx) <= 200:
                u[idx] = sla.solve(lhs.toarray(), rhs)
            else:
                u[idx] = spl.spsolve(lhs.tocsc(), rhs)
    u = np.maximum(u, 0.0)
    u /= u.max()
    support = tuple(sorted(i for b in reach for i in F.blocks[b]))
    return MinimalLeadingEigenvector(rho, u, support, F.blocks[chosen])


def basic_set(M, F: FrobeniusForm | None = None, tol: float = DEFAULT_TOL,
              rho_rtol: float = DEFAULT_RHO_RTOL, check: bool = True) -> IndexSet:
    """Index set of the last Frobenius block.

    Valid when ``M`` has a strictly positive minimal leading eigenvector, in
    which case only the last block attains the spectral radius; ``check``
    verifies that and raises PreconditionError otherwise.
    """
    F = F if F is not None else frobenius_factorize(M)
    if F.q == 0:
        raise PreconditionError("empty matrix has no basic set")
    if check:
        radii = block_spectral_radii(M, F, tol)
        rho = radii.max()
        hits = np.flatnonzero(radii >= rho - rho_rtol * max(1.0, rho))
        if hits.tolist() != [F.q - 1]:
            raise PreconditionError(
                f"basic set undefined: blocks {hits.tolist()} attain rho={rho:.6g}, "
                f"expected only the last block {F.q - 1}"
            )
    return F.blocks[-1]
