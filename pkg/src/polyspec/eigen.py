"""Generalized symmetric eigensolvers for the pencil K u = lambda M u.

solve_lowest targets the m smallest eigenvalues with shift-invert Lanczos
(ARPACK via scipy), seeded for reproducibility; dense_solve is the
full-spectrum direct oracle for small problems.  Both return M-normalized
eigenvectors with a deterministic sign convention and verify a residual
contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as dla
import scipy.sparse as sparse
import scipy.sparse.linalg as spla

from .errors import DimensionTooLargeError, NoConvergenceError

_DENSE_GUARD = 2000
_SHIFT = -1e-2
_CLUSTER_GAP = 1e-6


@dataclass
class EigenPair:
    """One eigenpair: value >= 0 and its M-normalized eigenvector.

    The vector's largest-magnitude entry is positive (sign convention).
    """

    value: float
    vector: np.ndarray


def residual(K, M, pair: EigenPair) -> float:
    """Relative residual ||K v - lambda M v|| / ((1 + lambda) ||M v||)."""
    v = pair.vector
    mv = M @ v
    r = K @ v - pair.value * mv
    return float(np.linalg.norm(r) / ((1.0 + pair.value) * np.linalg.norm(mv)))


def _postprocess(vals, vecs, M, tol):
    order = np.argsort(vals)
    pairs = []
    for idx in order:
        lam = float(vals[idx])
        v = np.ascontiguousarray(vecs[:, idx])
        nrm = float(np.sqrt(v @ (M @ v)))
        v = v / nrm
        k = int(np.argmax(np.abs(v)))
        if v[k] < 0:
            v = -v
        if lam < 0:
            if lam > -10.0 * tol:
                lam = 0.0
            # else: leave the violation visible to the caller's checks
        pairs.append(EigenPair(value=lam, vector=v))
    return pairs


def dense_solve(K, M, tol: float = 1e-10):
    """Full spectrum of the pencil by dense symmetric-definite reduction.

    Guard: refuses dimensions above 2000.
    """
    n = K.shape[0]
    if n > _DENSE_GUARD:
        raise DimensionTooLargeError(
            f"dense_solve limited to dimension {_DENSE_GUARD}, got {n}")
    Kd = K.toarray() if sparse.issparse(K) else np.asarray(K, dtype=float)
    Md = M.toarray() if sparse.issparse(M) else np.asarray(M, dtype=float)
    vals, vecs = dla.eigh(Kd, Md)
    return _postprocess(vals, vecs, M, tol)


def solve_lowest(K, M, m: int, tol: float = 1e-9, seed: int = 0,
                 maxiter: int | None = None):
    """The m smallest eigenpairs of K u = lambda M u, sorted ascending.

    Parameters
    ----------
    K, M : sparse matrices
        Symmetric PSD stiffness and SPD mass.
    m : int
        Number of eigenpairs, 1 <= m <= dim.
    tol : float
        Relative residual target per pair (>= 1e-12).
    seed : int
        Seeds the Lanczos starting vector; fixed seeds reproduce results.

    Raises
    ------
    NoConvergenceError
        If the residual contract cannot be met within the iteration budget.
    """
    n = K.shape[0]
    if not 1 <= m <= n:
        raise ValueError(f"m={m} outside 1..{n}")
    if tol < 1e-12:
        raise ValueError("tol must be >= 1e-12")
    if m >= n - 1 or n <= 3:
        # ARPACK needs k < n - 1; tiny pencils go through the dense path
        pairs = dense_solve(K, M, tol=max(tol, 1e-12))[:m]
        return pairs
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(n)
    if maxiter is None:
        maxiter = max(1000, 500 * m)
    try:
        # ARPACK runs at machine precision: a looser inner tolerance lets the
        # iteration stop before resolving all copies of a degenerate cluster
        vals, vecs = spla.eigsh(K, k=m, M=M, sigma=_SHIFT, v0=v0,
                                maxiter=maxiter, tol=0.0)
    except spla.ArpackNoConvergence as exc:
        raise NoConvergenceError(
            f"ARPACK did not converge within {maxiter} iterations",
            iterations=maxiter,
            worst_residual=None) from exc
    pairs = _postprocess(vals, vecs, M, tol)
    worst = max(residual(K, M, p) for p in pairs)
    if worst > tol:
        raise NoConvergenceError(
            f"residual contract violated: worst residual {worst:.3e} > {tol:.3e}",
            iterations=maxiter, worst_residual=worst)
    return pairs


def cluster_projector(pairs, M, rel_gap: float = _CLUSTER_GAP):
    """M-orthogonal projectors of numerically degenerate clusters.

    Groups consecutive eigenvalues whose gap is below rel_gap * max(1, value)
    and returns a list of (slice, projector) with projector = V V^T M for the
    cluster's M-orthonormal basis V.  Projectors are reproducible even when
    the basis inside a cluster is not.
    """
    out = []
    start = 0
    vals = [p.value for p in pairs]
    for i in range(1, len(pairs) + 1):
        if i == len(pairs) or vals[i] - vals[i - 1] > rel_gap * max(1.0, vals[i]):
            V = np.column_stack([p.vector for p in pairs[start:i]])
            G = V.T @ (M @ V)
            Vo = V @ np.linalg.inv(np.linalg.cholesky(G)).T
            out.append((slice(start, i), Vo @ (M @ Vo).T))
            start = i
    return out
