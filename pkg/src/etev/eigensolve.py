"""Generalized eigenvalue kernels.

Two problems occur: the k smallest eigenvalues of a symmetric-definite
pencil (A, B), and the k eigenvalues of a real nonsymmetric pencil (K, M)
nearest a complex target. Both use shift-invert Arnoldi/Lanczos (ARPACK)
with a dense LAPACK fallback for small problems; every returned pair is
re-checked by an explicit residual.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
MAX_RESTARTS = 300
SYM_DENSE_LIMIT = 3000
NONSYM_DENSE_LIMIT = 2000


class EigenSolveError(RuntimeError):
    """Factorization failure or non-convergence; carries the best residual."""

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


@dataclass
class EigenResult:
    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    info: dict = field(default_factory=dict)


def _norm1(A):
    if sp.issparse(A):
        return float(abs(A).sum(axis=0).max())
    return float(np.abs(A).sum(axis=0).max())


def relative_residuals(A, B, values, vectors):
    """``||A x - g B x|| / ((||A|| + |g| ||B||) ||x||)`` column by column."""
    nA, nB = _norm1(A), _norm1(B)
    R = A @ vectors - (B @ vectors) * values[None, :]
    xn = np.linalg.norm(vectors, axis=0)
    return np.linalg.norm(R, axis=0) / ((nA + np.abs(values) * nB) * xn)


def check_spd(B) -> None:
    """Raise EigenSolveError unless the symmetric matrix B is positive definite."""
    if sp.issparse(B):
        try:
            lu = spla.splu(sp.csc_matrix(B), permc_spec="MMD_AT_PLUS_A",
                           diag_pivot_thresh=0.0, options={"SymmetricMode": True})
        except RuntimeError as exc:
            raise EigenSolveError(f"B is not SPD: factorization failed ({exc})") from exc
        d = lu.U.diagonal()
        ok = np.all(d > 0) and np.array_equal(lu.perm_r, lu.perm_c)
    else:
        try:
            sla.cholesky(np.asarray(B))
            ok = True
        except sla.LinAlgError:
            ok = False
    if not ok:
        raise EigenSolveError("B is not SPD: symmetric factorization has a non-positive pivot")


def sym_def_smallest(A, B, k, tol=DEFAULT_TOL, *, sigma=0.0, dense_limit=SYM_DENSE_LIMIT,
                     maxiter=MAX_RESTARTS, check=False) -> EigenResult:
    """k algebraically smallest eigenpairs of ``A x = g B x``.

    The sparse route runs shift-invert Lanczos about ``sigma`` and therefore
    returns the eigenvalues nearest ``sigma``; the default 0 gives the
    smallest ones when A is positive definite. Pass a ``sigma`` below the
    wanted cluster otherwise. Eigenvectors are B-orthonormal.
    """
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    if check:
        check_spd(B)
    result = None
    if k < n - 1 and n > 200 and sp.issparse(A):
        try:
            vals, vecs = spla.eigsh(sp.csc_matrix(A), k=k, M=sp.csc_matrix(B), sigma=sigma,
                                    which="LM", tol=tol * 1e-2, maxiter=maxiter)
            order = np.argsort(vals)
            result = EigenResult(vals[order], vecs[:, order], np.empty(0),
                                 {"method": "shift-invert lanczos", "sigma": sigma})
        except (spla.ArpackNoConvergence, RuntimeError) as exc:
            log.warning("sparse symmetric solve failed (%s)", exc)
            if n > dense_limit:
                raise EigenSolveError(f"Lanczos failed for n={n}: {exc}") from exc
    if result is None:
        if n > dense_limit and sp.issparse(A):
            raise EigenSolveError(f"dense fallback refused for n={n} > {dense_limit}")
        Ad = A.toarray() if sp.issparse(A) else np.asarray(A)
        Bd = B.toarray() if sp.issparse(B) else np.asarray(B)
        try:
            vals, vecs = sla.eigh(Ad, Bd, subset_by_index=[0, k - 1])
        except sla.LinAlgError as exc:
            raise EigenSolveError(f"B is not SPD: {exc}") from exc
        result = EigenResult(vals, vecs, np.empty(0), {"method": "dense"})
    result.residuals = relative_residuals(A, B, result.values, result.vectors)
    worst = float(result.residuals.max())
    if worst > tol:
        raise EigenSolveError(f"residual {worst:.2e} exceeds tol {tol:.0e}", worst)
    return result


def _normalize_columns(X):
    idx = np.argmax(np.abs(X), axis=0)
    piv = X[idx, np.arange(X.shape[1])]
    return X / piv[None, :]


def _with_conjugates(vals, vecs, imag_tol):
    """Snap near-real values to the real axis and add missing conjugate partners."""
    out_v, out_x = [], []
    for j, lam in enumerate(vals):
        x = vecs[:, j]
        if abs(lam.imag) <= imag_tol * max(1.0, abs(lam)):
            out_v.append(complex(lam.real, 0.0))
            out_x.append(x)
            continue
        out_v.append(lam)
        out_x.append(x)
    for j in range(len(out_v)):
        lam = out_v[j]
        if lam.imag == 0:
            continue
        if not any(abs(lam.conjugate() - v) <= 1e-8 * max(1.0, abs(lam)) for v in out_v):
            out_v.append(lam.conjugate())
            out_x.append(out_x[j].conjugate())
    return np.array(out_v, dtype=complex), np.column_stack(out_x)


def nonsym_near(K, M, k, target, tol=DEFAULT_TOL, *, dense_limit=NONSYM_DENSE_LIMIT,
                maxiter=MAX_RESTARTS, imag_tol=1e-10) -> EigenResult:
    """Eigenpairs of ``K x = t M x`` nearest ``target``.

    M may be singular (infinite eigenvalues are discarded). Complex
    eigenvalues are returned together with their conjugates, so the result
    can hold one more pair than requested. Values are ordered by distance to
    the target; eigenvectors are scaled so their largest entry is 1.
    """
    n = K.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    target = complex(target)
    vals = vecs = None
    method = "dense"
    if n > dense_limit or (sp.issparse(K) and k < n - 2 and n > 200):
        try:
            S = sp.csc_matrix(K - target * M, dtype=complex)
            lu = spla.splu(S)
        except RuntimeError as exc:
            raise EigenSolveError(f"factorization of K - target M failed: {exc}") from exc
        Mc = sp.csr_matrix(M)
        op = spla.LinearOperator((n, n), matvec=lambda x: lu.solve(Mc @ x), dtype=complex)
        try:
            theta, vecs = spla.eigs(op, k=min(k + 2, n - 2), which="LM",
                                    tol=tol * 1e-2, maxiter=maxiter)
        except spla.ArpackNoConvergence as exc:
            if n > dense_limit:
                raise EigenSolveError(f"Arnoldi did not converge: {exc}") from exc
            theta = None
        if theta is not None:
            vals = target + 1.0 / theta
            method = "shift-invert arnoldi"
    if vals is None:
        Kd = K.toarray() if sp.issparse(K) else np.asarray(K)
        Md = M.toarray() if sp.issparse(M) else np.asarray(M)
        vals, vecs = sla.eig(Kd, Md)
        finite = np.isfinite(vals)
        vals, vecs = vals[finite], vecs[:, finite]
    order = np.argsort(np.abs(vals - target), kind="stable")[:k]
    vals, vecs = _with_conjugates(vals[order], vecs[:, order], imag_tol)
    vecs = _normalize_columns(vecs)
    res = relative_residuals(K, M, vals, vecs)
    result = EigenResult(vals, vecs, res, {"method": method, "target": target})
    worst = float(res.max()) if len(res) else 0.0
    if worst > tol:
        raise EigenSolveError(f"residual {worst:.2e} exceeds tol {tol:.0e}", worst)
    return result
