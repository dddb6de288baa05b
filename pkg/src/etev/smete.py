"""Secant iteration for real transmission eigenvalues.

A real transmission eigenvalue is a root of ``f_i(tau) = gamma_i(tau) - tau``,
where ``gamma_i(tau)`` is the i-th smallest eigenvalue of the pencil
``A_tau x = gamma B x`` on the clamped Argyris space. B is assembled once per
mesh; A_tau is recombined from cached tau-independent blocks at each step.
"""
from __future__ import annotations

import csv
import logging
import threading
from dataclasses import dataclass, field

import numpy as np

from .argyris import ArgyrisSpace, MaterialParams, combine_Atau
from .eigensolve import DEFAULT_TOL, EigenSolveError, sym_def_smallest
from .mesh import Mesh

log = logging.getLogger(__name__)

DEFAULT_X0, DEFAULT_X1 = 0.5, 0.6
DEFAULT_MAXIT = 50


class SecantError(RuntimeError):
    pass


class SmeteContext:
    """Assembled blocks for one mesh and parameter set, plus a per-tau cache.

    ``nev`` is the minimum number of eigenvalues computed per solve; asking
    for several branches at once lets them share the same eigensolves.
    """

    def __init__(self, mesh: Mesh, params: MaterialParams, *, nev: int = 1,
                 eig_tol: float = 1e-10, space: ArgyrisSpace | None = None):
        params.contrast  # noqa: B018  (rejects equal densities early)
        if not params.coercive:
            log.warning("rho1 >= 1 >= rho0 does not hold; A_tau may be indefinite and "
                        "shift-invert about 0 may miss the algebraically smallest values")
        self.mesh, self.params = mesh, params
        self.space = space or ArgyrisSpace(mesh)
        self.blocks = self.space.reduced_blocks(params)
        B = self.blocks["elastic"]
        self.B = ((B + B.T) * 0.5).tocsr()
        self.nev = nev
        self.eig_tol = eig_tol
        self.solves = 0
        self._cache: dict[float, np.ndarray] = {}
        self._lock = threading.Lock()

    @property
    def dimension(self) -> int:
        return self.B.shape[0]

    def A(self, tau: float):
        return combine_Atau(self.blocks, self.params, tau)

    def gammas(self, tau: float, k: int) -> np.ndarray:
        """The ``k`` smallest gamma at ``tau`` (cached)."""
        tau = float(tau)
        with self._lock:
            hit = self._cache.get(tau)
        if hit is not None and len(hit) >= k:
            return hit[:k]
        kk = max(k, self.nev)
        res = sym_def_smallest(self.A(tau), self.B, kk, tol=max(self.eig_tol, 1e-12))
        with self._lock:
            self.solves += 1
            self._cache[tau] = res.values
        return res.values[:k]


def f_h(tau: float, i: int, ctx: SmeteContext):
    """(gamma_i(tau), gamma_i(tau) - tau) with 1-based branch index ``i``."""
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if i < 1:
        raise ValueError("branch index starts at 1")
    g = float(ctx.gammas(tau, i)[i - 1])
    return g, g - tau


@dataclass
class SecantTrace:
    index: int
    iterates: list = field(default_factory=list)  # (tau, gamma, f)
    root: float = float("nan")
    converged: bool = False
    iterations: int = 0
    message: str = ""

    def rows(self):
        """``(iter, tau, gamma, f)`` rows; the two starting points are iterations -1 and 0."""
        return [(k - 1, *it) for k, it in enumerate(self.iterates)]


def secant_solve(i: int, ctx: SmeteContext, x0: float = DEFAULT_X0, x1: float = DEFAULT_X1,
                 tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT,
                 update: str = "f") -> SecantTrace:
    """Secant iteration for the root of ``f_i``.

    The stopping test is ``|gamma(tau) - tau| <= tol``. ``update="f"`` applies
    the secant step to ``f = gamma - tau``; ``update="gamma"`` applies it to
    gamma itself, which converges to a zero of gamma rather than of f and is
    kept only for comparison.
    """
    if update not in ("f", "gamma"):
        raise ValueError("update must be 'f' or 'gamma'")
    if not 0 < x0 < x1:
        raise ValueError(f"need 0 < x0 < x1, got x0={x0}, x1={x1}")
    trace = SecantTrace(i)
    g0, f0 = f_h(x0, i, ctx)
    g1, f1 = f_h(x1, i, ctx)
    trace.iterates += [(x0, g0, f0), (x1, g1, f1)]
    delta = abs(x1 - x0)
    it = 0
    while delta > tol and it < maxit:
        num, den = (f1, f1 - f0) if update == "f" else (g1, g1 - g0)
        if den == 0:
            raise SecantError(f"branch {i}: secant denominator vanished at x0={x0}, x1={x1}; "
                              "try different starting points")
        tau = x1 - num * (x1 - x0) / den
        if not tau > 0:
            trace.message = f"secant step left (0, inf): tau={tau}"
            break
        g, f = f_h(tau, i, ctx)
        trace.iterates.append((tau, g, f))
        delta = abs(f)
        x0, x1, g0, g1, f0, f1 = x1, tau, g1, g, f1, f
        it += 1
    trace.iterations = it
    trace.root = x1
    trace.converged = delta <= tol and not trace.message
    if not trace.converged and not trace.message:
        trace.message = f"no convergence in {maxit} iterations (|f| = {delta:.3e})"
    return trace


def smallest_N(N: int, ctx: SmeteContext, x0: float = DEFAULT_X0, x1: float = DEFAULT_X1,
               tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT) -> list[SecantTrace]:
    """One secant trace per branch 1..N; a failing branch does not stop the others."""
    if N < 1:
        raise ValueError("N must be >= 1")
    ctx.nev = max(ctx.nev, N)
    traces = []
    for i in range(1, N + 1):
        try:
            traces.append(secant_solve(i, ctx, x0, x1, tol, maxit))
        except (SecantError, EigenSolveError) as exc:
            log.warning("branch %d failed: %s", i, exc)
            traces.append(SecantTrace(i, message=str(exc)))
    return sorted(traces, key=lambda t: (np.nan_to_num(t.root, nan=np.inf), t.index))


def branch_near(ctx: SmeteContext, tau: float, max_branches: int = 40,
                simple: bool = False, rel_tol: float = 1e-6) -> int:
    """1-based branch whose gamma at ``tau`` is closest to ``tau``.

    With ``simple=True`` branches whose gamma is repeated (to ``rel_tol``) are
    skipped, e.g. to follow a radially symmetric mode of the disk past the
    degenerate pairs around it.
    """
    g = ctx.gammas(tau, max_branches)
    order = np.argsort(np.abs(g - tau))
    if not simple:
        return int(order[0]) + 1
    for j in order:
        if j == len(g) - 1:
            continue  # its partner may lie beyond the computed range
        near = np.abs(np.delete(g, j) - g[j]) <= rel_tol * abs(g[j])
        if not near.any():
            return int(j) + 1
    raise ValueError(f"no simple branch among the first {max_branches} at tau={tau}")


def root_near(ctx: SmeteContext, tau_guess: float, width: float = 0.1,
              tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT,
              max_branches: int = 40, simple: bool = False) -> SecantTrace:
    """Secant root on the branch passing closest to ``tau_guess``.

    Useful for isolated eigenvalues far up the spectrum, where starting near
    zero would follow a different branch.
    """
    i = branch_near(ctx, tau_guess, max_branches, simple)
    return secant_solve(i, ctx, tau_guess - width, tau_guess + width, tol, maxit)


def distinct_roots(traces, rel_tol: float = 1e-6):
    """Converged roots merged by value: list of (root, multiplicity, branch indices)."""
    out = []
    for t in sorted((t for t in traces if t.converged), key=lambda t: t.root):
        if out and abs(t.root - out[-1][0]) <= rel_tol * abs(t.root):
            r, mult, idx = out[-1]
            out[-1] = (r, mult + 1, idx + [t.index])
        else:
            out.append((t.root, 1, [t.index]))
    return out


@dataclass(frozen=True)
class MonotoneInterval:
    """f is decreasing on (0, upper)."""

    upper: float
    delta1: float
    provenance: str = ""


def monotone_interval(delta1: float, params: MaterialParams, provenance: str = "") -> MonotoneInterval:
    if not delta1 > 0:
        raise ValueError("delta1 must be positive")
    r0, r1 = params.rho0, params.rho1
    return MonotoneInterval(delta1 * (r0 + r1) / (2 * r0 * r1), delta1, provenance)


def sample_f(interval, npoints: int, branches, ctx: SmeteContext):
    """Table of f_j(tau) on an equispaced grid: (taus, values of shape (npoints, len(branches)))."""
    lo, hi = map(float, interval)
    if not 0 < lo <= hi:
        raise ValueError("interval must lie in (0, inf)")
    branches = list(branches)
    ctx.nev = max(ctx.nev, max(branches))
    taus = np.linspace(lo, hi, npoints)
    F = np.array([[f_h(t, j, ctx)[1] for j in branches] for t in taus])
    return taus, F


def write_f_csv(path_or_file, taus, F, branches, header=()):
    _write_csv(path_or_file, ["tau"] + [f"f_{j}" for j in branches],
               ([t, *row] for t, row in zip(taus, F)), header)


def write_traces_csv(path_or_file, traces, header=()):
    rows = ([t.index, *r] for t in traces for r in t.rows())
    _write_csv(path_or_file, ["branch", "iter", "tau", "gamma", "f"], rows, header)


def _write_csv(target, columns, rows, header):
    own = isinstance(target, str)
    fh = open(target, "w", newline="") if own else target
    try:
        for line in header:
            fh.write(f"# {line}\n")
        w = csv.writer(fh)
        w.writerow(columns)
        for r in rows:
            w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    finally:
        if own:
            fh.close()
