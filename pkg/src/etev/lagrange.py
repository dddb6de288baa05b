"""Vector Lagrange elements: the mixed pencil and the Dirichlet elasticity eigenvalue.

The mixed formulation splits the fourth-order problem with the auxiliary
field ``v = (div sigma + tau rho0) w / (rho1 - rho0)``:

    ((rho1 - rho0) v, phi) + (sigma(w), grad phi) = tau (rho0 w, phi)   phi in S_h^2
    (sigma(v), grad psi)                           = tau (rho1 v, psi)   psi in (S_h^0)^2

with ``w`` in (S_h^0)^2 and ``v`` in S_h^2. Unknowns are ordered ``[w, v]``;
rows are ordered ``[phi, psi]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .argyris import MaterialParams
from .eigensolve import EigenResult, nonsym_near, sym_def_smallest
from .mesh import Mesh
from .quadrature import triangle_rule


class LagrangeSpace:
    """Scalar continuous P1 or P2 space; vector fields are stored component-major."""

    def __init__(self, mesh: Mesh, order: int = 1):
        if order not in (1, 2):
            raise ValueError(f"Lagrange order must be 1 or 2, got {order}")
        self.mesh, self.order = mesh, order
        t = mesh.triangles
        if order == 1:
            self.local_to_global = t
            self.ndofs = mesh.nv
            boundary = mesh.boundary_vertex_mask.copy()
        else:
            self.local_to_global = np.concatenate([t, mesh.nv + mesh.triangle_edges], axis=1)
            self.ndofs = mesh.nv + mesh.ne
            boundary = np.concatenate([mesh.boundary_vertex_mask, mesh.boundary_edge_mask])
        self.boundary = boundary
        self.interior = np.flatnonzero(~boundary)

    @property
    def nloc(self) -> int:
        return 3 if self.order == 1 else 6

    def _tables(self, rule):
        """Shape values (nq, nloc) and gradients (nt, nq, nloc, 2)."""
        m = self.mesh
        v = m.vertices[m.triangles]
        area2 = 2.0 * m.areas
        # gradients of barycentric coordinates, (nt, 3, 2)
        glam = np.empty((m.nt, 3, 2))
        for k in range(3):
            a, b = v[:, (k + 1) % 3], v[:, (k + 2) % 3]
            glam[:, k, 0] = (a[:, 1] - b[:, 1]) / area2
            glam[:, k, 1] = (b[:, 0] - a[:, 0]) / area2
        L = rule.points  # (nq, 3)
        if self.order == 1:
            N = L.copy()
            G = np.broadcast_to(glam[:, None], (m.nt, len(L), 3, 2))
            return N, G
        nq = len(L)
        N = np.empty((nq, 6))
        G = np.empty((m.nt, nq, 6, 2))
        for i in range(3):
            N[:, i] = L[:, i] * (2 * L[:, i] - 1)
            G[:, :, i] = (4 * L[:, i] - 1)[None, :, None] * glam[:, None, i]
        for k in range(3):
            i, j = (k + 1) % 3, (k + 2) % 3
            N[:, 3 + k] = 4 * L[:, i] * L[:, j]
            G[:, :, 3 + k] = 4 * (L[None, :, j, None] * glam[:, None, i]
                                  + L[None, :, i, None] * glam[:, None, j])
        return N, G

    def _scatter(self, local):
        l2g = self.local_to_global
        n = self.nloc
        rows = np.repeat(l2g, n, axis=1).ravel()
        cols = np.tile(l2g, (1, n)).ravel()
        return sp.coo_matrix((local.ravel(), (rows, cols)),
                             shape=(self.ndofs, self.ndofs)).tocsr()

    def mass(self) -> sp.csr_matrix:
        """Scalar mass matrix (N_i, N_j)."""
        rule = triangle_rule(2 * self.order)
        N, _ = self._tables(rule)
        w = rule.weights[None, :] * self.mesh.areas[:, None]
        return self._scatter(np.einsum("tq,qi,qj->tij", w, N, N))

    def vector_mass(self) -> sp.csr_matrix:
        Ms = self.mass()
        return sp.block_diag([Ms, Ms], format="csr")

    def elasticity(self, params: MaterialParams) -> sp.csr_matrix:
        """Vector matrix of (sigma(u), grad v), component-major."""
        rule = triangle_rule(max(1, 2 * (self.order - 1)))
        _, G = self._tables(rule)
        w = rule.weights[None, :] * self.mesh.areas[:, None]
        K = {ab: self._scatter(np.einsum("tq,tqi,tqj->tij", w, G[..., a], G[..., b]))
             for ab, (a, b) in {"xx": (0, 0), "xy": (0, 1), "yy": (1, 1)}.items()}
        mu, lam = params.mu, params.lam
        B00 = (2 * mu + lam) * K["xx"] + mu * K["yy"]
        B11 = mu * K["xx"] + (2 * mu + lam) * K["yy"]
        B01 = lam * K["xy"] + mu * K["xy"].T
        return sp.bmat([[B00, B01], [B01.T, B11]], format="csr")

    def vector_interior(self) -> np.ndarray:
        return np.concatenate([self.interior, self.interior + self.ndofs])


@dataclass(frozen=True, eq=False)
class MixedPencil:
    """``K x = tau M x`` with x = [w (interior, both components), v (all DOFs)]."""

    K: sp.csr_matrix
    M: sp.csr_matrix
    n_w: int
    n_v: int
    meta: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return self.n_w + self.n_v


def assemble_mixed(mesh: Mesh, params: MaterialParams, order: int = 1) -> MixedPencil:
    """Assemble the mixed pencil on (S_h^0)^2 x S_h^2."""
    if params.rho1 == params.rho0:
        raise ValueError("rho1 == rho0 makes the v-coupling vanish (degenerate pencil)")
    S = LagrangeSpace(mesh, order)
    I = S.vector_interior()
    E = S.elasticity(params)
    Mv = S.vector_mass()
    d = params.rho1 - params.rho0
    E_FI, E_IF = E[:, I], E[I, :]
    M_FI, M_IF = Mv[:, I], Mv[I, :]
    nI, nF = len(I), Mv.shape[0]
    K = sp.bmat([[E_FI, d * Mv], [None, E_IF]], format="csr")
    M = sp.bmat([[params.rho0 * M_FI, None], [None, params.rho1 * M_IF]], format="csr")
    if K.shape != (nI + nF, nI + nF):
        raise AssertionError("mixed pencil is not square")
    return MixedPencil(K, M, nI, nF, {"order": order, "params": params,
                                      "ndofs_scalar": S.ndofs})


def solve_mixed_eigs(p: MixedPencil, k: int, target: complex, tol: float = 1e-8) -> EigenResult:
    """The k eigenvalues of the mixed pencil nearest ``target`` (conjugates kept)."""
    return nonsym_near(p.K, p.M, k, target, tol)


def first_real(p: MixedPencil, target: float = 1.0, k: int = 12, tol: float = 1e-8,
               imag_tol: float = 1e-8) -> complex:
    """Smallest positive real eigenvalue among the ``k`` nearest ``target``."""
    res = solve_mixed_eigs(p, k, target, tol)
    v = res.values
    real = v[(np.abs(v.imag) <= imag_tol * np.abs(v)) & (v.real > 0)].real
    if not len(real):
        raise RuntimeError(f"no positive real eigenvalue among the {k} nearest {target}")
    return float(real.min())


def first_complex(p: MixedPencil, target: complex, k: int = 6, tol: float = 1e-8,
                  imag_tol: float = 1e-8) -> complex:
    """Complex eigenvalue (negative imaginary part) nearest ``target``."""
    res = solve_mixed_eigs(p, k, target, tol)
    v = res.values
    cplx = v[np.abs(v.imag) > imag_tol * np.abs(v)]
    if not len(cplx):
        raise RuntimeError(f"no complex eigenvalue among the {k} nearest {target}")
    cplx = np.where(cplx.imag > 0, cplx.conjugate(), cplx)
    return complex(cplx[np.argmin(np.abs(cplx - complex(target.real, -abs(target.imag))))])


def elasticity_pencil(mesh: Mesh, params: MaterialParams, order: int = 1):
    """Stiffness and mass on (S_h^0)^2 for the Dirichlet elasticity eigenproblem."""
    S = LagrangeSpace(mesh, order)
    I = S.vector_interior()
    if not len(I):
        raise ValueError("mesh has no interior degrees of freedom")
    A = S.elasticity(params)[I][:, I]
    M = S.vector_mass()[I][:, I]
    return A.tocsr(), M.tocsr()


def solve_elasticity_eig1(mesh: Mesh, params: MaterialParams, order: int = 1,
                          return_vector: bool = False):
    """Smallest Dirichlet elasticity eigenvalue delta_1."""
    A, M = elasticity_pencil(mesh, params, order)
    res = sym_def_smallest(A, M, 1)
    if return_vector:
        return float(res.values[0]), res.vectors[:, 0]
    return float(res.values[0])
