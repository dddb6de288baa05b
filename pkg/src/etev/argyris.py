"""Vector Argyris (C1 quintic) elements on the clamped space V.

V consists of H2 vector fields with ``w = 0`` and ``sigma(w) nu = 0`` on the
boundary. Both conditions together force ``grad w = 0`` on the boundary, which
is imposed through the nodal degrees of freedom: values and gradients vanish
at boundary vertices, edge-normal derivatives vanish at boundary midpoints,
and the Hessian at a boundary vertex is ``c * n n^T`` on a straight stretch
(one free second derivative) and zero at a corner.

Local DOF ordering per scalar component is
``(u, u_x, u_y, u_xx, u_xy, u_yy)`` at vertices 0, 1, 2, then the normal
derivative at the midpoints of local edges 0, 1, 2 (edge k is opposite
vertex k). The normal of an edge is the global one: the tangent from the
lower to the higher vertex index rotated clockwise.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .mesh import Mesh
from .quadrature import QuadRule, triangle_rule

MONOMIALS = np.array([(a, t - a) for t in range(6) for a in range(t, -1, -1)])
NLOC = 21
DEFAULT_QUAD_DEGREE = 10
COND_LIMIT = 1e12
CHUNK = 512

# vertex slots
VAL, DX, DY, DXX, DXY, DYY = range(6)


class AssemblyError(RuntimeError):
    pass


@dataclass(frozen=True)
class MaterialParams:
    """Lame constants and the two constant mass densities."""

    mu: float = 1 / 16
    lam: float = 1 / 4
    rho0: float = 1.0
    rho1: float = 4.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("mu must be positive")
        if not self.lam + self.mu > 0:
            raise ValueError("lambda + mu must be positive")
        if not (self.rho0 > 0 and self.rho1 > 0):
            raise ValueError("densities must be positive")

    @property
    def contrast(self) -> float:
        """rho1 - rho0; equal densities are excluded from the problem."""
        d = self.rho1 - self.rho0
        if d == 0:
            raise ZeroDivisionError("rho1 == rho0: equal densities are excluded "
                                    "(the fourth-order operator carries 1/(rho1 - rho0))")
        return d

    @property
    def coercive(self) -> bool:
        return self.rho1 >= 1.0 >= self.rho0


PAPER_PARAMS = MaterialParams(1 / 16, 1 / 4, 1.0, 4.0)
PAPER_PARAMS_2 = MaterialParams(1 / 5, 1 / 5, 1 / 20, 3.0)


def div_sigma(hess1, hess2, params: MaterialParams):
    """Divergence of the stress from second derivatives of both components.

    ``hess1`` and ``hess2`` are ``(u_xx, u_xy, u_yy)`` for the two displacement
    components (arrays broadcast together).
    """
    mu, lam = params.mu, params.lam
    a1xx, a1xy, a1yy = hess1
    a2xx, a2xy, a2yy = hess2
    return ((2 * mu + lam) * a1xx + mu * a1yy + (lam + mu) * a2xy,
            (lam + mu) * a1xy + mu * a2xx + (2 * mu + lam) * a2yy)


# --- monomials ------------------------------------------------------------


def _falling(n, k):
    out = np.ones_like(n)
    for j in range(k):
        out = out * np.maximum(n - j, 0)
    return out


def monomial_derivative(xi, eta, p, q):
    """d^p/dxi^p d^q/deta^q of all 21 monomials, shape ``xi.shape + (21,)``."""
    a, b = MONOMIALS[:, 0], MONOMIALS[:, 1]
    coef = _falling(a, p) * _falling(b, q)
    ea, eb = np.maximum(a - p, 0), np.maximum(b - q, 0)
    xi = np.asarray(xi, dtype=float)[..., None]
    eta = np.asarray(eta, dtype=float)[..., None]
    return coef * xi ** ea * eta ** eb


# --- local basis ----------------------------------------------------------


@dataclass(frozen=True)
class LocalArgyrisBasis:
    """Shape functions of one triangle in scaled local monomials.

    ``coefficients[:, k]`` are the monomial coefficients of shape function k
    in the variables ``xi = (x - center) / scale``.
    """

    vertices: np.ndarray
    normals: np.ndarray
    center: np.ndarray
    scale: float
    coefficients: np.ndarray
    condition: float

    def jet(self, x, y):
        """Values and physical derivatives (6, npts, 21) of all shape functions."""
        return _jet(self.coefficients[None], self.center[None], np.array([self.scale]),
                    np.atleast_1d(x)[None], np.atleast_1d(y)[None])[:, 0]

    def dof_matrix(self):
        """Apply the 21 DOF functionals to the 21 shape functions."""
        return _dof_rows(self.vertices[None], self.normals[None], self.center[None],
                         np.array([self.scale]), physical=True)[0] @ self.coefficients


def _geometry(verts):
    center = verts.mean(axis=1)
    d = np.linalg.norm(verts[:, [1, 2, 0]] - verts[:, [2, 0, 1]], axis=2)
    return center, d.max(axis=1)


def _dof_rows(verts, normals, center, scale, physical=False):
    """(nt, 21, 21) matrix of DOF functionals applied to the monomials.

    With ``physical=False`` the k-th order functionals are multiplied by
    ``scale**k`` so that the matrix is independent of the triangle size.
    """
    nt = len(verts)
    xi = (verts - center[:, None]) / scale[:, None, None]
    rows = np.empty((nt, NLOC, NLOC))
    s = scale[:, None, None] if physical else np.ones((nt, 1, 1))
    for i in range(3):
        x, y = xi[:, i, 0], xi[:, i, 1]
        rows[:, 6 * i + VAL] = monomial_derivative(x, y, 0, 0)
        rows[:, 6 * i + DX] = monomial_derivative(x, y, 1, 0) / s[:, 0]
        rows[:, 6 * i + DY] = monomial_derivative(x, y, 0, 1) / s[:, 0]
        rows[:, 6 * i + DXX] = monomial_derivative(x, y, 2, 0) / s[:, 0] ** 2
        rows[:, 6 * i + DXY] = monomial_derivative(x, y, 1, 1) / s[:, 0] ** 2
        rows[:, 6 * i + DYY] = monomial_derivative(x, y, 0, 2) / s[:, 0] ** 2
    for k in range(3):
        m = 0.5 * (xi[:, (k + 1) % 3] + xi[:, (k + 2) % 3])
        gx = monomial_derivative(m[:, 0], m[:, 1], 1, 0)
        gy = monomial_derivative(m[:, 0], m[:, 1], 0, 1)
        rows[:, 18 + k] = (normals[:, k, 0, None] * gx + normals[:, k, 1, None] * gy) / s[:, 0]
    return rows


def _dof_orders():
    order = np.zeros(NLOC, dtype=int)
    for i in range(3):
        order[6 * i + DX] = order[6 * i + DY] = 1
        order[6 * i + DXX: 6 * i + DYY + 1] = 2
    order[18:] = 1
    return order


_ORDERS = _dof_orders()


def _coefficients(verts, normals):
    center, scale = _geometry(verts)
    V = _dof_rows(verts, normals, center, scale)
    cond = np.linalg.cond(V)
    bad = np.flatnonzero(~(cond < COND_LIMIT))
    if len(bad):
        return center, scale, None, cond
    C = np.linalg.inv(V)
    # shape function for the physical functional k: column k times scale**order
    C *= scale[:, None, None] ** _ORDERS[None, None, :]
    return center, scale, C, cond


def build_local_basis(vertices, normals=None) -> LocalArgyrisBasis:
    """Argyris shape functions of the triangle with (3, 2) ``vertices``.

    ``normals`` (3, 2) fix the direction of the edge-normal functionals; the
    default is the outward unit normal of each edge.
    """
    verts = np.asarray(vertices, dtype=float).reshape(1, 3, 2)
    if normals is None:
        normals = _outward_normals(verts)
    normals = np.asarray(normals, dtype=float).reshape(1, 3, 2)
    center, scale, C, cond = _coefficients(verts, normals)
    if C is None:
        raise AssemblyError(f"degenerate triangle {verts[0].tolist()} "
                            f"(condition {cond[0]:.2e})")
    return LocalArgyrisBasis(verts[0], normals[0], center[0], float(scale[0]), C[0],
                             float(cond[0]))


def _outward_normals(verts):
    out = np.empty_like(verts)
    for k in range(3):
        a, b = verts[:, (k + 1) % 3], verts[:, (k + 2) % 3]
        t = b - a
        n = np.stack([t[:, 1], -t[:, 0]], axis=1) / np.linalg.norm(t, axis=1)[:, None]
        inward = verts[:, k] - 0.5 * (a + b)
        n *= np.where(np.sum(n * inward, axis=1) > 0, -1.0, 1.0)[:, None]
        out[:, k] = n
    return out


def _jet(C, center, scale, x, y):
    """Shape-function jets (6, nt, npts, 21): value, x, y, xx, xy, yy."""
    xi = (x - center[:, 0, None]) / scale[:, None]
    eta = (y - center[:, 1, None]) / scale[:, None]
    s = scale[:, None, None]
    out = []
    for (p, q) in ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)):
        m = monomial_derivative(xi, eta, p, q)
        out.append(np.einsum("tqm,tmk->tqk", m, C) / s ** (p + q))
    return np.stack(out)


# --- global space ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ArgyrisDofMap:
    """Global numbering of the vector Argyris space.

    Component c, vertex v, slot k -> ``c * ncomp + 6 v + k``; component c,
    edge e -> ``c * ncomp + 6 nv + e`` with ``ncomp = 6 nv + ne``.
    """

    nv: int
    ne: int
    local_to_global: np.ndarray  # (nt, 42)
    edge_sign: np.ndarray  # (nt, 3): +1 where the global normal points outward

    @property
    def ncomp(self) -> int:
        return 6 * self.nv + self.ne

    @property
    def ndofs(self) -> int:
        return 2 * self.ncomp

    def vertex_dof(self, comp, v, slot):
        return comp * self.ncomp + 6 * v + slot

    def edge_dof(self, comp, e):
        return comp * self.ncomp + 6 * self.nv + e


def edge_normals(mesh: Mesh) -> np.ndarray:
    """Global unit normals (ne, 2) of all edges."""
    e = mesh.edges
    t = mesh.vertices[e[:, 1]] - mesh.vertices[e[:, 0]]
    ln = np.hypot(t[:, 0], t[:, 1])
    if np.any(ln == 0):
        raise AssemblyError(f"edge {int(np.argmin(ln))} has zero length")
    return np.column_stack([t[:, 1], -t[:, 0]]) / ln[:, None]


def build_dofmap(mesh: Mesh) -> ArgyrisDofMap:
    nv, ne = mesh.nv, mesh.ne
    nc = 6 * nv + ne
    t, te = mesh.triangles, mesh.triangle_edges
    scalar = np.concatenate([(6 * t[:, :, None] + np.arange(6)).reshape(-1, 18),
                             6 * nv + te], axis=1)
    l2g = np.concatenate([scalar, scalar + nc], axis=1)
    verts = mesh.vertices[t]
    glob = edge_normals(mesh)[te]
    sign = np.sign(np.sum(glob * _outward_normals(verts), axis=2)).astype(int)
    l2g.setflags(write=False)
    sign.setflags(write=False)
    return ArgyrisDofMap(nv, ne, l2g, sign)


# --- boundary constraints -------------------------------------------------

INTERIOR, STRAIGHT, CORNER = 0, 1, 2


@dataclass(frozen=True, eq=False)
class ConstraintMap:
    """Full DOF vector = ``matrix @ reduced DOF vector``.

    ``vertex_kind`` classifies vertices as INTERIOR, STRAIGHT or CORNER;
    ``free_slot`` is the retained second-derivative slot at straight boundary
    vertices (-1 elsewhere).
    """

    matrix: sp.csr_matrix
    vertex_kind: np.ndarray
    free_slot: np.ndarray
    collinear_tol: float = 1e-12

    @property
    def nfull(self) -> int:
        return self.matrix.shape[0]

    @property
    def nreduced(self) -> int:
        return self.matrix.shape[1]

    def expand(self, x):
        return self.matrix @ x

    def reduce(self, A):
        """Project a full matrix onto the reduced space: C^T A C."""
        C = self.matrix
        return (C.T @ A @ C).tocsr()


def build_constraints(mesh: Mesh, dofs: ArgyrisDofMap, collinear_tol=1e-12) -> ConstraintMap:
    nfull = dofs.ndofs
    master = np.arange(nfull)
    ratio = np.ones(nfull)
    zero = np.zeros(nfull, dtype=bool)
    kind = np.zeros(mesh.nv, dtype=int)
    free_slot = np.full(mesh.nv, -1)

    be = mesh.boundary_edges
    tang = mesh.vertices[be[:, 1]] - mesh.vertices[be[:, 0]]
    ln = np.hypot(tang[:, 0], tang[:, 1])
    if np.any(ln == 0):
        raise AssemblyError(f"boundary edge {int(np.argmin(ln))} has zero length")
    tang /= ln[:, None]
    incident = {}
    for k, (a, b) in enumerate(be):
        incident.setdefault(int(a), []).append(k)
        incident.setdefault(int(b), []).append(k)

    for v, ks in incident.items():
        straight = False
        if len(ks) == 2:
            t1, t2 = tang[ks[0]], tang[ks[1]]
            straight = abs(t1[0] * t2[1] - t1[1] * t2[0]) <= collinear_tol
        kind[v] = STRAIGHT if straight else CORNER
        for c in range(2):
            base = dofs.vertex_dof(c, v, 0)
            zero[base + VAL] = zero[base + DX] = zero[base + DY] = True
            if not straight:
                zero[base + DXX: base + DYY + 1] = True
                continue
            tx, ty = tang[ks[0]]
            # Hessian = c n n^T with n = (-ty, tx)
            if abs(tx) >= abs(ty):
                slot = DYY
                master[base + DXX] = master[base + DXY] = base + DYY
                ratio[base + DXX] = ty ** 2 / tx ** 2
                ratio[base + DXY] = -ty / tx
            else:
                slot = DXX
                master[base + DYY] = master[base + DXY] = base + DXX
                ratio[base + DYY] = tx ** 2 / ty ** 2
                ratio[base + DXY] = -tx / ty
            free_slot[v] = slot

    edge_index = {tuple(e): i for i, e in enumerate(mesh.edges.tolist())}
    for a, b in np.sort(be, axis=1).tolist():
        e = edge_index[(a, b)]
        zero[dofs.edge_dof(0, e)] = zero[dofs.edge_dof(1, e)] = True

    free = (~zero) & (master == np.arange(nfull))
    red = np.full(nfull, -1)
    red[free] = np.arange(int(free.sum()))
    rows = np.flatnonzero(~zero)
    cols = red[master[rows]]
    if np.any(cols < 0):
        raise AssemblyError("constraint references an eliminated DOF")
    C = sp.csr_matrix((ratio[rows], (rows, cols)), shape=(nfull, int(free.sum())))
    for a in (kind, free_slot):
        a.setflags(write=False)
    return ConstraintMap(C, kind, free_slot, collinear_tol)


# --- the space ------------------------------------------------------------


def _threads():
    try:
        return max(1, int(os.environ.get("ETEV_THREADS", "1")))
    except ValueError:
        return 1


class ArgyrisSpace:
    """Vector Argyris space on a mesh with the clamped boundary constraints."""

    def __init__(self, mesh: Mesh, quad_degree: int = DEFAULT_QUAD_DEGREE):
        self.mesh = mesh
        self.rule: QuadRule = triangle_rule(quad_degree)
        self.dofs = build_dofmap(mesh)
        self.normals = edge_normals(mesh)[mesh.triangle_edges]
        verts = mesh.vertices[mesh.triangles]
        self.center, self.scale, C, cond = _coefficients(verts, self.normals)
        if C is None:
            bad = int(np.flatnonzero(~(cond < COND_LIMIT))[0])
            raise AssemblyError(f"triangle {bad} is nearly degenerate "
                                f"(condition estimate {cond[bad]:.2e})")
        self.coefficients = C

    @cached_property
    def constraints(self) -> ConstraintMap:
        return build_constraints(self.mesh, self.dofs)

    @property
    def nfull(self) -> int:
        return self.dofs.ndofs

    @property
    def nreduced(self) -> int:
        return self.constraints.nreduced

    def local_basis(self, k) -> LocalArgyrisBasis:
        return LocalArgyrisBasis(self.mesh.vertices[self.mesh.triangles[k]],
                                 self.normals[k], self.center[k], float(self.scale[k]),
                                 self.coefficients[k], 0.0)

    # evaluation -----------------------------------------------------------

    def jet_at(self, tri, x, y):
        """Scalar shape-function jets (6, len(tri), npts, 21) at points per triangle."""
        tri = np.atleast_1d(tri)
        return _jet(self.coefficients[tri], self.center[tri], self.scale[tri],
                    np.atleast_2d(x), np.atleast_2d(y))

    def quadrature_points(self, tri):
        verts = self.mesh.vertices[self.mesh.triangles[tri]]
        return np.einsum("qi,tid->tqd", self.rule.points, verts)

    def evaluate(self, coeffs, tri, x, y):
        """Jet (2 components, 6 derivatives, npts) of a full-DOF field.

        Point j lies in triangle ``tri[j]``.
        """
        tri = np.asarray(tri)
        x, y = np.asarray(x, float), np.asarray(y, float)
        J = self.jet_at(tri, x[:, None], y[:, None])[:, :, 0, :]  # (6, np, 21)
        loc = np.asarray(coeffs)[self.dofs.local_to_global[tri]]  # (np, 42)
        return np.stack([np.einsum("dpk,pk->dp", J, loc[:, :NLOC]),
                         np.einsum("dpk,pk->dp", J, loc[:, NLOC:])])

    def interpolate(self, jet):
        """Argyris interpolant of a smooth vector field.

        ``jet(x, y)`` returns an array (2, 6, npts) with value and first and
        second derivatives ``(u, u_x, u_y, u_xx, u_xy, u_yy)`` per component.
        """
        m, d = self.mesh, self.dofs
        out = np.zeros(d.ndofs)
        vj = np.asarray(jet(m.vertices[:, 0], m.vertices[:, 1]), float)
        mid = 0.5 * (m.vertices[m.edges[:, 0]] + m.vertices[m.edges[:, 1]])
        ej = np.asarray(jet(mid[:, 0], mid[:, 1]), float)
        n = edge_normals(m)
        for c in range(2):
            out[c * d.ncomp: c * d.ncomp + 6 * d.nv] = vj[c].T.reshape(-1)
            out[c * d.ncomp + 6 * d.nv: (c + 1) * d.ncomp] = n[:, 0] * ej[c, 1] + n[:, 1] * ej[c, 2]
        return out

    # element matrices -----------------------------------------------------

    def _chunk_tables(self, tri, params):
        """Vector basis tables at quadrature points for triangles ``tri``."""
        xq = self.quadrature_points(tri)
        J = self.jet_at(tri, xq[..., 0], xq[..., 1])  # (6, nt, nq, 21)
        nt, nq = J.shape[1], J.shape[2]
        z = np.zeros((nt, nq, NLOC))
        N, Nx, Ny, Nxx, Nxy, Nyy = J
        phi = np.stack([np.concatenate([N, z], -1), np.concatenate([z, N], -1)], -1)
        # grad[..., a, b] = d phi_a / d x_b
        grad = np.empty((nt, nq, 2 * NLOC, 2, 2))
        grad[..., :NLOC, 0, 0], grad[..., :NLOC, 0, 1] = Nx, Ny
        grad[..., :NLOC, 1, :] = 0.0
        grad[..., NLOC:, 0, :] = 0.0
        grad[..., NLOC:, 1, 0], grad[..., NLOC:, 1, 1] = Nx, Ny
        l1 = div_sigma((Nxx, Nxy, Nyy), (z, z, z), params)
        l2 = div_sigma((z, z, z), (Nxx, Nxy, Nyy), params)
        Lphi = np.stack([np.concatenate([l1[0], l2[0]], -1),
                         np.concatenate([l1[1], l2[1]], -1)], -1)
        w = self.rule.weights[None, :] * self.mesh.areas[tri][:, None]
        return w, phi, grad, Lphi

    def element_blocks(self, params: MaterialParams, tri=None):
        """Per-triangle (nt, 42, 42) matrices.

        Returns a dict with ``mass`` (phi, psi), ``elastic``
        (sigma(phi), grad psi), ``divsigma`` (div sigma phi, div sigma psi)
        and ``coupling`` with entry (i, j) = (phi_i, div sigma phi_j).
        """
        if tri is None:
            tri = np.arange(self.mesh.nt)
        mu, lam = params.mu, params.lam
        w, phi, grad, Lphi = self._chunk_tables(tri, params)
        eps = 0.5 * (grad + np.swapaxes(grad, -1, -2))
        div = grad[..., 0, 0] + grad[..., 1, 1]
        return {
            "mass": np.einsum("tq,tqia,tqja->tij", w, phi, phi),
            "elastic": (2 * mu * np.einsum("tq,tqiab,tqjab->tij", w, eps, eps)
                        + lam * np.einsum("tq,tqi,tqj->tij", w, div, div)),
            "divsigma": np.einsum("tq,tqia,tqja->tij", w, Lphi, Lphi),
            "coupling": np.einsum("tq,tqia,tqja->tij", w, phi, Lphi),
        }

    def element_atau_direct(self, params: MaterialParams, tau: float, tri=None):
        """Per-triangle A_tau straight from its definition."""
        if tri is None:
            tri = np.arange(self.mesh.nt)
        w, phi, _, Lphi = self._chunk_tables(tri, params)
        shifted = Lphi + tau * params.rho0 * phi
        return (np.einsum("tq,tqia,tqja->tij", w, shifted, shifted) / params.contrast
                + tau ** 2 * params.rho0 * np.einsum("tq,tqia,tqja->tij", w, phi, phi))

    def _assemble(self, local_fn, names):
        nt = self.mesh.nt
        chunks = [np.arange(s, min(s + CHUNK, nt)) for s in range(0, nt, CHUNK)]
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            parts = list(pool.map(local_fn, chunks))  # ordered: deterministic sum
        l2g = self.dofs.local_to_global
        rows = np.repeat(l2g, 2 * NLOC, axis=1).ravel()
        cols = np.tile(l2g, (1, 2 * NLOC)).ravel()
        n = self.nfull
        out = {}
        for name in names:
            data = np.concatenate([p[name] for p in parts]).ravel()
            out[name] = sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
        return out

    def assemble_full(self, params: MaterialParams, names=("mass", "elastic",
                                                           "divsigma", "coupling")):
        """Global unconstrained matrices of :meth:`element_blocks`."""
        return self._assemble(lambda tri: self.element_blocks(params, tri), names)

    def reduced_blocks(self, params: MaterialParams):
        """Constrained ``mass``, ``elastic``, ``divsigma``, ``coupling`` matrices."""
        full = self.assemble_full(params)
        return {k: self.constraints.reduce(v) for k, v in full.items()}


# --- pencils --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Pencil:
    """Generalized eigenproblem ``A x = gamma B x`` in reduced coordinates."""

    A: sp.csr_matrix
    B: sp.csr_matrix
    meta: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return self.A.shape[0]


def _symmetrize(A):
    return ((A + A.T) * 0.5).tocsr()


def assemble_B(space: ArgyrisSpace, params: MaterialParams) -> sp.csr_matrix:
    """Reduced elasticity matrix (sigma(phi), grad psi)."""
    full = space.assemble_full(params, names=("elastic",))["elastic"]
    return _symmetrize(space.constraints.reduce(full))


def assemble_Atau(space: ArgyrisSpace, params: MaterialParams, tau: float) -> sp.csr_matrix:
    """Reduced A_tau assembled directly from its definition."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    params.contrast  # noqa: B018  (raises for equal densities)
    full = space._assemble(
        lambda tri: {"A": space.element_atau_direct(params, tau, tri)}, ("A",))["A"]
    return _symmetrize(space.constraints.reduce(full))


def combine_Atau(blocks, params: MaterialParams, tau: float) -> sp.csr_matrix:
    """A_tau from cached tau-independent blocks (constant densities).

    ``divsigma / d + tau rho0 / d (coupling + coupling^T) + tau^2 rho0 rho1 / d mass``
    with ``d = rho1 - rho0``.
    """
    if tau < 0:
        raise ValueError("tau must be non-negative")
    d = params.contrast
    C = blocks["coupling"]
    A = (blocks["divsigma"] / d + (tau * params.rho0 / d) * (C + C.T)
         + (tau ** 2 * params.rho0 * params.rho1 / d) * blocks["mass"])
    return _symmetrize(A)


def write_coo(A, path) -> None:
    """Dump a sparse matrix as ``i j value`` lines (0-based)."""
    A = sp.coo_matrix(A)
    with open(path, "w") as fh:
        fh.write(f"% {A.shape[0]} {A.shape[1]} {A.nnz}\n")
        for i, j, v in zip(A.row.tolist(), A.col.tolist(), A.data.tolist()):
            fh.write(f"{i} {j} {v!r}\n")


def read_coo(path):
    rows, cols, vals = [], [], []
    shape = None
    with open(path) as fh:
        for line in fh:
            if line.startswith("%"):
                n, m, _ = line[1:].split()
                shape = (int(n), int(m))
                continue
            i, j, v = line.split()
            rows.append(int(i))
            cols.append(int(j))
            vals.append(float(v))
    return sp.coo_matrix((vals, (rows, cols)), shape=shape).tocsr()
