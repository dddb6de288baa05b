import numpy as np
import pytest

from etev.argyris import PAPER_PARAMS, MaterialParams
from etev.lagrange import (LagrangeSpace, assemble_mixed, elasticity_pencil, first_complex,
                           first_real, solve_elasticity_eig1, solve_mixed_eigs)
from etev.mesh import DomainSpec, Mesh, generate, refine_uniform

P = PAPER_PARAMS


def one_triangle():
    v = np.array([[0.2, 0.1], [1.1, 0.3], [0.4, 0.9]])
    return Mesh(v, np.array([[0, 1, 2]]), np.array([[0, 1], [1, 2], [2, 0]]))


def test_p1_mass_formula():
    m = one_triangle()
    M = LagrangeSpace(m, 1).mass().toarray()
    area = m.areas[0]
    assert np.allclose(M, area / 12 * (np.ones((3, 3)) + np.eye(3)), rtol=1e-14)


@pytest.mark.parametrize("order", [1, 2])
def test_mass_reproduces_area(order):
    m = generate(DomainSpec("l_shape", 4))
    M = LagrangeSpace(m, order).mass()
    assert M.sum() == pytest.approx(0.75, rel=1e-13)
    x = m.vertices[:, 0]
    S = LagrangeSpace(m, order)
    if order == 2:
        mid = 0.5 * (m.vertices[m.edges[:, 0], 0] + m.vertices[m.edges[:, 1], 0])
        x = np.concatenate([x, mid])
    # integral of x over the L-shape
    assert np.ones(S.ndofs) @ M @ x == pytest.approx(0.5 - 0.25 * 0.75, rel=1e-12)


@pytest.mark.parametrize("order", [1, 2])
def test_rigid_motions_in_kernel(order):
    m = generate(DomainSpec("unit_square", 3))
    S = LagrangeSpace(m, order)
    E = S.elasticity(P)
    pts = m.vertices
    if order == 2:
        pts = np.vstack([pts, 0.5 * (m.vertices[m.edges[:, 0]] + m.vertices[m.edges[:, 1]])])
    rot = np.concatenate([-pts[:, 1], pts[:, 0]])
    shift = np.concatenate([np.ones(S.ndofs), np.zeros(S.ndofs)])
    assert np.abs(E @ rot).max() < 1e-13
    assert np.abs(E @ shift).max() < 1e-13


def test_linear_field_energy():
    m = one_triangle()
    S = LagrangeSpace(m, 1)
    E = S.elasticity(P).toarray()
    # u = (a x + b y, c x + d y)
    a, b, c, d = 0.3, -1.2, 0.7, 0.5
    x, y = m.vertices.T
    u = np.concatenate([a * x + b * y, c * x + d * y])
    eps = np.array([[a, 0.5 * (b + c)], [0.5 * (b + c), d]])
    want = m.areas[0] * (2 * P.mu * np.sum(eps * eps) + P.lam * (a + d) ** 2)
    assert u @ E @ u == pytest.approx(want, rel=1e-13)


def test_bad_order():
    with pytest.raises(ValueError):
        LagrangeSpace(one_triangle(), 3)


def test_mixed_shapes_and_singular_mass():
    m = generate(DomainSpec("unit_square", 4))
    p = assemble_mixed(m, P)
    S = LagrangeSpace(m, 1)
    assert p.n_w == 2 * len(S.interior) and p.n_v == 2 * S.ndofs
    assert p.K.shape == p.M.shape == (p.dimension, p.dimension)
    # the phi rows of M see only interior w columns, so M is rank deficient
    assert np.linalg.matrix_rank(p.M.toarray()) < p.dimension


def test_mixed_equal_densities():
    with pytest.raises((ValueError, ZeroDivisionError)):
        assemble_mixed(generate(DomainSpec("unit_square", 2)), MaterialParams(rho0=2.0, rho1=2.0))


def test_mixed_eigenvalues_close_under_conjugation():
    p = assemble_mixed(generate(DomainSpec("unit_square", 6)), P)
    res = solve_mixed_eigs(p, 10, 2.0)
    for lam in res.values:
        if abs(lam.imag) > 1e-8:
            assert np.min(np.abs(res.values - lam.conjugate())) < 1e-8 * abs(lam)
    assert np.all(res.residuals < 1e-8)


def test_mixed_first_real_and_complex():
    m = refine_uniform(generate(DomainSpec("unit_square", 8)))
    p = assemble_mixed(m, P)
    tau = first_real(p, target=0.0)
    # coarse P1 approaches the Argyris value 1.9429 from above
    assert 1.94 < tau < 2.5
    z = first_complex(p, 6.0 - 1.0j)
    assert z.imag < 0


def test_delta1_rayleigh_quotient():
    m = generate(DomainSpec("unit_square", 8))
    A, M = elasticity_pencil(m, P)
    d, x = solve_elasticity_eig1(m, P, return_vector=True)
    assert (x @ A @ x) / (x @ M @ x) == pytest.approx(d, rel=1e-10)
    rng = np.random.default_rng(0)
    for _ in range(5):
        y = rng.standard_normal(len(x))
        assert (y @ A @ y) / (y @ M @ y) >= d


def test_delta1_decreases_under_refinement():
    m = generate(DomainSpec("unit_square", 4))
    vals = []
    for _ in range(3):
        vals.append(solve_elasticity_eig1(m, P))
        m = refine_uniform(m)
    assert vals[0] > vals[1] > vals[2]
    assert solve_elasticity_eig1(m, P, order=2) < vals[2]


def test_delta1_scales_with_lame_parameters():
    m = generate(DomainSpec("disk", 6))
    a = solve_elasticity_eig1(m, P)
    b = solve_elasticity_eig1(m, MaterialParams(3 * P.mu, 3 * P.lam, P.rho0, P.rho1))
    assert b == pytest.approx(3 * a, rel=1e-10)


def test_no_interior_dofs():
    with pytest.raises(ValueError, match="interior"):
        elasticity_pencil(one_triangle(), P)
