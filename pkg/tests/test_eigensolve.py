import numpy as np
import pytest
import scipy.sparse as sp
import sympy

from etev.eigensolve import (EigenSolveError, check_spd, nonsym_near, relative_residuals,
                             sym_def_smallest)


def random_spd(n, rng, shift=1.0):
    X = rng.integers(-3, 4, (n, n)).astype(float)
    return X @ X.T + shift * np.eye(n)


def charpoly_roots(A, B):
    """Roots of det(A - g B) from an exact integer characteristic polynomial."""
    As = sympy.Matrix(A.shape[0], A.shape[1], [sympy.Integer(int(x)) for x in A.ravel()])
    Bs = sympy.Matrix(B.shape[0], B.shape[1], [sympy.Integer(int(x)) for x in B.ravel()])
    # same roots as det(B^-1 A - g I); charpoly of a rational matrix is fast
    poly = (Bs.inv() * As).charpoly()
    return np.array([complex(r) for r in poly.nroots(n=30)], dtype=complex)


def test_diagonal_pencil():
    A = np.diag([3.0, 1.0, 2.0, 5.0])
    B = np.diag([1.0, 1.0, 2.0, 1.0])
    r = sym_def_smallest(A, B, 2)
    assert np.allclose(r.values, [1.0, 1.0])


def test_random_symmetric_against_charpoly():
    rng = np.random.default_rng(0)
    A = rng.integers(-5, 6, (6, 6)).astype(float)
    A = A + A.T
    B = random_spd(6, rng)
    want = np.sort(charpoly_roots(A, B).real)
    r = sym_def_smallest(A, B, 6)
    assert np.allclose(r.values, want, rtol=1e-10, atol=1e-12)
    # B-orthonormal vectors
    assert np.allclose(r.vectors.T @ B @ r.vectors, np.eye(6), atol=1e-10)


def test_sparse_route_laplacian():
    n = 400
    A = sp.diags([-np.ones(n - 1), 2 * np.ones(n), -np.ones(n - 1)], [-1, 0, 1], format="csr")
    B = sp.identity(n, format="csr")
    r = sym_def_smallest(A, B, 4, tol=1e-10)
    want = 2 - 2 * np.cos(np.arange(1, 5) * np.pi / (n + 1))
    assert r.info["method"] == "shift-invert lanczos"
    assert np.allclose(r.values, want, rtol=1e-9)


def test_scaling_invariance():
    rng = np.random.default_rng(1)
    A, B = random_spd(8, rng), random_spd(8, rng)
    a = sym_def_smallest(A, B, 3).values
    b = sym_def_smallest(1e6 * A, 1e6 * B, 3).values
    assert np.allclose(a, b, rtol=1e-12)


def test_k_out_of_range():
    with pytest.raises(ValueError):
        sym_def_smallest(np.eye(3), np.eye(3), 4)
    with pytest.raises(ValueError):
        nonsym_near(np.eye(3), np.eye(3), 0, 0.0)


def test_check_spd():
    check_spd(np.eye(3))
    check_spd(sp.identity(5, format="csr") * 2.0)
    with pytest.raises(EigenSolveError, match="not SPD"):
        check_spd(np.diag([1.0, -1.0]))
    with pytest.raises(EigenSolveError, match="not SPD"):
        check_spd(sp.diags([1.0, 0.0, 2.0]).tocsr())


def test_indefinite_B_rejected():
    with pytest.raises(EigenSolveError):
        sym_def_smallest(np.eye(2), np.diag([1.0, -1.0]), 1, check=True)


def test_rotation_gives_conjugate_pair():
    K = np.array([[0.0, -1.0], [1.0, 0.0]])
    r = nonsym_near(K, np.eye(2), 1, 0.5j)
    assert r.values[0] == pytest.approx(1j)
    assert any(abs(v + 1j) < 1e-12 for v in r.values)


def test_random_nonsymmetric_against_charpoly():
    rng = np.random.default_rng(2)
    K = rng.integers(-5, 6, (8, 8)).astype(float)
    M = random_spd(8, rng)
    roots = charpoly_roots(K, M)
    r = nonsym_near(K, M, 8, 0.0)
    got = np.array(sorted(r.values, key=lambda z: (round(z.real, 8), z.imag)))
    want = np.array(sorted(roots, key=lambda z: (round(z.real, 8), z.imag)))
    assert np.allclose(got, want, rtol=1e-9, atol=1e-12)
    for lam in r.values:
        if lam.imag:
            assert np.min(np.abs(r.values - lam.conjugate())) < 1e-9


def test_singular_M_drops_infinite_eigenvalues():
    K = np.diag([2.0, 3.0, 1.0])
    M = np.diag([1.0, 1.0, 0.0])
    r = nonsym_near(K, M, 2, 0.0)
    assert sorted(r.values.real) == pytest.approx([2.0, 3.0])


def test_sparse_nonsymmetric_route():
    n = 300
    d = np.arange(1.0, n + 1)
    K = sp.diags([d, 0.5 * np.ones(n - 1)], [0, 1], format="csr")
    r = nonsym_near(K, sp.identity(n, format="csr"), 3, 10.2)
    assert r.info["method"] == "shift-invert arnoldi"
    assert sorted(r.values.real) == pytest.approx([9.0, 10.0, 11.0])


def test_relative_residuals_zero_for_exact_pairs():
    A = np.diag([1.0, 2.0])
    res = relative_residuals(A, np.eye(2), np.array([1.0, 2.0]), np.eye(2))
    assert np.all(res == 0)
