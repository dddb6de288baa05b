"""Reproduction of the published tables and the property suite, one test per criterion.

Every test records a PASS/FAIL line that is echoed in the terminal summary.
Criteria that do not reproduce stay red; the fine-mesh ones are marked slow.
Set ETEV_ACCEPT_FINE=1 to add the h = 0.0125 level to the order checks.
"""
import gc
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from etev.analytic_disk import DiskProblem, find_roots, radial_eigenfunction
from etev.argyris import PAPER_PARAMS, PAPER_PARAMS_2, ArgyrisSpace, combine_Atau
from etev.cli import reference_orders
from etev.eigensolve import sym_def_smallest
from etev.lagrange import (assemble_mixed, first_complex, first_real, solve_elasticity_eig1,
                           solve_mixed_eigs)
from etev.mesh import paper_mesh
from etev.smete import (SmeteContext, distinct_roots, monotone_interval, root_near, sample_f,
                        secant_solve, smallest_N)

FINE = os.environ.get("ETEV_ACCEPT_FINE") == "1"
HERE = Path(__file__).parent


def rel(a, b):
    return abs(a - b) / abs(b)


class _Contexts:
    """Holds at most one fine-mesh context at a time to bound memory."""

    def __init__(self):
        self.key, self.ctx = None, None

    def get(self, kind, level, params=PAPER_PARAMS, nev=1):
        key = (kind, level, params)
        if key != self.key:
            self.key, self.ctx = None, None
            gc.collect()
            self.ctx = SmeteContext(paper_mesh(kind, level), params, nev=nev)
            self.key = key
        self.ctx.nev = max(self.ctx.nev, nev)
        return self.ctx


CTX = _Contexts()


def gamma_at_2(kind, level):
    t = time.perf_counter()
    S = ArgyrisSpace(paper_mesh(kind, level))
    b = S.reduced_blocks(PAPER_PARAMS)
    B = ((b["elastic"] + b["elastic"].T) * 0.5).tocsr()
    g = sym_def_smallest(combine_Atau(b, PAPER_PARAMS, 2.0), B, 1).values[0]
    return float(g), time.perf_counter() - t


def test_criterion_1_generalized_eigenvalue(record_criterion):
    checks = [("unit_square", 0, 1.97544798, 1e-5), ("unit_square", 1, 1.97544304, 1e-5),
              ("l_shape", 0, 4.254621, 1e-3), ("disk", 0, 2.074928, 1e-2)]
    parts, ok = [], True
    for kind, lv, ref, tol in checks:
        g, secs = gamma_at_2(kind, lv)
        good = rel(g, ref) <= tol and secs <= 120
        ok &= good
        parts.append(f"{kind} h={0.1 / 2 ** lv:g} {g:.8f} vs {ref} (rel {rel(g, ref):.1e}, "
                     f"tol {tol:g}, {secs:.0f}s){'' if good else ' X'}")
    record_criterion(1, ok, "; ".join(parts))
    assert ok


@pytest.mark.slow
def test_criterion_2_first_eigenvalue_convergence(record_criterion):
    refs = {1: 1.94288512, 2: 1.94287991}
    levels = [0, 1, 2, 3] if FINE else [0, 1, 2]
    roots = []
    for lv in levels:
        ctx = CTX.get("unit_square", lv, nev=6 if lv == 2 else 1)
        tr = secant_solve(1, ctx)
        assert tr.converged, tr.message
        roots.append(tr.root)
    ok = True
    parts = []
    for lv, ref in refs.items():
        good = rel(roots[lv], ref) <= 1e-4
        ok &= good
        parts.append(f"h={0.1 / 2 ** lv:g} {roots[lv]:.8f} vs {ref} (rel {rel(roots[lv], ref):.1e})")
    orders = reference_orders(roots)
    published = (1.37, 1.96)[:len(orders)]
    good = all(abs(o - p) <= 0.3 for o, p in zip(orders, published))
    ok &= good
    parts.append(f"orders {np.round(orders, 3).tolist()} vs {list(published)} +-0.3"
                 f"{'' if good else ' X'}")
    record_criterion(2, ok, "; ".join(parts))
    assert ok


@pytest.mark.slow
def test_criterion_3_six_smallest(record_criterion):
    expected = {
        "unit_square": (1.942885, 2.618883, 2.618883, 3.247320, 3.748613, 4.418714),
        "disk": (2.117252, 2.921413, 2.921413, 3.958629, 3.958629, 5.175589),
    }
    pairs = {"unit_square": [(2, 3)], "disk": [(2, 3), (4, 5)]}
    ok, parts = True, []
    for kind, ref in expected.items():
        traces = smallest_N(6, CTX.get(kind, 2, nev=6))
        roots = [t.root for t in traces]
        errs = [rel(r, e) for r, e in zip(roots, ref)]
        good = all(t.converged for t in traces) and max(errs) <= 1e-3
        for i, j in pairs[kind]:
            good &= abs(roots[i - 1] - roots[j - 1]) <= 1e-3
        ok &= good
        mult = [m for _, m, _ in distinct_roots(traces, rel_tol=1e-6)]
        parts.append(f"{kind} {np.round(roots, 6).tolist()} max rel {max(errs):.1e}, "
                     f"multiplicities {mult}, NOI {[t.iterations for t in traces]}"
                     f"{'' if good else ' X'}")
    record_criterion(3, ok, "; ".join(parts))
    assert ok


@pytest.mark.slow
def test_criterion_4_second_parameter_set(record_criterion):
    ok, parts = True, []
    for kind, ref, tol in (("unit_square", 6.451568, 1e-3), ("l_shape", 10.882301, 5e-3)):
        tr = secant_solve(1, CTX.get(kind, 2, PAPER_PARAMS_2))
        good = tr.converged and rel(tr.root, ref) <= tol
        ok &= good
        parts.append(f"{kind} {tr.root:.6f} vs {ref} (rel {rel(tr.root, ref):.1e}, tol {tol:g})"
                     f"{'' if good else ' X'}")
    record_criterion(4, ok, "; ".join(parts))
    assert ok


@pytest.mark.slow
def test_criterion_5_monotone_intervals(record_criterion):
    ok, parts = True, []
    # disk last: criterion 8 reuses its context
    for kind, ref in (("unit_square", 3.251402), ("l_shape", 4.325472), ("disk", 3.679328)):
        d1 = solve_elasticity_eig1(paper_mesh(kind, 2), PAPER_PARAMS)
        iv = monotone_interval(d1, PAPER_PARAMS, f"P1 h=0.025 {kind}")
        _, F = sample_f((0.05, iv.upper), 10, [1], CTX.get(kind, 2))
        decreasing = bool(np.all(np.diff(F[:, 0]) < 0))
        good = rel(d1, ref) <= 2e-2 and decreasing
        ok &= good
        parts.append(f"{kind} delta1 {d1:.6f} vs {ref} (rel {rel(d1, ref):.1e}), "
                     f"f_1 decreasing on (0.05, {iv.upper:.4f}): {decreasing}"
                     f"{'' if good else ' X'}")
    record_criterion(5, ok, "; ".join(parts))
    assert ok


@pytest.mark.slow
def test_criterion_6_mixed_first_real(record_criterion):
    ref = (2.393618, 2.040967, 1.967283, 1.948971)
    vals = []
    for lv in range(4):
        vals.append(first_real(assemble_mixed(paper_mesh("unit_square", lv), PAPER_PARAMS),
                               target=0.0))
        gc.collect()
    errs = [rel(v, r) for v, r in zip(vals, ref)]
    orders = reference_orders(vals)
    values_ok = max(errs) <= 1e-3
    orders_ok = all(abs(o - p) <= 0.4 for o, p in zip(orders, (2.27, 2.33)))
    ok = values_ok and orders_ok
    record_criterion(6, ok, f"{np.round(vals, 6).tolist()} vs {list(ref)}; rel errors "
                     f"{[f'{e:.1e}' for e in errs]}{'' if values_ok else ' X'}; orders "
                     f"{np.round(orders, 3).tolist()} vs [2.27, 2.33] +-0.4"
                     f"{'' if orders_ok else ' X'}")
    assert ok


@pytest.mark.slow
def test_criterion_7_mixed_first_complex(record_criterion):
    ref = 3.422905 - 1.097453j
    p = assemble_mixed(paper_mesh("unit_square", 2), PAPER_PARAMS)
    z = first_complex(p, ref)
    allv = solve_mixed_eigs(p, 6, ref).values
    conj = bool(np.min(np.abs(allv - np.conj(z))) <= 1e-8 * abs(z))
    err = abs(z - ref) / abs(ref)
    ok = err <= 1e-2 and conj
    record_criterion(7, ok, f"{z.real:.6f}{z.imag:+.6f}i vs {ref} (rel {err:.1e}), "
                     f"conjugate present: {conj}")
    assert ok


@pytest.mark.slow
def test_criterion_8_disk(record_criterion):
    p = DiskProblem()
    (omega, tau), = find_roots(p, (0.1, 5.0), count=1)
    ok_root = abs(omega - 3.554954) <= 1e-5
    r = np.full(16, 0.37)
    th = np.linspace(0, 2 * np.pi, 16, endpoint=False)
    (ux, uy), (vx, vy) = radial_eigenfunction(p, omega, r, th)
    spread = max(np.ptp(np.hypot(ux, uy)), np.ptp(np.hypot(vx, vy)))
    ok_sym = spread <= 1e-12
    # the Bessel roots belong to radial modes, which are simple eigenvalues
    tr = root_near(CTX.get("disk", 2, nev=6), 12.6, max_branches=40, simple=True)
    ok_fem = tr.converged and abs(tr.root - 12.624538) <= 0.02
    ok = ok_root and ok_sym and ok_fem
    record_criterion(8, ok, f"omega {omega:.7f} (tau {tau:.6f}){'' if ok_root else ' X'}; "
                     f"secant h=0.025 branch {tr.index} {tr.root:.6f} vs 12.624538 "
                     f"(diff {tr.root - 12.624538:+.4f}, tol 0.02){'' if ok_fem else ' X'}; "
                     f"radial spread {spread:.1e}{'' if ok_sym else ' X'}")
    assert ok


PROPERTY_TESTS = [
    "test_quadrature.py::test_monomial_exactness",
    "test_argyris.py::test_p5_reproduction",
    "test_argyris.py::test_h2_interpolation_order",
    "test_argyris.py::test_symmetry_and_definiteness",
    "test_argyris.py::test_two_route_Atau",
    "test_argyris.py::test_constrained_fields_satisfy_boundary_conditions",
    "test_argyris.py::test_local_matrices_match_symbolic_oracle",
    "test_eigensolve.py::test_random_symmetric_against_charpoly",
    "test_eigensolve.py::test_random_nonsymmetric_against_charpoly",
    "test_eigensolve.py::test_rotation_gives_conjugate_pair",
    "test_lagrange.py::test_mixed_eigenvalues_close_under_conjugation",
    "test_analytic_disk.py::test_bessel_against_mpmath",
    "test_analytic_disk.py::test_bessel_random",
]


def test_criterion_9_property_suite(record_criterion):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           *(str(HERE / n) for n in PROPERTY_TESTS)],
                          capture_output=True, text=True, cwd=HERE.parent)
    secs = time.perf_counter() - t
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and secs <= 300
    record_criterion(9, ok, f"{tail} ({secs:.0f}s, limit 300s)")
    assert ok, proc.stdout[-3000:]
