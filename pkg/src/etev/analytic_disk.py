"""Radially symmetric transmission eigenvalues of a disk.

For radial fields u = J1(a1 r) e_r and v = C J1(a2 r) e_r with
a_j = omega * sqrt(rho_j / (2 mu + lam)), the displacement and traction
matching conditions at r = R reduce to the vanishing of

    Z0(omega) = J1(a1 R) a2 J1'(a2 R) - J1(a2 R) a1 J1'(a1 R).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .argyris import PAPER_PARAMS, MaterialParams

log = logging.getLogger(__name__)

MAX_ARG = 50.0
MAX_COMPLEX_ARG = 20.0
SERIES_LIMIT = 6.0
SCAN_INTERVALS = 2000


def _series(n: int, x: float) -> float:
    h = 0.5 * x
    term = h ** n / math.factorial(n)
    terms = [term]
    k = 0
    while abs(term) > 1e-18 * max(1.0, abs(terms[0])) or k < 4:
        k += 1
        term *= -h * h / (k * (k + n))
        terms.append(term)
    return math.fsum(terms)


def _miller(x: float):
    """J0, J1 by downward recurrence normalized with J0 + 2 sum J_2k = 1."""
    start = 2 * (int(x + 40 + 2 * math.sqrt(x)) // 2)
    jp, j = 0.0, 1e-300
    norm = 0.0
    j0 = j1 = 0.0
    for m in range(start, 0, -1):
        jm = 2 * m / x * j - jp
        jp, j = j, jm
        if m - 1 == 1:
            j1 = j
        if (m - 1) % 2 == 0 and m - 1 > 0:
            norm += 2 * j
        if abs(j) > 1e250:
            jp *= 1e-250
            j *= 1e-250
            j1 *= 1e-250
            norm *= 1e-250
    j0 = j
    norm += j0
    return j0 / norm, j1 / norm


def bessel_j01(x: float):
    """(J0(x), J1(x), J1'(x)) for 0 <= x <= 50."""
    x = float(x)
    if x < 0:
        raise ValueError(f"bessel_j01 needs x >= 0, got {x}")
    if x > MAX_ARG:
        raise ValueError(f"x={x} outside the validated range [0, {MAX_ARG}]")
    if x == 0.0:
        return 1.0, 0.0, 0.5
    if x <= SERIES_LIMIT:
        j0, j1 = _series(0, x), _series(1, x)
    else:
        j0, j1 = _miller(x)
    return j0, j1, j0 - j1 / x


@dataclass(frozen=True)
class DiskProblem:
    radius: float = 0.5
    params: MaterialParams = PAPER_PARAMS

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not 2 * self.params.mu + self.params.lam > 0:
            raise ValueError("2 mu + lambda must be positive")

    def wavenumbers(self, omega: float):
        c = 2 * self.params.mu + self.params.lam
        return omega * math.sqrt(self.params.rho0 / c), omega * math.sqrt(self.params.rho1 / c)


def Z0(omega: float, p: DiskProblem, swap: bool = False) -> float:
    """The 2x2 Bessel determinant; ``swap`` exchanges the two columns."""
    a1, a2 = p.wavenumbers(omega)
    if swap:
        a1, a2 = a2, a1
    R = p.radius
    _, j1a, d1a = bessel_j01(a1 * R)
    _, j1b, d1b = bessel_j01(a2 * R)
    return j1a * a2 * d1b - j1b * a1 * d1a


def _j1_complex(z: complex):
    """(J1(z), J1'(z)) by the power series; cancellation limits |z| to about 20."""
    h = 0.5 * z
    t1 = h  # J1 term k
    t0 = 1.0 + 0j  # J0 term k
    j0, j1 = t0, t1
    for k in range(1, 200):
        t0 *= -h * h / (k * k)
        t1 *= -h * h / (k * (k + 1))
        j0 += t0
        j1 += t1
        if abs(t0) + abs(t1) < 1e-17 * (abs(j0) + abs(j1) + 1e-300):
            break
    return j1, (j0 - j1 / z) if z != 0 else 0.5


def Z0_complex(omega: complex, p: DiskProblem) -> complex:
    """Z0 continued to complex omega; for plotting |Z0| over a rectangle."""
    a1, a2 = p.wavenumbers(1.0)
    z1, z2 = complex(omega) * a1 * p.radius, complex(omega) * a2 * p.radius
    if max(abs(z1), abs(z2)) > MAX_COMPLEX_ARG:
        raise ValueError(f"|a omega R| exceeds {MAX_COMPLEX_ARG} at omega={omega}")
    j1a, d1a = _j1_complex(z1)
    j1b, d1b = _j1_complex(z2)
    return j1a * omega * a2 * d1b - j1b * omega * a1 * d1a


def complex_grid(p: DiskProblem, re, im, n: int = 40):
    """|Z0| on an n x n grid of the rectangle re x im: (omega array, values array)."""
    W = (np.linspace(*map(float, re), n)[None, :]
         + 1j * np.linspace(*map(float, im), n)[:, None]).ravel()
    return W, np.array([Z0_complex(w, p) for w in W])


def scan(p: DiskProblem, lo: float, hi: float, n: int = SCAN_INTERVALS):
    """Samples (omega, Z0(omega)) on n equal subintervals of [lo, hi]."""
    w = np.linspace(lo, hi, n + 1)
    return w, np.array([Z0(x, p) for x in w])


def find_roots(p: DiskProblem, interval=(0.1, 5.0), count=None, n: int = SCAN_INTERVALS):
    """Real roots of Z0 as (omega, tau = omega**2), sorted ascending."""
    lo, hi = map(float, interval)
    if not 0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got ({lo}, {hi})")
    w, z = scan(p, lo, hi, n)
    roots = []
    for k in range(n):
        a, b = z[k], z[k + 1]
        if a == 0.0:
            r = w[k]
        elif a * b < 0:
            r = bisect(Z0, w[k], w[k + 1], args=(p,), xtol=1e-13, maxiter=200)
        else:
            continue
        if not roots or abs(r - roots[-1]) > 1e-10:
            roots.append(r)
        if count is not None and len(roots) >= count:
            break
    if not roots:
        log.info("no sign change of Z0 on (%g, %g) at %d subintervals", lo, hi, n)
    return [(r, r * r) for r in roots]


def radial_eigenfunction(p: DiskProblem, omega: float, r, theta):
    """Evaluate (u, v) at polar points; each is a pair of arrays (x- and y-components)."""
    a1, a2 = p.wavenumbers(omega)
    jb = bessel_j01(a2 * p.radius)[1]
    if jb == 0.0:
        raise ZeroDivisionError("J1(a2 R) = 0: the normalization C is undefined")
    C = bessel_j01(a1 * p.radius)[1] / jb
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(r < 0) or np.any(r > p.radius * (1 + 1e-14)):
        raise ValueError("r must lie in [0, R]")
    r, theta = np.broadcast_arrays(r, theta)
    ju = np.vectorize(lambda s: bessel_j01(a1 * s)[1])(r)
    jv = C * np.vectorize(lambda s: bessel_j01(a2 * s)[1])(r)
    c, s = np.cos(theta), np.sin(theta)
    return (ju * c, ju * s), (jv * c, jv * s)


def radial_traction(p: DiskProblem, amplitude: float, a: float, r: float) -> float:
    """sigma_rr of the field amplitude * J1(a r) e_r."""
    mu, lam = p.params.mu, p.params.lam
    _, j1, d1 = bessel_j01(a * r)
    return amplitude * (2 * mu * a * d1 + lam * (a * d1 + j1 / r))
