"""Quadrature rules on triangles.

Degrees up to ``SYMMETRIC_DEGREE`` use tabulated fully symmetric rules;
higher degrees fall back to a collapsed Gauss-Jacobi product rule, which
is positive and interior but not symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from ._quad_tables import RULES

SYMMETRIC_DEGREE = max(RULES)
MAX_DEGREE = 12


@dataclass(frozen=True, eq=False)
class QuadRule:
    """Barycentric points (nq, 3) and weights (nq,) summing to one.

    Weights are normalized to the triangle measure, so the integral over a
    physical triangle K is ``area(K) * sum(w * f(x))``.
    """

    points: np.ndarray
    weights: np.ndarray
    degree: int

    def physical_points(self, triangle) -> np.ndarray:
        """Map the rule to the triangle given by its (3, 2) vertex array."""
        return self.points @ np.asarray(triangle, dtype=float)


@lru_cache(maxsize=None)
def triangle_rule(degree: int) -> QuadRule:
    """Rule integrating all polynomials of total degree <= ``degree`` exactly."""
    if int(degree) != degree or not 1 <= degree <= MAX_DEGREE:
        raise ValueError(f"unsupported quadrature degree {degree}; "
                         f"supported range is 1..{MAX_DEGREE}")
    if degree <= SYMMETRIC_DEGREE:
        pts, wts = RULES[int(degree)]
        pts = np.array(pts, dtype=float)
        wts = np.array(wts, dtype=float)
    else:
        pts, wts = _collapsed_rule(int(degree))
    if np.any(wts <= 0) or np.any(pts < 0):
        raise ValueError(f"tabulated rule of degree {degree} is not positive-interior")
    pts.setflags(write=False)
    wts.setflags(write=False)
    return QuadRule(pts, wts, int(degree))


def _collapsed_rule(degree: int):
    """Gauss-Jacobi (1 - s) x Gauss-Legendre product mapped onto the triangle."""
    n = degree // 2 + 1
    xs, ws = roots_jacobi(n, 1.0, 0.0)
    ys, wy = roots_legendre(n)
    s = np.repeat((1 + xs) / 2, n)
    t = np.tile((1 + ys) / 2, n)
    # the Jacobi weight absorbs the collapse Jacobian; total weight 1
    w = np.outer(ws, wy).ravel() / 4
    x, y = s, (1 - s) * t
    return np.column_stack([1 - x - y, x, y]), w


def triangle_area(triangle) -> float:
    p = np.asarray(triangle, dtype=float)
    return 0.5 * abs((p[1, 0] - p[0, 0]) * (p[2, 1] - p[0, 1])
                     - (p[1, 1] - p[0, 1]) * (p[2, 0] - p[0, 0]))


def integrate(f, triangle, rule: QuadRule) -> float:
    """Integrate ``f(x, y)`` (vectorized over points) over a triangle."""
    xy = rule.physical_points(triangle)
    vals = np.asarray(f(xy[:, 0], xy[:, 1]), dtype=float)
    return triangle_area(triangle) * float(np.dot(rule.weights, vals))
