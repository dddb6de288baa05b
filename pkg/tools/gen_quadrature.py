"""Regenerate ``src/etev/_quad_tables.py``.

Fully symmetric positive-interior triangle rules are found by solving the
moment equations for a fixed orbit structure with Levenberg-Marquardt from
random starts. Run from the repository root::

    python tools/gen_quadrature.py > src/etev/_quad_tables.py
"""
import sys
from math import factorial

import numpy as np
from scipy.optimize import least_squares

# degree -> (centroid orbits, S21 orbits, S111 orbits)
STRUCTURE = {
    1: (1, 0, 0),
    2: (0, 1, 0),
    3: (0, 2, 0),
    4: (0, 2, 0),
    5: (1, 2, 0),
    6: (0, 2, 1),
    7: ((0, 3, 1), (1, 2, 2), (0, 2, 2)),
    8: (1, 3, 1),
    9: (1, 4, 1),
    10: (1, 2, 3),
}


def moments(d):
    return np.array([2.0 * factorial(i) * factorial(j) / factorial(i + j + 2)
                     for i in range(d + 1) for j in range(d + 1 - i)])


def expand(params, struct):
    n0, n1, n2 = struct
    pts, wts = [], []
    k = 0
    if n0:
        pts.append((1 / 3, 1 / 3, 1 / 3))
        wts.append(params[k] ** 2)
        k += 1
    for _ in range(n1):
        a = 0.5 / (1 + np.exp(-params[k]))
        w = params[k + 1] ** 2
        k += 2
        b = 1 - 2 * a
        for p in {(a, a, b), (a, b, a), (b, a, a)}:
            pts.append(p)
            wts.append(w / 3)
    for _ in range(n2):
        a = 1 / (1 + np.exp(-params[k]))
        b = (1 - a) / (1 + np.exp(-params[k + 1]))
        w = params[k + 2] ** 2
        k += 3
        c = 1 - a - b
        for p in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]:
            pts.append(p)
            wts.append(w / 6)
    return np.array(pts), np.array(wts)


def residual(params, struct, d, target):
    pts, wts = expand(params, struct)
    x, y = pts[:, 1], pts[:, 2]
    vals = np.array([np.sum(wts * x ** i * y ** j)
                     for i in range(d + 1) for j in range(d + 1 - i)])
    return vals - target


def solve(d, seed=0, tries=400):
    structs = STRUCTURE[d]
    if isinstance(structs[0], int):
        structs = (structs,)
    target = moments(d)
    rng = np.random.default_rng(seed)
    for struct in structs:
        nparam = struct[0] + 2 * struct[1] + 3 * struct[2]
        for _ in range(tries):
            x0 = rng.normal(scale=2.0, size=nparam)
            sol = least_squares(residual, x0, args=(struct, d, target),
                                xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                max_nfev=2000)
            if np.max(np.abs(sol.fun)) < 2e-15:
                pts, wts = expand(sol.x, struct)
                if np.all(pts > 1e-8) and np.all(wts > 0):
                    print(f"degree {d}: {struct}, {len(wts)} points",
                          file=sys.stderr)
                    return pts, wts
    raise RuntimeError(f"no rule found for degree {d}")


def main():
    print('"""Tabulated symmetric triangle quadrature rules (generated by'
          ' tools/gen_quadrature.py).\n\nEach entry maps the exactness degree'
          ' to (barycentric points, weights);\nweights sum to one.\n"""')
    print("RULES = {")
    for d in STRUCTURE:
        pts, wts = solve(d)
        print(f"    {d}: (")
        print("        [")
        for p in pts:
            print(f"            ({float(p[0])!r}, {float(p[1])!r}, {float(p[2])!r}),")
        print("        ],")
        print("        [")
        for w in wts:
            print(f"            {float(w)!r},")
        print("        ],")
        print("    ),")
    print("}")


if __name__ == "__main__":
    main()
