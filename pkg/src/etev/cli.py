"""Command-line front end.

Every command writes CSV (or an aligned table with ``--pretty``) preceded by
``#`` lines echoing the resolved configuration. The exit status is 0 only if
every requested computation converged.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analytic_disk import DiskProblem, complex_grid, find_roots, scan
from .argyris import MaterialParams
from .eigensolve import EigenSolveError
from .lagrange import assemble_mixed, first_complex, first_real, solve_elasticity_eig1
from .mesh import DIAGONALS, DOMAINS, DomainSpec, generate, refine_uniform, write_mesh
from .smete import (SmeteContext, distinct_roots, monotone_interval, root_near,
                    sample_f, smallest_N)

log = logging.getLogger("etev")

COMMANDS = ("mesh", "gamma", "smete", "mixed", "analytic", "plotf", "convergence")

DEFAULTS = {
    "domain": "unit_square",
    "n": 10,
    "levels": "0",
    "radius": 0.5,
    "diagonals": "alternate",
    "mu": 1 / 16,
    "lambda": 1 / 4,
    "rho0": 1.0,
    "rho1": 4.0,
    "tau": 2.0,
    "N": 1,
    "tol": 1e-8,
    "maxit": 50,
    "x0": 0.5,
    "x1": 0.6,
    "order": 1,
    "target": "3.4-1.1j",
    "branches": "1,2,5",
    "interval": None,
    "npoints": 40,
    "scan_points": 2000,
    "crosscheck": None,
    "grid": None,
    "out": None,
    "pretty": False,
}

_TYPES = {"n": int, "N": int, "maxit": int, "order": int, "npoints": int, "scan_points": int,
          "radius": float, "mu": float, "lambda": float, "rho0": float, "rho1": float,
          "tau": float, "tol": float, "x0": float, "x1": float, "crosscheck": float}


# --- convergence orders -----------------------------------------------------


def relative_errors(values):
    """``E_{i+1} = |v_{i+1} - v_i| / |v_i|`` for successive levels."""
    v = list(values)
    return [abs(v[i + 1] - v[i]) / abs(v[i]) for i in range(len(v) - 1)]


def convergence_orders(values):
    """``log2(E_{i+1} / E_{i+2})``; needs at least three levels."""
    E = relative_errors(values)
    return [math.log2(E[i] / E[i + 1]) if E[i + 1] > 0 else math.inf
            for i in range(len(E) - 1)]


def reference_orders(values):
    """``log2(e_i / e_{i+1})`` with ``e_i = |v_i - v_last|``, errors against the finest level.

    Published order columns are usually computed this way; the finest value
    itself gets no entry.
    """
    v = list(values)
    e = [abs(x - v[-1]) for x in v[:-1]]
    return [math.log2(e[i] / e[i + 1]) if e[i + 1] > 0 else math.inf
            for i in range(len(e) - 1)]


def _order_column(values, orders=convergence_orders):
    """Per-level order entries aligned with the levels (blank for the first two)."""
    o = orders(values)
    return [None, None] + o if len(values) >= 3 else [None] * len(values)


def _ref_column(values):
    return _order_column(values, reference_orders)


# --- config -----------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    values: dict

    def __getitem__(self, key):
        return self.values[key]

    @property
    def params(self) -> MaterialParams:
        v = self.values
        return MaterialParams(v["mu"], v["lambda"], v["rho0"], v["rho1"])

    @property
    def levels(self) -> list[int]:
        return parse_levels(self.values["levels"])

    def spec(self) -> DomainSpec:
        v = self.values
        return DomainSpec(v["domain"], v["n"], v["radius"], v["diagonals"])

    def header(self) -> list[str]:
        lines = [f"etev {__version__} {self.command}"]
        lines += [f"{k} = {self.values[k]}" for k in sorted(self.values)]
        return lines


def parse_levels(text) -> list[int]:
    """``"0,1,2"`` or ``"0-3"`` or ``"2"`` -> list of refinement levels."""
    text = str(text).strip()
    if "-" in text:
        a, b = text.split("-", 1)
        out = list(range(int(a), int(b) + 1))
    else:
        out = [int(x) for x in text.split(",") if x.strip()]
    if not out or min(out) < 0:
        raise ValueError(f"bad level list {text!r}")
    return out


def read_config_file(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for num, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{num}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            k = k.lstrip("-").replace("-", "_")
            if k not in DEFAULTS:
                raise ValueError(f"{path}:{num}: unknown key {k!r}")
            out[k] = v
    return out


def _coerce(key, value):
    if value is None:
        return None
    if key == "pretty":
        return value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
    t = _TYPES.get(key)
    return t(value) if t else value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="etev", description="Elasticity transmission eigenvalues.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    a = common.add_argument
    a("--config", help="key = value file; flags override it")
    a("--domain", choices=DOMAINS)
    a("--n", type=int, help="subdivisions of the level-0 mesh")
    a("--levels", help="refinement levels, e.g. 0,1,2 or 0-3")
    a("--radius", type=float, help="disk radius")
    a("--diagonals", choices=DIAGONALS, help="cell split of square and L-shape grids")
    a("--mu", type=float)
    a("--lambda", type=float, dest="lambda")
    a("--rho0", type=float)
    a("--rho1", type=float)
    a("--tau", type=float, help="fixed tau for the gamma command")
    a("--N", type=int, dest="N", help="number of eigenvalues")
    a("--tol", type=float)
    a("--maxit", type=int)
    a("--x0", type=float)
    a("--x1", type=float)
    a("--order", type=int, choices=(1, 2), help="Lagrange order for mixed and delta1")
    a("--target", help="complex shift for the mixed method, e.g. 3.4-1.1j")
    a("--branches", help="comma-separated branch indices for plotf")
    a("--interval", help="lo,hi for plotf (default 0.05,4) and analytic (default 0.1,5)")
    a("--npoints", type=int)
    a("--scan-points", type=int, dest="scan_points")
    a("--crosscheck", type=float, help="analytic: also run the secant near this tau")
    a("--grid", help="analytic: re_lo,re_hi,im_lo,im_hi rectangle for |Z0| samples")
    a("--out", help="output path (default stdout)")
    a("--pretty", action="store_true")
    a("-v", "--verbose", action="count", default=0)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def resolve(argv=None) -> tuple[RunConfig, int]:
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    verbose = ns.pop("verbose", 0)
    values = dict(DEFAULTS)
    cfg = ns.pop("config", None)
    if cfg:
        values.update(read_config_file(cfg))
    values.update(ns)
    values = {k: _coerce(k, v) for k, v in values.items()}
    return RunConfig(command, values), verbose


# --- output -----------------------------------------------------------------


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, complex):
        return f"{x.real:.10g}{x.imag:+.10g}j"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.10g}"
    return str(x)


class Output:
    """Collects header and tables, then writes CSV or aligned text."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.tables = []

    def table(self, name, columns, rows):
        self.tables.append((name, columns, [[_fmt(x) for x in r] for r in rows]))

    def render(self) -> str:
        lines = [f"# {h}" for h in self.cfg.header()]
        for name, cols, rows in self.tables:
            lines.append(f"# table: {name}")
            if self.cfg["pretty"]:
                w = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c)
                     for i, c in enumerate(cols)]
                lines.append("  ".join(c.rjust(w[i]) for i, c in enumerate(cols)))
                lines += ["  ".join(v.rjust(w[i]) for i, v in enumerate(r)) for r in rows]
            else:
                lines.append(",".join(cols))
                lines += [",".join(r) for r in rows]
        return "\n".join(lines) + "\n"


@contextmanager
def _target(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def meshes(cfg: RunConfig):
    """(level, mesh) pairs for the configured levels."""
    levels = cfg.levels
    m = generate(cfg.spec())
    cur = 0
    for lv in sorted(levels):
        while cur < lv:
            m = refine_uniform(m)
            cur += 1
        yield lv, m


# --- commands ---------------------------------------------------------------


def cmd_mesh(cfg, out: Output) -> bool:
    rows = []
    for lv, m in meshes(cfg):
        rows.append([lv, m.nv, m.nt, len(m.boundary_edges), m.h])
        if cfg["out"]:
            path = cfg["out"] if len(cfg.levels) == 1 else f"{cfg['out']}.{lv}"
            write_mesh(m, path, header=cfg.header())
    out.table("meshes", ["level", "vertices", "triangles", "boundary_edges", "h"], rows)
    return True


def cmd_gamma(cfg, out: Output) -> bool:
    from .argyris import ArgyrisSpace, combine_Atau
    from .eigensolve import sym_def_smallest
    N = cfg["N"]
    rows, first = [], []
    for lv, m in meshes(cfg):
        t = time.perf_counter()
        S = ArgyrisSpace(m)
        blocks = S.reduced_blocks(cfg.params)
        B = ((blocks["elastic"] + blocks["elastic"].T) * 0.5).tocsr()
        res = sym_def_smallest(combine_Atau(blocks, cfg.params, cfg["tau"]), B, N)
        first.append(float(res.values[0]))
        rows.append([lv, m.h, S.nreduced, *res.values, time.perf_counter() - t])
    E = [None] + relative_errors(first)
    rows = [r[:-1] + [e, o, q, r[-1]]
            for r, e, o, q in zip(rows, E, _order_column(first), _ref_column(first))]
    cols = ["level", "h", "dofs"] + [f"gamma_{j}" for j in range(1, N + 1)]
    out.table("gamma", cols + ["E", "order", "order_ref", "seconds"], rows)
    return True


def cmd_smete(cfg, out: Output) -> bool:
    ok = True
    rows, trace_rows, by_level, summary = [], [], [], []
    for lv, m in meshes(cfg):
        ctx = SmeteContext(m, cfg.params, nev=cfg["N"])
        traces = smallest_N(cfg["N"], ctx, cfg["x0"], cfg["x1"], cfg["tol"], cfg["maxit"])
        ok &= all(t.converged for t in traces)
        for t in traces:
            rows.append([lv, m.h, t.index, t.root, t.iterations, t.converged, t.message])
            trace_rows += [[lv, t.index, *r] for r in t.rows()]
        for root, mult, idx in distinct_roots(traces):
            summary.append([lv, root, mult, "/".join(map(str, idx))])
        by_level.append((lv, m.h, next((t.root for t in traces if t.index == 1), math.nan)))
    out.table("roots", ["level", "h", "branch", "root", "iterations", "converged", "message"],
              rows)
    out.table("distinct", ["level", "root", "multiplicity", "branches"], summary)
    if len(by_level) > 1:
        tau1 = [r for _, _, r in by_level]
        E = [None] + relative_errors(tau1)
        out.table("tau1_convergence", ["level", "h", "tau1", "E", "order", "order_ref"],
                  [[lv, h, r, e, o, q] for (lv, h, r), e, o, q in
                   zip(by_level, E, _order_column(tau1), _ref_column(tau1))])
    out.table("traces", ["level", "branch", "iter", "tau", "gamma", "f"], trace_rows)
    return ok


def cmd_mixed(cfg, out: Output) -> bool:
    target = complex(cfg["target"].replace(" ", ""))
    real, cplx, rows = [], [], []
    ok = True
    for lv, m in meshes(cfg):
        p = assemble_mixed(m, cfg.params, cfg["order"])
        try:
            r = first_real(p, target=0.0, k=12, tol=cfg["tol"])
        except (RuntimeError, EigenSolveError) as exc:
            log.error("level %d: %s", lv, exc)
            r, ok = math.nan, False
        try:
            c = first_complex(p, target, tol=cfg["tol"])
        except (RuntimeError, EigenSolveError) as exc:
            log.error("level %d: %s", lv, exc)
            c, ok = complex(math.nan, math.nan), False
        real.append(r)
        cplx.append(c)
        rows.append([lv, m.h, p.dimension])
    Er = [None] + relative_errors(real)
    Ec = [None] + relative_errors(cplx)
    out.table("first_real", ["level", "h", "dofs", "tau", "E", "order", "order_ref"],
              [r + [t, e, o, q] for r, t, e, o, q in
               zip(rows, real, Er, _order_column(real), _ref_column(real))])
    out.table("first_complex",
              ["level", "h", "dofs", "tau", "conjugate", "E", "order", "order_ref"],
              [r + [c, c.conjugate(), e, o, q] for r, c, e, o, q in
               zip(rows, cplx, Ec, _order_column(cplx), _ref_column(cplx))])
    return ok


def _interval(cfg, default):
    lo, hi = (float(x) for x in (cfg["interval"] or default).split(","))
    return lo, hi


def cmd_analytic(cfg, out: Output) -> bool:
    lo, hi = _interval(cfg, "0.1,5")
    p = DiskProblem(cfg["radius"], cfg.params)
    roots = find_roots(p, (lo, hi), n=cfg["scan_points"])
    out.table("roots", ["omega", "tau"], roots)
    w, z = scan(p, lo, hi, cfg["scan_points"])
    out.table("scan", ["omega", "Z0", "abs_Z0"], zip(w, z, np.abs(z)))
    if cfg["grid"]:
        r0, r1, i0, i1 = (float(x) for x in cfg["grid"].split(","))
        W, Z = complex_grid(p, (r0, r1), (i0, i1), cfg["npoints"])
        out.table("complex_grid", ["omega_re", "omega_im", "abs_Z0"],
                  zip(W.real, W.imag, np.abs(Z)))
    ok = True
    if cfg["crosscheck"] is not None:
        spec = DomainSpec("disk", cfg["n"], cfg["radius"])
        m = generate(spec)
        for _ in range(max(cfg.levels)):
            m = refine_uniform(m)
        # radially symmetric modes are simple eigenvalues
        tr = root_near(SmeteContext(m, cfg.params), cfg["crosscheck"], tol=cfg["tol"],
                       maxit=cfg["maxit"], simple=True)
        ok = tr.converged
        ref = min((t for _, t in roots), key=lambda t: abs(t - tr.root), default=math.nan)
        out.table("crosscheck", ["level", "branch", "secant_tau", "analytic_tau", "difference"],
                  [[max(cfg.levels), tr.index, tr.root, ref, tr.root - ref]])
    return ok


def cmd_plotf(cfg, out: Output) -> bool:
    lo, hi = _interval(cfg, "0.05,4")
    branches = [int(b) for b in cfg["branches"].split(",")]
    for lv, m in meshes(cfg):
        ctx = SmeteContext(m, cfg.params, nev=max(branches))
        taus, F = sample_f((lo, hi), cfg["npoints"], branches, ctx)
        d1 = solve_elasticity_eig1(m, cfg.params, cfg["order"])
        mi = monotone_interval(d1, cfg.params, f"P{cfg['order']} level {lv}")
        out.table(f"monotone_interval level {lv}", ["level", "delta1", "upper"],
                  [[lv, mi.delta1, mi.upper]])
        out.table(f"f level {lv}", ["tau"] + [f"f_{j}" for j in branches],
                  [[t, *row] for t, row in zip(taus, F)])
    return True


def cmd_convergence(cfg, out: Output) -> bool:
    """Argyris gamma at fixed tau, secant tau_1 and mixed first real eigenvalue per level."""
    rows, g, s, x = [], [], [], []
    ok = True
    for lv, m in meshes(cfg):
        ctx = SmeteContext(m, cfg.params)
        gamma = float(ctx.gammas(cfg["tau"], 1)[0])
        tr = smallest_N(1, ctx, cfg["x0"], cfg["x1"], cfg["tol"], cfg["maxit"])[0]
        ok &= tr.converged
        mixed = first_real(assemble_mixed(m, cfg.params, cfg["order"]), target=0.0, k=12)
        g.append(gamma)
        s.append(tr.root)
        x.append(mixed)
        rows.append([lv, m.h])
    cols = ["level", "h"]
    data = []
    for name, v in (("gamma", g), ("tau1", s), ("mixed", x)):
        cols += [name, f"{name}_order", f"{name}_order_ref"]
        data.append(list(zip(v, _order_column(v), _ref_column(v))))
    out.table("convergence", cols,
              [r + [c for triple in cells for c in triple] for r, *cells in zip(rows, *data)])
    return ok


HANDLERS = {"mesh": cmd_mesh, "gamma": cmd_gamma, "smete": cmd_smete, "mixed": cmd_mixed,
            "analytic": cmd_analytic, "plotf": cmd_plotf, "convergence": cmd_convergence}


def main(argv=None) -> int:
    try:
        cfg, verbose = resolve(argv)
        cfg.spec()
        cfg.params  # noqa: B018  (validates)
        cfg.levels  # noqa: B018
    except (ValueError, OSError) as exc:
        print(f"etev: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.WARNING - 10 * min(verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    out = Output(cfg)
    try:
        ok = HANDLERS[cfg.command](cfg, out)
    except (ValueError, ZeroDivisionError, RuntimeError) as exc:
        print(f"etev: error: {exc}", file=sys.stderr)
        return 1
    text = out.render()
    if cfg.command == "mesh" and cfg["out"]:
        sys.stdout.write(text)
    else:
        with _target(cfg["out"]) as fh:
            fh.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
