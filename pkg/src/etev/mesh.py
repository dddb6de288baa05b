"""Conforming triangular meshes of the unit square, the L-shape and the disk.

Meshes are immutable. Triangles are stored counter-clockwise; local edge
``k`` of a triangle is the edge opposite its vertex ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

DOMAINS = ("unit_square", "l_shape", "disk")
DIAGONALS = ("alternate", "/", "\\")
BOUNDARY_MARKER = 1


class MeshError(ValueError):
    """Invalid mesh topology, geometry or file contents."""


@dataclass(frozen=True)
class DomainSpec:
    """Which test domain to mesh and how finely.

    ``subdivision`` is the number of cells across the domain diameter, so the
    maximum edge length is about ``diameter / subdivision``.
    """

    kind: str
    subdivision: int
    radius: float = 0.5
    diagonals: str = "alternate"

    def __post_init__(self):
        if self.kind not in DOMAINS:
            raise MeshError(f"unknown domain {self.kind!r}; expected one of {DOMAINS}")
        if int(self.subdivision) != self.subdivision or self.subdivision < 2:
            raise MeshError(f"subdivision must be an integer >= 2, got {self.subdivision}")
        if self.radius <= 0:
            raise MeshError("disk radius must be positive")
        if self.diagonals not in DIAGONALS:
            raise MeshError(f"unknown diagonal pattern {self.diagonals!r}; "
                            f"expected one of {DIAGONALS}")
        if self.kind == "l_shape" and self.subdivision % 2:
            raise MeshError("l_shape needs an even subdivision so that the "
                            "re-entrant corner (1/2, 1/2) is a mesh vertex")

    @property
    def diameter(self) -> float:
        if self.kind == "disk":
            return 2.0 * self.radius
        return float(np.sqrt(2.0))

    @property
    def h(self) -> float:
        """Nominal mesh size (diameter / subdivision)."""
        return self.diameter / self.subdivision


@dataclass(frozen=True, eq=False)
class Mesh:
    """Conforming triangulation with marked boundary edges.

    Parameters
    ----------
    vertices : (nv, 2) float array
    triangles : (nt, 3) int array, counter-clockwise after construction
    boundary_edges : (nb, 2) int array of vertex pairs
    boundary_markers : (nb,) int array
    circle_radius : float, optional
        Set for disk meshes centred at the origin; refinement projects new
        boundary vertices onto this circle.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    boundary_edges: np.ndarray
    boundary_markers: np.ndarray = field(default=None)
    circle_radius: float | None = None

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=float).reshape(-1, 2)
        t = np.ascontiguousarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        b = np.ascontiguousarray(self.boundary_edges, dtype=np.int64).reshape(-1, 2)
        if self.boundary_markers is None:
            mk = np.full(len(b), BOUNDARY_MARKER, dtype=np.int64)
        else:
            mk = np.ascontiguousarray(self.boundary_markers, dtype=np.int64).reshape(-1)
        if len(mk) != len(b):
            raise MeshError("one marker per boundary edge is required")
        nv = len(v)
        for name, arr in (("triangle", t), ("boundary edge", b)):
            if arr.size and (arr.min() < 0 or arr.max() >= nv):
                raise MeshError(f"{name} vertex index out of range [0, {nv})")
        # normalize orientation to counter-clockwise
        area = _signed_areas(v, t)
        flip = area < 0
        if np.any(flip):
            t = t.copy()
            t[flip] = t[flip][:, [0, 2, 1]]
        for name, arr in (("vertices", v), ("triangles", t),
                          ("boundary_edges", b), ("boundary_markers", mk)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        self.validate()

    # --- derived topology -------------------------------------------------

    @property
    def nv(self) -> int:
        return len(self.vertices)

    @property
    def nt(self) -> int:
        return len(self.triangles)

    @property
    def ne(self) -> int:
        return len(self.edges)

    @cached_property
    def _edge_data(self):
        t = self.triangles
        local = np.stack([t[:, [1, 2]], t[:, [2, 0]], t[:, [0, 1]]], axis=1)
        flat = np.sort(local.reshape(-1, 2), axis=1)
        edges, inverse, counts = np.unique(flat, axis=0, return_inverse=True,
                                           return_counts=True)
        inverse = inverse.reshape(-1)
        tri_edges = inverse.reshape(-1, 3)
        adj = np.full((len(edges), 2), -1, dtype=np.int64)
        owner = np.repeat(np.arange(self.nt), 3)
        order = np.argsort(inverse, kind="stable")
        starts = np.searchsorted(inverse[order], np.arange(len(edges)))
        adj[:, 0] = owner[order[starts]]
        second = starts + 1
        has2 = counts >= 2
        adj[has2, 1] = owner[order[second[has2]]]
        for a in (edges, tri_edges, adj, counts):
            a.setflags(write=False)
        return edges, tri_edges, adj, counts

    @property
    def edges(self) -> np.ndarray:
        """Unique edges as sorted vertex pairs, shape (ne, 2)."""
        return self._edge_data[0]

    @property
    def triangle_edges(self) -> np.ndarray:
        """Global edge index of local edge k (opposite vertex k), shape (nt, 3)."""
        return self._edge_data[1]

    @property
    def edge_triangles(self) -> np.ndarray:
        """Adjacent triangles per edge, second entry -1 on the boundary."""
        return self._edge_data[2]

    @cached_property
    def boundary_edge_mask(self) -> np.ndarray:
        mask = self._edge_data[3] == 1
        mask.setflags(write=False)
        return mask

    @cached_property
    def boundary_vertex_mask(self) -> np.ndarray:
        mask = np.zeros(self.nv, dtype=bool)
        mask[self.boundary_edges.ravel()] = True
        mask.setflags(write=False)
        return mask

    @property
    def areas(self) -> np.ndarray:
        return _signed_areas(self.vertices, self.triangles)

    @property
    def edge_lengths(self) -> np.ndarray:
        d = self.vertices[self.edges[:, 1]] - self.vertices[self.edges[:, 0]]
        return np.hypot(d[:, 0], d[:, 1])

    @property
    def h(self) -> float:
        """Mesh size: the maximum edge length."""
        return float(self.edge_lengths.max())

    # --- checks -----------------------------------------------------------

    def validate(self) -> None:
        """Raise :class:`MeshError` unless all mesh invariants hold."""
        if self.nt == 0:
            raise MeshError("mesh has no triangles")
        area = self.areas
        bad = np.flatnonzero(area <= 0)
        if len(bad):
            raise MeshError(f"triangle {bad[0]} has non-positive area {area[bad[0]]:.3e}")
        edges, _, _, counts = self._edge_data
        if np.any(counts > 2):
            e = edges[np.argmax(counts > 2)]
            raise MeshError(f"non-conforming mesh: edge ({e[0]}, {e[1]}) is shared "
                            f"by {counts.max()} triangles")
        bnd = {tuple(e) for e in edges[counts == 1]}
        given = [tuple(e) for e in np.sort(self.boundary_edges, axis=1)]
        if len(set(given)) != len(given):
            raise MeshError("boundary edge listed more than once")
        if set(given) != bnd:
            missing = bnd - set(given)
            extra = set(given) - bnd
            raise MeshError(f"boundary edge list mismatch: {len(missing)} missing, "
                            f"{len(extra)} not on the boundary")

    def __eq__(self, other):
        if not isinstance(other, Mesh):
            return NotImplemented
        return (np.array_equal(self.vertices, other.vertices)
                and np.array_equal(self.triangles, other.triangles)
                and np.array_equal(self.boundary_edges, other.boundary_edges)
                and np.array_equal(self.boundary_markers, other.boundary_markers)
                and self.circle_radius == other.circle_radius)

    __hash__ = object.__hash__


def _signed_areas(v, t):
    a, b, c = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    return 0.5 * ((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
                  - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))


def _boundary_from_triangles(t):
    local = np.concatenate([t[:, [1, 2]], t[:, [2, 0]], t[:, [0, 1]]])
    key = np.sort(local, axis=1)
    _, idx, counts = np.unique(key, axis=0, return_index=True, return_counts=True)
    # keep the orientation seen from the (unique) owning triangle
    return local[idx[counts == 1]]


# --- generators -----------------------------------------------------------


def _grid(n, keep_cell=None, diagonals="alternate"):
    """Structured grid on [0,1]^2 with n x n cells, each split by one diagonal.

    ``alternate`` flips the diagonal in a checkerboard pattern, which keeps
    the mesh symmetric under the square's reflections.
    """
    xs = np.linspace(0.0, 1.0, n + 1)
    X, Y = np.meshgrid(xs, xs, indexing="xy")
    verts = np.column_stack([X.ravel(), Y.ravel()])
    idx = lambda i, j: j * (n + 1) + i  # noqa: E731
    tris = []
    for j in range(n):
        for i in range(n):
            if keep_cell is not None and not keep_cell(i, j):
                continue
            a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
            if diagonals == "/" or (diagonals == "alternate" and (i + j) % 2 == 0):
                tris.append((a, b, c))
                tris.append((a, c, d))
            else:
                tris.append((a, b, d))
                tris.append((b, c, d))
    tris = np.array(tris, dtype=np.int64)
    used = np.unique(tris)
    remap = np.full(len(verts), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return verts[used], remap[tris]


def _disk(n_rings, radius):
    """Concentric ring layout: ring k carries 6k equally spaced vertices."""
    verts = [(0.0, 0.0)]
    ring_start = [0]
    for k in range(1, n_rings + 1):
        ring_start.append(len(verts))
        r = radius * k / n_rings
        theta = 2.0 * np.pi * np.arange(6 * k) / (6 * k)
        verts.extend(zip(r * np.cos(theta), r * np.sin(theta)))
    tris = []
    for k in range(1, n_rings + 1):
        outer = lambda m: ring_start[k] + (m % (6 * k))  # noqa: E731
        if k == 1:
            inner = lambda m: 0  # noqa: E731
        else:
            inner = lambda m: ring_start[k - 1] + (m % (6 * (k - 1)))  # noqa: E731
        for s in range(6):
            for m in range(k):
                tris.append((outer(s * k + m), outer(s * k + m + 1), inner(s * (k - 1) + m)))
            for m in range(k - 1):
                tris.append((inner(s * (k - 1) + m), outer(s * k + m + 1),
                             inner(s * (k - 1) + m + 1)))
    verts = np.array(verts)
    # snap boundary ring exactly onto the circle
    b = slice(ring_start[n_rings], None)
    verts[b] *= radius / np.hypot(verts[b, 0], verts[b, 1])[:, None]
    return verts, np.array(tris, dtype=np.int64)


def generate(spec: DomainSpec) -> Mesh:
    """Build the initial structured mesh for ``spec``."""
    n = spec.subdivision
    radius = None
    if spec.kind == "unit_square":
        v, t = _grid(n, diagonals=spec.diagonals)
    elif spec.kind == "l_shape":
        half = n // 2
        v, t = _grid(n, keep_cell=lambda i, j: not (i >= half and j >= half),
                     diagonals=spec.diagonals)
    else:
        radius = float(spec.radius)
        # ring count keeps the longest (sector-boundary) edge below 1.1 * 2R / n
        v, t = _disk(-(-2 * n // 3), radius)
    t = _ccw(v, t)
    return Mesh(v, t, _boundary_from_triangles(t), circle_radius=radius)


def _ccw(v, t):
    t = t.copy()
    flip = _signed_areas(v, t) < 0
    t[flip] = t[flip][:, [0, 2, 1]]
    return t


def refine_uniform(m: Mesh) -> Mesh:
    """Red refinement: split every triangle into four through edge midpoints.

    New boundary vertices of a disk mesh are projected radially onto the
    circle; markers are inherited by both halves of a split boundary edge.
    """
    edges, tri_edges = m.edges, m.triangle_edges
    mid = 0.5 * (m.vertices[edges[:, 0]] + m.vertices[edges[:, 1]])
    if m.circle_radius is not None:
        bmid = m.boundary_edge_mask
        r = np.hypot(mid[bmid, 0], mid[bmid, 1])
        mid[bmid] *= (m.circle_radius / r)[:, None]
    verts = np.vstack([m.vertices, mid])
    t = m.triangles
    e = tri_edges + m.nv  # e[:, k] is the midpoint opposite vertex k
    tris = np.concatenate([
        np.column_stack([t[:, 0], e[:, 2], e[:, 1]]),
        np.column_stack([t[:, 1], e[:, 0], e[:, 2]]),
        np.column_stack([t[:, 2], e[:, 1], e[:, 0]]),
        np.column_stack([e[:, 0], e[:, 1], e[:, 2]]),
    ])
    # split boundary edges, keeping their markers
    key = {tuple(p): i for i, p in enumerate(edges)}
    be = m.boundary_edges
    mids = np.array([key[tuple(sorted(p))] for p in be], dtype=np.int64) + m.nv
    new_b = np.concatenate([np.column_stack([be[:, 0], mids]),
                            np.column_stack([mids, be[:, 1]])])
    new_mk = np.concatenate([m.boundary_markers, m.boundary_markers])
    return Mesh(verts, tris, new_b, new_mk, circle_radius=m.circle_radius)


PAPER_BASE_SUBDIVISION = 10


def paper_mesh(kind: str, level: int = 0, radius: float = 0.5) -> Mesh:
    """Mesh of the nested hierarchy h = 0.1 / 2**level.

    The level-0 mesh has ten cells per unit length along the axes of the
    square and L-shape, and edges of length at most 0.1 on the disk; finer
    levels are uniform red refinements of it.
    """
    m = generate(DomainSpec(kind, PAPER_BASE_SUBDIVISION, radius))
    for _ in range(level):
        m = refine_uniform(m)
    return m


def level_for_h(h: float) -> int:
    """Refinement level of :func:`paper_mesh` with nominal size ``h``."""
    level = int(round(np.log2(0.1 / h)))
    if level < 0 or not np.isclose(0.1 / 2 ** level, h, rtol=1e-6):
        raise ValueError(f"h={h} is not of the form 0.1 / 2**k")
    return level


# --- text I/O -------------------------------------------------------------


def write_mesh(m: Mesh, path, header=()) -> None:
    """Write the line-oriented ``nv nt nb`` text format (0-based indices).

    ``header`` lines are written first as ``#`` comments.
    """
    lines = [f"# {h}" for h in header]
    lines.append(f"{m.nv} {m.nt} {len(m.boundary_edges)}")
    lines += [f"{x!r} {y!r}" for x, y in m.vertices.tolist()]
    lines += [f"{i} {j} {k}" for i, j, k in m.triangles.tolist()]
    lines += [f"{i} {j} {mk}" for (i, j), mk in zip(m.boundary_edges.tolist(),
                                                   m.boundary_markers.tolist())]
    if m.circle_radius is not None:
        lines.append(f"circle {m.circle_radius!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_mesh(path) -> Mesh:
    """Parse a mesh file written by :func:`write_mesh` and validate it."""
    raw = [ln.split() for ln in Path(path).read_text().splitlines()]
    rows = [r for r in raw if r and not r[0].startswith("#")]
    if not rows or len(rows[0]) != 3:
        raise MeshError(f"{path}: first line must be 'nv nt nb'")
    try:
        nv, nt, nb = (int(x) for x in rows[0])
    except ValueError as exc:
        raise MeshError(f"{path}: malformed header {rows[0]}") from exc
    if min(nv, nt, nb) < 0:
        raise MeshError(f"{path}: negative counts in header")
    body = rows[1:]
    if len(body) < nv + nt + nb:
        raise MeshError(f"{path}: expected {nv + nt + nb} data lines, found {len(body)}")

    def table(block, width, kind, what):
        if any(len(r) != width for r in block):
            raise MeshError(f"{path}: every {what} line needs {width} fields")
        try:
            return np.array(block, dtype=kind).reshape(-1, width)
        except ValueError as exc:
            raise MeshError(f"{path}: malformed {what} line") from exc

    verts = table(body[:nv], 2, float, "vertex")
    tris = table(body[nv:nv + nt], 3, np.int64, "triangle")
    bnd = table(body[nv + nt:nv + nt + nb], 3, np.int64, "boundary edge")
    radius = None
    for r in body[nv + nt + nb:]:
        if r[0] == "circle" and len(r) == 2:
            radius = float(r[1])
        else:
            raise MeshError(f"{path}: unexpected trailing line {' '.join(r)!r}")
    for name, arr in (("triangle", tris), ("boundary edge", bnd[:, :2])):
        if arr.size and (arr.min() < 0 or arr.max() >= nv):
            raise MeshError(f"{path}: {name} vertex index out of range [0, {nv})")
    return Mesh(verts, tris, bnd[:, :2], bnd[:, 2], circle_radius=radius)
