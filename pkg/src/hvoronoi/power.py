"""Planar power-diagram construction, disk clipping, and the end-to-end
order-k hyperbolic Voronoi pipeline.

Every k-subset of sites maps to a weighted ball (see
:func:`hvoronoi.lifting.subset_to_ball`); the cell of a ball is the region
where its power is minimal, i.e. an intersection of half-planes, and the
hyperbolic diagram is that power diagram clipped to the (unit or smaller)
disk.  Cells are built independently per ball from an immutable ball list and
merged in generator order, so construction parallelizes trivially; at desk
scale the sequential loop is plenty.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .cells import ArcEdge, ClippedDiagram, ConvexCell, SegmentEdge
from .lifting import AffineBisector, WeightedSite, subset_to_ball
from .models import DegeneracyError, DomainError, validate_klein

__all__ = [
    "FULL_PLANE",
    "EMPTY_PLANE",
    "PowerCell",
    "radical_halfplane",
    "build_power_diagram",
    "clip_to_disk",
    "build_hvd",
    "locate",
    "locate_cells",
]

# Rays of unbounded cells are capped at this radius; any clip disk of radius
# <= 1 never sees the cap.
RAY_CAP = 4.0
# Cells whose polygon shrinks below this area (or below 3 vertices) are
# floating-point slivers, not cells.
PRUNE_AREA = 1e-18
# Half-plane inclusion slack, applied to signed distances (unit normals).
PLANE_EPS = 1e-12
# Discriminant tolerance for segment/circle intersection; tangential contacts
# collapse to a single point instead of spawning micro-arcs.
DISC_TOL = 1e-12
# Affine functions matching within this (max coefficient difference) are the
# same generator; the lexicographically smallest one wins.
COEFF_TIE_TOL = 1e-12
# Sites closer than this (max component difference) are duplicates.
DUPLICATE_SITE_TOL = 1e-12
# Refuse k-order constructions with more than this many subsets.
MAX_SUBSETS = 100_000

_MIN_PIECE = 1e-12  # clipped sub-segments shorter than this are dropped
_ENDPOINT_TOL = 1e-9


class _DegenerateHalfPlane(enum.Enum):
    FULL = "full"
    EMPTY = "empty"


FULL_PLANE = _DegenerateHalfPlane.FULL
EMPTY_PLANE = _DegenerateHalfPlane.EMPTY


def radical_halfplane(a: WeightedSite, b: WeightedSite):
    """Radical axis of two balls, oriented so a's cell is {x : <u,x> <= offset}.

    The normal points away from a's cell.  When the centers coincide the
    power functions differ by a constant: returns ``FULL_PLANE`` if a wins
    everywhere (w_a >= w_b), else ``EMPTY_PLANE``.
    """
    lin_a, const_a = a.affine_coeffs()
    lin_b, const_b = b.affine_coeffs()
    u = lin_a - lin_b  # equals 2 (b.c - a.c)
    if float(np.max(np.abs(u))) <= COEFF_TIE_TOL:
        return FULL_PLANE if a.w >= b.w else EMPTY_PLANE
    return AffineBisector(u, const_b - const_a)


@dataclass(frozen=True)
class PowerCell:
    """Affine power-diagram cell: ball index, capped CCW polygon, and whether
    the true cell is unbounded (the polygon touches the ray cap)."""

    index: int
    vertices: np.ndarray
    unbounded: bool

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)


def _clip_halfplane(poly, normal, offset):
    """Sutherland-Hodgman pass keeping {x : <normal, x> <= offset} (unit normal)."""
    out = []
    m = len(poly)
    for i in range(m):
        cur = poly[i]
        nxt = poly[(i + 1) % m]
        dc = float(normal @ cur) - offset
        dn = float(normal @ nxt) - offset
        cur_in = dc <= PLANE_EPS
        nxt_in = dn <= PLANE_EPS
        if cur_in:
            out.append(cur)
        if cur_in != nxt_in:
            t = dc / (dc - dn)
            out.append(cur + t * (nxt - cur))
    cleaned = []
    for v in out:
        if not cleaned or float(np.max(np.abs(v - cleaned[-1]))) > 1e-12:
            cleaned.append(v)
    if len(cleaned) > 1 and float(np.max(np.abs(cleaned[0] - cleaned[-1]))) <= 1e-12:
        cleaned.pop()
    return cleaned


def _polygon_area(poly) -> float:
    if len(poly) < 3:
        return 0.0
    v = np.asarray(poly)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _dedup_indices(balls) -> list[int]:
    """Indices to keep after merging balls with identical affine functions
    (within COEFF_TIE_TOL per coefficient); the smallest index survives."""
    coeffs = np.array([np.append(lin, const) for lin, const in (b.affine_coeffs() for b in balls)])
    n = len(balls)
    if n <= 1:
        return list(range(n))
    order = np.lexsort((coeffs[:, 2], coeffs[:, 1], coeffs[:, 0]))
    removed = np.zeros(n, dtype=bool)
    for pos in range(n):
        i = order[pos]
        for pos2 in range(pos + 1, n):
            j = order[pos2]
            if coeffs[j, 0] - coeffs[i, 0] > COEFF_TIE_TOL:
                break
            if float(np.max(np.abs(coeffs[j] - coeffs[i]))) <= COEFF_TIE_TOL:
                removed[max(i, j)] = True
    return [i for i in range(n) if not removed[i]]


def _cap_polygon():
    r = RAY_CAP
    return [np.array([-r, -r]), np.array([r, -r]), np.array([r, r]), np.array([-r, r])]


def _build_cell(i: int, balls, active: list[int]):
    poly = _cap_polygon()
    for j in active:
        if j == i:
            continue
        hp = radical_halfplane(balls[i], balls[j])
        if hp is FULL_PLANE:
            continue
        if hp is EMPTY_PLANE:
            return None
        norm = float(np.linalg.norm(hp.u))
        poly = _clip_halfplane(poly, hp.u / norm, hp.b / norm)
        if len(poly) < 3:
            return None
    if _polygon_area(poly) <= PRUNE_AREA:
        return None
    return poly


def build_power_diagram(balls) -> list[PowerCell]:
    """Cells of the power diagram of `balls`, in increasing ball-index order.

    Each cell is the half-plane intersection over all other balls, capped at
    RAY_CAP; empty cells are omitted.  Duplicate affine functions are merged
    onto the smallest ball index before construction, so tied generators
    resolve deterministically.
    """
    balls = list(balls)
    if not balls:
        raise DomainError("need at least one ball")
    for b in balls:
        if b.c.size != 2:
            raise DomainError("power-diagram construction is planar only (d = 2)")
    active = _dedup_indices(balls)
    cells = []
    for i in active:
        poly = _build_cell(i, balls, active)
        if poly is None:
            continue
        verts = np.array(poly)
        unbounded = bool(np.any(np.max(np.abs(verts), axis=1) >= RAY_CAP - 1e-6))
        cells.append(PowerCell(i, verts, unbounded))
    return cells


def _segment_disk_interval(a, b, r):
    """Parameter interval of [a, b] inside the closed disk of radius r, or None."""
    d = b - a
    A = float(d @ d)
    if A == 0.0:
        return None
    B = 2.0 * float(a @ d)
    C = float(a @ a) - r * r
    disc = B * B - 4.0 * A * C
    if disc <= DISC_TOL:
        return None
    sq = math.sqrt(disc)
    t0 = (-B - sq) / (2.0 * A)
    t1 = (-B + sq) / (2.0 * A)
    lo, hi = max(t0, 0.0), min(t1, 1.0)
    if hi <= lo:
        return None
    return lo, hi


def _origin_strictly_inside(verts) -> bool:
    m = len(verts)
    for i in range(m):
        a, b = verts[i], verts[(i + 1) % m]
        if float(np.cross(b - a, -a)) <= 0.0:
            return False
    return True


def _clip_polygon_to_disk(verts, r):
    """Boundary of polygon-intersect-disk as CCW edges, or None if empty.

    Walks the CCW polygon collecting the in-disk portion of each edge, then
    joins consecutive portions by CCW arcs wherever they do not already share
    an endpoint.  No portions at all means the polygon either misses the disk
    or swallows it whole.
    """
    verts = [np.asarray(v, dtype=float) for v in verts]
    if len(verts) < 3:
        return None
    pieces = []
    for i in range(len(verts)):
        iv = _segment_disk_interval(verts[i], verts[(i + 1) % len(verts)], r)
        if iv is None:
            continue
        lo, hi = iv
        d = verts[(i + 1) % len(verts)] - verts[i]
        p_in = verts[i] + lo * d
        p_out = verts[i] + hi * d
        if float(np.linalg.norm(p_out - p_in)) <= _MIN_PIECE:
            continue
        pieces.append((p_in, p_out))
    if not pieces:
        if _origin_strictly_inside(verts):
            return (ArcEdge(0.0, 2.0 * math.pi, r),)
        return None
    edges = []
    k = len(pieces)
    for j, (p_in, p_out) in enumerate(pieces):
        edges.append(SegmentEdge(p_in, p_out))
        q_in = pieces[(j + 1) % k][0]
        if float(np.linalg.norm(p_out - q_in)) > _ENDPOINT_TOL:
            a0 = math.atan2(p_out[1], p_out[0])
            a1 = math.atan2(q_in[1], q_in[0])
            while a1 <= a0:
                a1 += 2.0 * math.pi
            edges.append(ArcEdge(a0, a1, r))
    return tuple(edges)


def clip_to_disk(cells, clip_radius: float, *, sites, order: int = 1, generators=None) -> ClippedDiagram:
    """Intersect affine power cells with the origin-centered disk.

    `generators` maps ball index to a site-index tuple (defaults to the
    1-tuple of the index itself).  Cells whose intersection with the disk is
    empty are discarded; bounded affine cells may well be cut by the circle.
    """
    if not (0.0 < clip_radius <= 1.0):
        raise DomainError(f"clip radius must satisfy 0 < l <= 1, got {clip_radius}")
    out = []
    for cell in cells:
        edges = _clip_polygon_to_disk(cell.vertices, clip_radius)
        if edges is None:
            continue
        gen = tuple(generators[cell.index]) if generators is not None else (cell.index,)
        cc = ConvexCell(gen, edges)
        if cc.area() <= PRUNE_AREA:
            continue
        out.append(cc)
    return ClippedDiagram(tuple(out), clip_radius, order, np.atleast_2d(np.asarray(sites, dtype=float)))


def _check_sites(sites) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(sites, dtype=float))
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("diagram construction needs planar sites of shape (n, 2)")
    for i, p in enumerate(arr):
        validate_klein(p, f"site {i}")
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    for pos in range(len(arr) - 1):
        i, j = order[pos], order[pos + 1]
        if float(np.max(np.abs(arr[i] - arr[j]))) <= DUPLICATE_SITE_TOL:
            raise DegeneracyError(f"duplicate sites {min(i, j)} and {max(i, j)}")
    return arr


def build_hvd(sites, order: int = 1, clip_radius: float = 1.0) -> ClippedDiagram:
    """Order-k hyperbolic Voronoi diagram of Klein-disk sites.

    Maps every k-subset of sites to a weighted ball, builds the power diagram
    of the balls, and clips it to the disk of radius `clip_radius`.  The
    result's cells tile the clip disk; each cell's generator is the set of its
    k nearest sites.
    """
    arr = _check_sites(sites)
    n = len(arr)
    k = int(order)
    if not 1 <= k <= n:
        raise DomainError(f"order must satisfy 1 <= k <= {n}, got {k}")
    count = math.comb(n, k)
    if count > MAX_SUBSETS:
        raise DomainError(
            f"C({n},{k}) = {count} subset generators exceed the {MAX_SUBSETS} bound"
        )
    gens = list(itertools.combinations(range(n), k))
    balls = [subset_to_ball(g, arr) for g in gens]
    cells = build_power_diagram(balls)
    return clip_to_disk(cells, clip_radius, sites=arr, order=k, generators=gens)


def locate_cells(points, diagram: ClippedDiagram, tol: float = _ENDPOINT_TOL) -> np.ndarray:
    """Index into `diagram.cells` of the cell containing each point.

    Points on an edge land in the incident cell with the smallest generator.
    All points must lie strictly inside the clip disk.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != 2:
        raise DomainError("query points must have shape (m, 2)")
    radii = np.linalg.norm(pts, axis=1)
    if np.any(radii >= diagram.clip_radius):
        bad = int(np.argmax(radii >= diagram.clip_radius))
        raise DomainError(f"query point {bad} lies outside the clip disk")
    result = np.full(len(pts), -1, dtype=int)
    for ci, cell in enumerate(diagram.cells):
        todo = result == -1
        if not np.any(todo):
            break
        hit = np.where(todo)[0][cell.contains_many(pts[todo], tol)]
        result[hit] = ci
    for m in np.where(result == -1)[0]:
        # only reachable inside pruned slivers; pick the least-violated cell
        result[m] = max(
            range(len(diagram.cells)),
            key=lambda ci: _containment_margin(pts[m], diagram.cells[ci]),
        )
    return result


def _containment_margin(point, cell: ConvexCell) -> float:
    normals, offsets = cell._segment_halfplanes
    margin = math.inf
    if len(normals):
        margin = float(np.min(normals @ point - offsets))
    r = cell._arc_radius
    if r is not None:
        margin = min(margin, r - float(np.linalg.norm(point)))
    return margin


def locate(x, diagram: ClippedDiagram) -> tuple[int, ...]:
    """Generator of the diagram cell containing x (any incident cell on ties)."""
    idx = locate_cells(np.asarray(x, dtype=float)[None, :], diagram)[0]
    return diagram.cells[idx].generator
