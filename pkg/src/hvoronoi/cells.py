"""Cell-complex pieces of a clipped planar diagram.

A cell boundary is a counterclockwise cyclic sequence of straight segments
and circular arcs on the clip circle (centered at the origin).  Cells are
convex: each is the intersection of half-planes with one disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

__all__ = ["SegmentEdge", "ArcEdge", "ConvexCell", "ClippedDiagram"]

# Consecutive boundary edges must chain up to this endpoint slack.
ENDPOINT_TOL = 1e-9
TWO_PI = 2.0 * math.pi


def _freeze(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SegmentEdge:
    """Directed straight edge from `start` to `end` (cell interior on its left)."""

    start: np.ndarray
    end: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "start", _freeze(self.start))
        object.__setattr__(self, "end", _freeze(self.end))

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.end - self.start))

    def start_point(self) -> np.ndarray:
        return self.start

    def end_point(self) -> np.ndarray:
        return self.end


@dataclass(frozen=True)
class ArcEdge:
    """Counterclockwise arc of the clip circle from start_angle to end_angle.

    Angles satisfy start < end <= start + 2*pi; a sweep of exactly 2*pi is a
    full circle (the boundary of a cell covering the whole clip disk).
    """

    start_angle: float
    end_angle: float
    radius: float

    @property
    def sweep(self) -> float:
        return self.end_angle - self.start_angle

    @property
    def is_full_circle(self) -> bool:
        return self.sweep >= TWO_PI - 1e-12

    def start_point(self) -> np.ndarray:
        return self.radius * np.array([math.cos(self.start_angle), math.sin(self.start_angle)])

    def end_point(self) -> np.ndarray:
        return self.radius * np.array([math.cos(self.end_angle), math.sin(self.end_angle)])


Edge = Union[SegmentEdge, ArcEdge]


@dataclass(frozen=True)
class ConvexCell:
    """One diagram cell: its subset generator and its cyclic CCW boundary."""

    generator: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "generator", tuple(int(i) for i in self.generator))
        object.__setattr__(self, "edges", tuple(self.edges))

    def area(self) -> float:
        """Enclosed area by Green's theorem: shoelace terms for segments plus
        r^2/2 * sweep for arcs."""
        total = 0.0
        for e in self.edges:
            if isinstance(e, SegmentEdge):
                total += 0.5 * float(np.cross(e.start, e.end))
            else:
                total += 0.5 * e.radius * e.radius * e.sweep
        return total

    def vertices(self) -> np.ndarray:
        """Edge start points in boundary order, shape (len(edges), 2)."""
        if not self.edges:
            return np.zeros((0, 2))
        return np.array([e.start_point() for e in self.edges])

    @cached_property
    def _segment_halfplanes(self) -> tuple[np.ndarray, np.ndarray]:
        """Inward unit normals N and offsets c with interior = {x : N x >= c}."""
        normals, offsets = [], []
        for e in self.edges:
            if not isinstance(e, SegmentEdge):
                continue
            d = e.end - e.start
            ln = float(np.linalg.norm(d))
            if ln == 0.0:
                continue
            n = np.array([-d[1], d[0]]) / ln
            normals.append(n)
            offsets.append(float(n @ e.start))
        if not normals:
            return np.zeros((0, 2)), np.zeros(0)
        return np.array(normals), np.array(offsets)

    @cached_property
    def _arc_radius(self) -> float | None:
        for e in self.edges:
            if isinstance(e, ArcEdge):
                return e.radius
        return None

    def contains_many(self, points, tol: float = ENDPOINT_TOL) -> np.ndarray:
        """Vectorized membership test; `tol > 0` admits points within `tol` of
        the boundary, `tol < 0` keeps only the shrunken strict interior."""
        pts = np.asarray(points, dtype=float)
        inside = np.ones(len(pts), dtype=bool)
        normals, offsets = self._segment_halfplanes
        if len(normals):
            inside &= np.all(pts @ normals.T >= offsets - tol, axis=1)
        r = self._arc_radius
        if r is not None:
            inside &= np.linalg.norm(pts, axis=1) <= r + tol
        return inside

    def contains(self, point, tol: float = ENDPOINT_TOL) -> bool:
        return bool(self.contains_many(np.asarray(point, dtype=float)[None, :], tol)[0])


@dataclass(frozen=True)
class ClippedDiagram:
    """Order-k diagram of `sites`, clipped to the disk of `clip_radius`.

    Cells are listed in increasing generator order and tile the clip disk.
    """

    cells: tuple[ConvexCell, ...]
    clip_radius: float
    order: int
    sites: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "sites", _freeze(np.atleast_2d(self.sites)))
        object.__setattr__(self, "clip_radius", float(self.clip_radius))
        object.__setattr__(self, "order", int(self.order))

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.generator for c in self.cells)

    def total_area(self) -> float:
        return sum(c.area() for c in self.cells)
