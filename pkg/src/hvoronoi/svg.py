"""SVG rendering of clipped diagrams, in Klein or Poincare coordinates.

Klein output draws segment edges straight and clip-circle arcs as circular
arcs.  Poincare output samples every edge at a configurable step and maps the
sample points through the radial Klein-to-Poincare map, drawing polylines;
the images of straight Klein chords curve correctly without any arc fitting.
"""

from __future__ import annotations

import math

import numpy as np

from .cells import ArcEdge, ClippedDiagram, SegmentEdge
from .models import DomainError, klein_to_poincare

__all__ = ["render_svg"]

OUTPUT_MODELS = ("klein", "poincare")
IMAGE_SIZE = 512
STROKE = 0.006
SITE_DOT_RADIUS = 0.018
# endpoints matching within this are the same shared edge, drawn once
_EDGE_KEY_TOL = 1e-9


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _edge_key(a, b) -> tuple:
    pts = sorted((round(float(p[0]) / _EDGE_KEY_TOL), round(float(p[1]) / _EDGE_KEY_TOL)) for p in (a, b))
    return tuple(pts)


def _unique_segments(diagram: ClippedDiagram) -> list[SegmentEdge]:
    seen = {}
    for cell in diagram.cells:
        for e in cell.edges:
            if isinstance(e, SegmentEdge):
                seen.setdefault(_edge_key(e.start, e.end), e)
    return list(seen.values())


def _arcs(diagram: ClippedDiagram) -> list[ArcEdge]:
    return [e for cell in diagram.cells for e in cell.edges if isinstance(e, ArcEdge)]


def _poincare_radius(klein_radius: float) -> float:
    return klein_radius / (1.0 + math.sqrt(max(1.0 - klein_radius * klein_radius, 0.0)))


def _sample_segment(e: SegmentEdge, step: float) -> np.ndarray:
    count = max(int(math.ceil(e.length / step)), 1) + 1
    t = np.linspace(0.0, 1.0, count)
    return e.start[None, :] + t[:, None] * (e.end - e.start)[None, :]


def _sample_arc(e: ArcEdge, step: float) -> np.ndarray:
    count = max(int(math.ceil(e.radius * e.sweep / step)), 2) + 1
    angles = np.linspace(e.start_angle, e.end_angle, count)
    return e.radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)


def _map_points(points: np.ndarray, model: str) -> np.ndarray:
    if model == "klein":
        return points
    # same radial map as klein_to_poincare, but tolerant of points that sit
    # exactly on the unit circle (arc samples at clip radius 1), where the map
    # extends continuously to the identity
    nn = np.clip(1.0 - np.sum(points * points, axis=1), 0.0, None)
    return points / (1.0 + np.sqrt(nn))[:, None]


def _polyline(points: np.ndarray, cls: str) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return f'<polyline class="{cls}" points="{coords}" />'


def _arc_path(e: ArcEdge) -> str:
    if e.is_full_circle:
        return f'<circle class="edge" cx="0" cy="0" r="{_fmt(e.radius)}" fill="none" />'
    p0, p1 = e.start_point(), e.end_point()
    large = 1 if e.sweep > math.pi else 0
    return (
        f'<path class="edge" d="M {_fmt(p0[0])} {_fmt(p0[1])} '
        f'A {_fmt(e.radius)} {_fmt(e.radius)} 0 {large} 1 {_fmt(p1[0])} {_fmt(p1[1])}" '
        f'fill="none" />'
    )


def render_svg(diagram: ClippedDiagram, model: str = "klein", step: float = 0.02) -> str:
    """Render the diagram as an SVG document string."""
    if model not in OUTPUT_MODELS:
        raise DomainError(f"unknown output model {model!r}; expected one of {OUTPUT_MODELS}")
    if step <= 0.0:
        raise DomainError("sampling step must be positive")

    body = []
    # domain boundary, and the clip circle when it is smaller
    body.append('<circle class="boundary" cx="0" cy="0" r="1" fill="none" />')
    if diagram.clip_radius < 1.0:
        r = diagram.clip_radius if model == "klein" else _poincare_radius(diagram.clip_radius)
        body.append(f'<circle class="boundary" cx="0" cy="0" r="{_fmt(r)}" fill="none" />')

    if model == "klein":
        for e in _unique_segments(diagram):
            body.append(
                f'<line class="edge" x1="{_fmt(e.start[0])}" y1="{_fmt(e.start[1])}" '
                f'x2="{_fmt(e.end[0])}" y2="{_fmt(e.end[1])}" />'
            )
        for e in _arcs(diagram):
            body.append(_arc_path(e))
    else:
        for e in _unique_segments(diagram):
            body.append(_polyline(_map_points(_sample_segment(e, step), model), "edge"))
        for e in _arcs(diagram):
            body.append(_polyline(_map_points(_sample_arc(e, step), model), "edge"))

    for p in diagram.sites:
        q = p if model == "klein" else klein_to_poincare(p)
        body.append(
            f'<circle class="site" cx="{_fmt(q[0])}" cy="{_fmt(q[1])}" r="{_fmt(SITE_DOT_RADIUS)}" />'
        )

    content = "\n    ".join(body)
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<!-- y axis flipped to mathematical orientation (up is positive) -->
<svg xmlns="http://www.w3.org/2000/svg" width="{IMAGE_SIZE}" height="{IMAGE_SIZE}" viewBox="-1 -1 2 2">
  <style>
    .edge {{ stroke: #1f3b73; stroke-width: {STROKE}; fill: none; }}
    .boundary {{ stroke: #888888; stroke-width: {STROKE}; fill: none; }}
    .site {{ fill: #b02020; stroke: none; }}
  </style>
  <g transform="scale(1,-1)">
    {content}
  </g>
</svg>
"""
