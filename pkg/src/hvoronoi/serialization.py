"""Site-file ingestion and the structured diagram format.

Site files are plain text: one site per line, two coordinates separated by
whitespace and/or a comma, ``#`` starting a comment.  Coordinates may be given
in Klein, Poincare, or ambient (pre-lift) form; everything is normalized to
Klein before construction.

The structured diagram format is a JSON document holding the sites (Klein
coordinates), clip radius, order, and per-cell generator plus boundary edges.
Floats pass through Python's shortest round-trip repr, so a reload is
bit-faithful and repeated dumps are byte-identical.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .cells import ArcEdge, ClippedDiagram, ConvexCell, SegmentEdge
from .models import (
    DomainError,
    ambient_to_klein,
    poincare_to_klein,
    validate_klein,
)

__all__ = [
    "SiteFileError",
    "load_sites",
    "diagram_to_dict",
    "diagram_from_dict",
    "diagram_to_json",
    "diagram_from_json",
]

INPUT_MODELS = ("klein", "poincare", "ambient")
DUPLICATE_SITE_TOL = 1e-12


class SiteFileError(ValueError):
    """A site file failed to parse or contained invalid sites."""


def _to_klein(coords: np.ndarray, model: str, index: int) -> np.ndarray:
    try:
        if model == "klein":
            return validate_klein(coords)
        if model == "poincare":
            return poincare_to_klein(coords)
        return ambient_to_klein(coords)
    except DomainError as exc:
        raise SiteFileError(f"site {index} is out of domain: {exc}") from exc


def load_sites(path, model: str = "klein") -> np.ndarray:
    """Read a site file and return Klein coordinates of shape (n, 2)."""
    if model not in INPUT_MODELS:
        raise SiteFileError(f"unknown input model {model!r}; expected one of {INPUT_MODELS}")
    text = Path(path).read_text()
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        try:
            values = [float(tok) for tok in parts]
        except ValueError as exc:
            raise SiteFileError(f"{path}:{lineno}: cannot parse {raw!r}") from exc
        if len(values) != 2:
            raise SiteFileError(f"{path}:{lineno}: expected 2 coordinates, got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise SiteFileError(f"{path}:{lineno}: non-finite coordinate")
        rows.append(values)
    if not rows:
        raise SiteFileError(f"{path}: no sites found")
    sites = np.array([_to_klein(np.array(r), model, i) for i, r in enumerate(rows)])
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            if float(np.max(np.abs(sites[i] - sites[j]))) <= DUPLICATE_SITE_TOL:
                raise SiteFileError(f"duplicate sites {i} and {j} (after model conversion)")
    return sites


def _edge_to_dict(edge) -> dict:
    if isinstance(edge, SegmentEdge):
        return {
            "type": "segment",
            "start": [float(edge.start[0]), float(edge.start[1])],
            "end": [float(edge.end[0]), float(edge.end[1])],
        }
    return {
        "type": "arc",
        "start_angle": float(edge.start_angle),
        "end_angle": float(edge.end_angle),
    }


def _edge_from_dict(d: dict, clip_radius: float):
    if d["type"] == "segment":
        return SegmentEdge(np.array(d["start"], dtype=float), np.array(d["end"], dtype=float))
    if d["type"] == "arc":
        return ArcEdge(float(d["start_angle"]), float(d["end_angle"]), clip_radius)
    raise ValueError(f"unknown edge type {d.get('type')!r}")


def diagram_to_dict(diagram: ClippedDiagram) -> dict:
    return {
        "sites": [[float(x), float(y)] for x, y in diagram.sites],
        "order": diagram.order,
        "clip_radius": float(diagram.clip_radius),
        "cells": [
            {
                "generator": list(cell.generator),
                "edges": [_edge_to_dict(e) for e in cell.edges],
            }
            for cell in diagram.cells
        ],
    }


def diagram_from_dict(d: dict) -> ClippedDiagram:
    clip_radius = float(d["clip_radius"])
    cells = tuple(
        ConvexCell(
            tuple(int(i) for i in c["generator"]),
            tuple(_edge_from_dict(e, clip_radius) for e in c["edges"]),
        )
        for c in d["cells"]
    )
    return ClippedDiagram(cells, clip_radius, int(d["order"]), np.array(d["sites"], dtype=float))


def diagram_to_json(diagram: ClippedDiagram) -> str:
    return json.dumps(diagram_to_dict(diagram), indent=2) + "\n"


def diagram_from_json(text: str) -> ClippedDiagram:
    return diagram_from_dict(json.loads(text))
