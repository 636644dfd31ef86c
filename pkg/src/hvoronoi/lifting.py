"""Lifting machinery for the diagram construction.

Sites in the Klein disk lift to tangent hyperplanes of the hemisphere
potential ``F(x) = sqrt(1 - <x,x>)``; equating two lifted planes gives the
(straight) Klein bisector, and summing the planes of a k-subset of sites
gives the affine function of a weighted ball, which is what turns k-order
hyperbolic Voronoi construction into a power-diagram computation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .models import DegeneracyError, DomainError, _as_vector, validate_klein

__all__ = [
    "LiftedHyperplane",
    "AffineBisector",
    "WeightedSite",
    "potential",
    "potential_gradient",
    "site_hyperplane",
    "klein_bisector",
    "hyperboloid_bisector",
    "subset_to_ball",
]

logger = logging.getLogger(__name__)

# Points closer than this (max component difference) count as coincident; a
# bisector direction below rounding noise is meaningless.
COINCIDENT_TOL = 1e-12
# potential() accepts boundary points up to this much rounding overshoot.
POTENTIAL_DOMAIN_TOL = 1e-12
# Plane slopes above this get a debug log line: sites near the boundary
# produce nearly vertical tangent planes.
STEEP_SLOPE = 20.0


def potential(x) -> float:
    """Height sqrt(1 - <x,x>) of the upper unit hemisphere over x.

    Defined on the closed ball (1 on the axis, 0 on the boundary); this is the
    concave surface whose tangent planes at the sites carve the diagram.
    """
    x = _as_vector(x)
    nn = float(x @ x)
    if nn > 1.0 + POTENTIAL_DOMAIN_TOL:
        raise DomainError(f"potential argument lies outside the closed unit ball (|x|^2 = {nn:.17g})")
    return math.sqrt(max(1.0 - nn, 0.0))


def potential_gradient(p) -> np.ndarray:
    """Gradient -p / sqrt(1 - <p,p>) of the hemisphere height at an interior point."""
    p = validate_klein(p)
    return -p / math.sqrt(1.0 - float(p @ p))


@dataclass(frozen=True)
class LiftedHyperplane:
    """Graph y = b + <g, x> of an affine function over the disk."""

    g: np.ndarray
    b: float

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        g.flags.writeable = False
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "b", float(self.b))
        if not (np.all(np.isfinite(g)) and math.isfinite(self.b)):
            raise DomainError("hyperplane coefficients must be finite")

    def value(self, x) -> float:
        return self.b + float(self.g @ np.asarray(x, dtype=float))


def site_hyperplane(p) -> LiftedHyperplane:
    """Tangent plane of the hemisphere potential at a site.

    Its height at x is ``(1 - <x,p>) / sqrt(1 - <p,p>)``, the per-site function
    whose pointwise minimum over all sites realizes the diagram; it touches the
    hemisphere exactly at ``(p, potential(p))``.
    """
    p = validate_klein(p, "site")
    s = math.sqrt(1.0 - float(p @ p))
    g = -p / s
    slope = float(np.linalg.norm(g))
    if slope > STEEP_SLOPE:
        # Planes turn vertical at the boundary; no special handling, but the
        # conditioning is worth a trace.
        logger.debug("near-boundary site %s lifts to a steep plane (slope %.3g)", p, slope)
    return LiftedHyperplane(g, 1.0 / s)


@dataclass(frozen=True)
class AffineBisector:
    """The line {x : <u, x> = b} with nonzero normal u."""

    u: np.ndarray
    b: float

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        u.flags.writeable = False
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "b", float(self.b))
        if not (np.all(np.isfinite(u)) and math.isfinite(self.b)):
            raise DomainError("bisector coefficients must be finite")
        if not np.any(u != 0.0):
            raise DegeneracyError("bisector normal must be nonzero")

    def signed_value(self, x) -> float:
        """<u, x> - b; zero on the line."""
        return float(self.u @ np.asarray(x, dtype=float)) - self.b

    def normalized(self) -> "AffineBisector":
        """Scale so |u| = 1 and the first non-negligible component of u is
        positive; makes coefficient comparisons across derivations meaningful."""
        norm = float(np.linalg.norm(self.u))
        u = self.u / norm
        b = self.b / norm
        lead = next((c for c in u if abs(c) > 1e-9), 1.0)
        if lead < 0.0:
            u, b = -u, -b
        return AffineBisector(u, b)


def klein_bisector(p, q) -> AffineBisector:
    """Bisector of two Klein sites, obtained by equating their lifted planes.

    With ``s_p = sqrt(1 - <p,p>)`` the line is
    ``{x : <p/s_p - q/s_q, x> = 1/s_p - 1/s_q}``; every point of it inside the
    ball is hyperbolically equidistant from p and q.
    """
    p = validate_klein(p, "p")
    q = validate_klein(q, "q")
    if p.size != q.size:
        raise DomainError("bisector arguments must have equal dimension")
    if float(np.max(np.abs(p - q))) <= COINCIDENT_TOL:
        raise DegeneracyError("coincident sites admit no bisector")
    sp = math.sqrt(1.0 - float(p @ p))
    sq = math.sqrt(1.0 - float(q @ q))
    return AffineBisector(p / sp - q / sq, 1.0 / sp - 1.0 / sq)


def hyperboloid_bisector(p, q) -> AffineBisector:
    """Bisector of two ambient points, derived on the hyperboloid.

    The bisector of the lifted points is the sheet's intersection with a
    hyperplane through the Minkowski origin; centrally projected it becomes
    ``{x' : <p - q, x'> = sqrt(1 + <p,p>) - sqrt(1 + <q,q>)}``, the same line
    :func:`klein_bisector` produces for the projected sites.
    """
    p = _as_vector(p, "p")
    q = _as_vector(q, "q")
    if p.size != q.size:
        raise DomainError("bisector arguments must have equal dimension")
    if float(np.max(np.abs(p - q))) <= COINCIDENT_TOL:
        raise DegeneracyError("coincident points admit no bisector")
    a = math.sqrt(1.0 + float(p @ p)) - math.sqrt(1.0 + float(q @ q))
    return AffineBisector(p - q, a)


@dataclass(frozen=True)
class WeightedSite:
    """Ball center and weight (squared radius; negative weights are fine)."""

    c: np.ndarray
    w: float

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        c.flags.writeable = False
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "w", float(self.w))
        if not (np.all(np.isfinite(c)) and math.isfinite(self.w)):
            raise DomainError("weighted site must be finite")

    def power(self, x) -> float:
        """Power |x - c|^2 - w of a point with respect to the ball."""
        d = np.asarray(x, dtype=float) - self.c
        return float(d @ d) - self.w

    def affine_coeffs(self) -> tuple[np.ndarray, float]:
        """(a, b) of the ball's hyperplane h(x) = <a, x> + b = -2<x,c> - w + <c,c>.

        Power comparisons between balls reduce to comparisons of these affine
        functions (the common |x|^2 term cancels).
        """
        return -2.0 * self.c, float(self.c @ self.c) - self.w


def subset_to_ball(indices: Sequence[int], sites) -> WeightedSite:
    """Map a k-subset of sites to the weighted ball encoding their summed planes.

    The ball ``c = sum(p / (2 s_p))``, ``w = <c,c> - sum(1 / s_p)`` has affine
    power function equal to the sum of the member sites' lifted hyperplanes,
    so the power diagram of all k-subset balls is the k-order diagram.
    """
    sites = [validate_klein(p, f"site {i}") for i, p in enumerate(sites)]
    n = len(sites)
    idx = [int(i) for i in indices]
    if not idx:
        raise DomainError("subset generator must contain at least one site index")
    if any(j <= i for i, j in zip(idx, idx[1:])):
        raise DomainError(f"subset indices must be strictly increasing, got {idx}")
    if idx[0] < 0 or idx[-1] >= n:
        raise DomainError(f"subset indices {idx} out of range for {n} sites")
    d = sites[0].size
    c = np.zeros(d)
    inv_sum = 0.0
    for i in idx:
        s = math.sqrt(1.0 - float(sites[i] @ sites[i]))
        c += sites[i] / (2.0 * s)
        inv_sum += 1.0 / s
    return WeightedSite(c, float(c @ c) - inv_sum)
