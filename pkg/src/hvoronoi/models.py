"""Distances and coordinate maps for the Klein disk, Poincare disk, and
Minkowski hyperboloid models of hyperbolic space.

Points are plain float ndarrays.  Klein and Poincare points live strictly
inside the open unit ball; "ambient" points are unconstrained vectors in R^d
that rise to the upper hyperboloid sheet via :func:`weierstrass_lift`;
hyperboloid points carry a leading timelike coordinate, ``p = (x0, x)`` with
``x0 = sqrt(1 + <x, x>) >= 1``.

Everything here is a pure function over immutable values, so concurrent use
needs no coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GeometryError",
    "DomainError",
    "DegeneracyError",
    "ProjectionSpec",
    "klein_distance",
    "weierstrass_lift",
    "minkowski_inner",
    "hyperboloid_distance",
    "central_project",
    "klein_to_poincare",
    "poincare_to_klein",
    "klein_to_ambient",
    "ambient_to_klein",
    "validate_klein",
]

# Rounding forgiveness for arccosh arguments just below 1: nearly coincident
# points may evaluate to 1 - O(eps) and must not poison downstream comparisons.
ACOSH_CLAMP = 1e-12
# Allowed |<p,p>_L + 1| for membership on the upper hyperboloid sheet.
HYPERBOLOID_TOL = 1e-12
# Smallest central-projection denominator before the map is declared singular.
PROJECTION_DENOM_MIN = 1e-12


class GeometryError(ValueError):
    """Base class for geometric domain and degeneracy failures."""


class DomainError(GeometryError):
    """A point lies outside the domain an operation requires."""


class DegeneracyError(GeometryError):
    """Inputs make the requested construction undefined."""


def _as_vector(x, name: str = "point") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError(f"{name} must be a 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite coordinates")
    return arr


def validate_klein(x, name: str = "point") -> np.ndarray:
    """Coerce to a float vector and require it strictly inside the unit ball."""
    arr = _as_vector(x, name)
    if float(arr @ arr) >= 1.0:
        raise DomainError(
            f"{name} must lie strictly inside the unit ball "
            f"(|{name}| = {float(np.linalg.norm(arr)):.17g})"
        )
    return arr


def _arccosh(value: float) -> float:
    if value >= 1.0:
        return math.acosh(value)
    if value >= 1.0 - ACOSH_CLAMP:
        return 0.0
    raise DomainError(f"arccosh argument {value!r} is below 1 beyond rounding tolerance")


def klein_distance(x, p, equivalent: bool = False) -> float:
    """Hyperbolic distance between two points of the open unit ball.

    The Klein-model distance is ``arccosh(dk)`` with
    ``dk = (1 - <x,p>) / (sqrt(1 - <x,x>) sqrt(1 - <p,p>))``.  Passing
    ``equivalent=True`` returns ``dk`` itself (>= 1, equal to 1 iff x == p);
    arccosh is monotone, so ``dk`` preserves all distance comparisons while
    staying well conditioned near coincident points.
    """
    x = validate_klein(x, "x")
    p = validate_klein(p, "p")
    dk = (1.0 - float(x @ p)) / math.sqrt((1.0 - float(x @ x)) * (1.0 - float(p @ p)))
    if equivalent:
        return dk
    return _arccosh(dk)


def weierstrass_lift(x) -> np.ndarray:
    """Raise an ambient vector x in R^d to (sqrt(1 + <x,x>), x) on the upper sheet."""
    x = _as_vector(x, "ambient point")
    return np.concatenate(([math.sqrt(1.0 + float(x @ x))], x))


def minkowski_inner(p, q) -> float:
    """Minkowski bilinear form -p0*q0 + <p_space, q_space> (signature -,+,...,+)."""
    p = _as_vector(p, "p")
    q = _as_vector(q, "q")
    if p.size != q.size or p.size < 2:
        raise DomainError("Minkowski form needs two vectors of equal size >= 2")
    return float(p[1:] @ q[1:]) - float(p[0] * q[0])


def _validate_hyperboloid(p, name: str = "point") -> np.ndarray:
    p = _as_vector(p, name)
    if p.size < 2:
        raise DomainError(f"{name} needs a timelike plus >= 1 spacelike coordinate")
    if abs(minkowski_inner(p, p) + 1.0) > HYPERBOLOID_TOL or p[0] < 1.0:
        raise DomainError(f"{name} does not lie on the upper hyperboloid sheet")
    return p


def hyperboloid_distance(p, q, equivalent: bool = False) -> float:
    """Distance arccosh(-<p,q>_L) between upper-sheet hyperboloid points.

    As for :func:`klein_distance`, ``equivalent=True`` drops the arccosh and
    returns ``-<p,q>_L`` directly.
    """
    p = _validate_hyperboloid(p, "p")
    q = _validate_hyperboloid(q, "q")
    dl = -minkowski_inner(p, q)
    if equivalent:
        return dl
    return _arccosh(dl)


@dataclass(frozen=True)
class ProjectionSpec:
    """Central projection of the upper sheet from apex (c, 0, ..., 0) onto the
    hyperplane x0 = level.

    ``c = 0, level = 1`` is the projection giving Klein coordinates; smaller
    levels shrink the image disk to radius ``level``.  The paper-facing
    constraint is only that the apex misses the sheet, but nondegeneracy of the
    denominator ``x0 - c`` over the whole sheet needs ``c < 1`` (x0 attains 1 at
    the apex of the sheet), so that is what we enforce.
    """

    c: float
    level: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.level)):
            raise DomainError("projection parameters must be finite")
        if self.c >= 1.0:
            raise DomainError(f"projection apex offset must satisfy c < 1, got {self.c}")


def central_project(spec: ProjectionSpec, p) -> np.ndarray:
    """Project a hyperboloid point through the apex of `spec` onto x0 = level.

    Returns the spacelike image ``(level - c) / (x0 - c) * x``.  With ``c = 0``
    the image norm never exceeds ``level``.
    """
    p = _validate_hyperboloid(p, "p")
    denom = float(p[0]) - spec.c
    if denom <= PROJECTION_DENOM_MIN:
        raise DegeneracyError("central projection denominator vanishes for this point")
    return (spec.level - spec.c) / denom * p[1:]


def klein_to_poincare(x) -> np.ndarray:
    """Radial map x / (1 + sqrt(1 - <x,x>)) from Klein to Poincare coordinates."""
    x = validate_klein(x)
    return x / (1.0 + math.sqrt(1.0 - float(x @ x)))


def poincare_to_klein(x) -> np.ndarray:
    """Radial map 2x / (1 + <x,x>), inverse of :func:`klein_to_poincare`."""
    x = validate_klein(x, "poincare point")
    return 2.0 * x / (1.0 + float(x @ x))


def klein_to_ambient(x) -> np.ndarray:
    """Rescale a Klein point to the ambient vector x / sqrt(1 - <x,x>) whose
    Weierstrass lift projects back onto it."""
    x = validate_klein(x)
    return x / math.sqrt(1.0 - float(x @ x))


def ambient_to_klein(x) -> np.ndarray:
    """Klein coordinates of an ambient vector: lift to the sheet, project centrally."""
    return central_project(ProjectionSpec(0.0, 1.0), weierstrass_lift(x))
