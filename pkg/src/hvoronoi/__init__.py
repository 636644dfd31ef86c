"""Order-k hyperbolic Voronoi diagrams in the Klein disk.

Sites strictly inside the unit disk lift to tangent planes of the hemisphere
potential; k-subsets of sites become weighted balls whose power diagram,
clipped to the disk, is the k-order hyperbolic Voronoi diagram.  Coordinate
maps to and from the Poincare disk and the Minkowski hyperboloid are included,
along with a brute-force oracle that validates constructions by sampling.

The scikit-learn style front end lives in :class:`hvoronoi.HyperbolicVoronoi`;
the functional pipeline is :func:`build_hvd` / :func:`locate` /
:func:`verify_diagram`.
"""

from .cells import ArcEdge, ClippedDiagram, ConvexCell, SegmentEdge
from .estimator import HyperbolicVoronoi, ModelMap
from .lifting import (
    AffineBisector,
    LiftedHyperplane,
    WeightedSite,
    hyperboloid_bisector,
    klein_bisector,
    potential,
    potential_gradient,
    site_hyperplane,
    subset_to_ball,
)
from .models import (
    DegeneracyError,
    DomainError,
    GeometryError,
    ProjectionSpec,
    ambient_to_klein,
    central_project,
    hyperboloid_distance,
    klein_distance,
    klein_to_ambient,
    klein_to_poincare,
    minkowski_inner,
    poincare_to_klein,
    weierstrass_lift,
)
from .oracle import VerificationReport, k_nearest_set, level_of_point, verify_diagram
from .power import (
    EMPTY_PLANE,
    FULL_PLANE,
    PowerCell,
    build_hvd,
    build_power_diagram,
    clip_to_disk,
    locate,
    locate_cells,
    radical_halfplane,
)
from .serialization import diagram_from_dict, diagram_to_dict, diagram_to_json, load_sites
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "AffineBisector",
    "ArcEdge",
    "ClippedDiagram",
    "ConvexCell",
    "DegeneracyError",
    "DomainError",
    "EMPTY_PLANE",
    "FULL_PLANE",
    "GeometryError",
    "HyperbolicVoronoi",
    "LiftedHyperplane",
    "ModelMap",
    "PowerCell",
    "ProjectionSpec",
    "SegmentEdge",
    "VerificationReport",
    "WeightedSite",
    "ambient_to_klein",
    "build_hvd",
    "build_power_diagram",
    "central_project",
    "clip_to_disk",
    "diagram_from_dict",
    "diagram_to_dict",
    "diagram_to_json",
    "hyperboloid_bisector",
    "hyperboloid_distance",
    "k_nearest_set",
    "klein_bisector",
    "klein_distance",
    "klein_to_ambient",
    "klein_to_poincare",
    "level_of_point",
    "load_sites",
    "locate",
    "locate_cells",
    "minkowski_inner",
    "poincare_to_klein",
    "potential",
    "potential_gradient",
    "radical_halfplane",
    "render_svg",
    "site_hyperplane",
    "subset_to_ball",
    "verify_diagram",
    "weierstrass_lift",
]
