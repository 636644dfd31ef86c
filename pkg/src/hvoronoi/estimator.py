"""scikit-learn style front end.

:class:`HyperbolicVoronoi` wraps the construction pipeline in the familiar
``fit`` / ``predict`` shape so the diagram composes with the wider ecosystem
(cloning, grid search over ``order``, pipelines), and :class:`ModelMap` is a
stateless transformer between coordinate models.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .models import (
    ambient_to_klein,
    klein_to_ambient,
    klein_to_poincare,
    poincare_to_klein,
    validate_klein,
)
from .power import build_hvd, locate_cells

__all__ = ["HyperbolicVoronoi", "ModelMap"]

_TO_KLEIN = {
    "klein": lambda x: validate_klein(x),
    "poincare": poincare_to_klein,
    "ambient": ambient_to_klein,
}
_FROM_KLEIN = {
    "klein": lambda x: validate_klein(x),
    "poincare": klein_to_poincare,
    "ambient": klein_to_ambient,
}


def _check_planar(X, name: str) -> np.ndarray:
    X = check_array(X, dtype=np.float64, ensure_min_samples=1)
    if X.shape[1] != 2:
        raise ValueError(f"{name} must have shape (n, 2), got {X.shape}")
    return X


class HyperbolicVoronoi(BaseEstimator):
    """Order-k hyperbolic Voronoi tessellation of point sites.

    Parameters
    ----------
    order : int, default=1
        k of the k-order diagram: cells group points by the identity of
        their k nearest sites.
    clip_radius : float, default=1.0
        Radius (0 < l <= 1) of the disk the diagram is clipped to.
    site_model : {"klein", "poincare", "ambient"}, default="klein"
        Coordinate model of the rows passed to :meth:`fit`; internally all
        sites are normalized to Klein coordinates.

    Attributes
    ----------
    diagram_ : ClippedDiagram
        The constructed cell complex.
    sites_ : ndarray of shape (n_sites, 2)
        Sites in Klein coordinates.
    generators_ : tuple of tuple of int
        Site-index subset of each cell, aligned with ``diagram_.cells`` and
        with the labels returned by :meth:`predict`.
    """

    def __init__(self, order: int = 1, clip_radius: float = 1.0, site_model: str = "klein"):
        self.order = order
        self.clip_radius = clip_radius
        self.site_model = site_model

    def fit(self, X, y=None):
        """Build the diagram for sites X.

        Parameters
        ----------
        X : array-like of shape (n_sites, 2)
            Sites in the configured ``site_model`` coordinates.
        y : ignored

        Returns
        -------
        self
        """
        X = _check_planar(X, "sites")
        if self.site_model not in _TO_KLEIN:
            raise ValueError(f"unknown site_model {self.site_model!r}")
        convert = _TO_KLEIN[self.site_model]
        sites = np.array([convert(row) for row in X])
        self.diagram_ = build_hvd(sites, order=self.order, clip_radius=self.clip_radius)
        self.sites_ = self.diagram_.sites
        self.generators_ = self.diagram_.generators
        self.n_features_in_ = 2
        return self

    def predict(self, X) -> np.ndarray:
        """Cell index of each query point (Klein coordinates, inside the clip disk).

        ``generators_[label]`` recovers the k nearest-site set the cell stands
        for.  Points on a cell edge get the incident cell with the smallest
        generator.
        """
        check_is_fitted(self, "diagram_")
        X = _check_planar(X, "query points")
        return locate_cells(X, self.diagram_)


class ModelMap(TransformerMixin, BaseEstimator):
    """Stateless rowwise conversion between hyperbolic coordinate models.

    Parameters
    ----------
    source, target : {"klein", "poincare", "ambient"}
        Input and output coordinate models; conversion routes through Klein.
    """

    def __init__(self, source: str = "klein", target: str = "poincare"):
        self.source = source
        self.target = target

    def _converters(self):
        if self.source not in _TO_KLEIN or self.target not in _FROM_KLEIN:
            raise ValueError(f"unknown model in {(self.source, self.target)!r}")
        return _TO_KLEIN[self.source], _FROM_KLEIN[self.target]

    def fit(self, X, y=None):
        self._converters()
        self.n_features_in_ = 2
        return self

    def transform(self, X) -> np.ndarray:
        to_klein, from_klein = self._converters()
        X = _check_planar(X, "points")
        return np.array([from_klein(to_klein(row)) for row in X])

    def inverse_transform(self, X) -> np.ndarray:
        return ModelMap(source=self.target, target=self.source).fit(X).transform(X)
