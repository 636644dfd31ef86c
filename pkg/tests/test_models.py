import math

import numpy as np
import pytest

from hvoronoi.models import (
    DegeneracyError,
    DomainError,
    ProjectionSpec,
    _arccosh,
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
from hvoronoi.oracle import sample_disk


def test_klein_distance_identity():
    x = (0.3, 0.4)
    assert klein_distance(x, x) == pytest.approx(0.0, abs=1e-12)
    assert klein_distance(x, x, equivalent=True) == pytest.approx(1.0, abs=1e-14)


def test_klein_distance_known_value():
    assert klein_distance((0.0, 0.0), (0.6, 0.0), equivalent=True) == pytest.approx(1.25)
    assert klein_distance((0.0, 0.0), (0.6, 0.0)) == pytest.approx(math.log(2.0), abs=1e-14)


def test_klein_distance_symmetry():
    rng = np.random.default_rng(3)
    pts = sample_disk(rng, 2000, 0.97)
    for x, p in zip(pts[::2], pts[1::2]):
        assert klein_distance(x, p) == pytest.approx(klein_distance(p, x), abs=1e-12)


def test_klein_distance_metric_basics():
    rng = np.random.default_rng(4)
    pts = sample_disk(rng, 200, 0.95)
    for x, p in zip(pts[::2], pts[1::2]):
        d = klein_distance(x, p, equivalent=True)
        assert d >= 1.0 - 1e-14
        assert klein_distance(x, p) >= 0.0


def test_klein_distance_domain_errors():
    with pytest.raises(DomainError):
        klein_distance((1.0, 0.0), (0.0, 0.0))
    with pytest.raises(DomainError):
        klein_distance((0.0, 0.0), (0.8, 0.8))


def test_arccosh_clamp_policy():
    assert _arccosh(1.0 - 1e-13) == 0.0
    assert _arccosh(1.0) == 0.0
    with pytest.raises(DomainError):
        _arccosh(1.0 - 1e-6)


def test_weierstrass_lift_values():
    np.testing.assert_allclose(weierstrass_lift((0.0, 0.0)), [1.0, 0.0, 0.0])
    np.testing.assert_allclose(weierstrass_lift((0.75, 0.0)), [1.25, 0.75, 0.0])


def test_weierstrass_lift_defining_identity():
    rng = np.random.default_rng(5)
    for x in rng.normal(0.0, 2.0, size=(1000, 2)):
        lifted = weierstrass_lift(x)
        assert abs(minkowski_inner(lifted, lifted) + 1.0) <= 1e-12


def test_minkowski_inner():
    p = weierstrass_lift((0.0, 0.0))
    assert minkowski_inner(p, p) == pytest.approx(-1.0, abs=1e-12)
    assert minkowski_inner((1.0, 0.0, 0.0), (1.25, 0.75, 0.0)) == pytest.approx(-1.25)
    rng = np.random.default_rng(6)
    for a, b in rng.normal(size=(100, 2, 3)):
        assert minkowski_inner(a, b) == pytest.approx(minkowski_inner(b, a), abs=1e-12)


def test_hyperboloid_distance():
    apex = (1.0, 0.0, 0.0)
    assert hyperboloid_distance(apex, apex) == 0.0
    q = (1.25, 0.75, 0.0)
    assert hyperboloid_distance(apex, q, equivalent=True) == pytest.approx(1.25)
    assert hyperboloid_distance(apex, q) == pytest.approx(math.log(2.0), abs=1e-14)
    with pytest.raises(DomainError):
        hyperboloid_distance((2.0, 0.0, 0.0), apex)


def test_cross_model_distance_agreement():
    rng = np.random.default_rng(7)
    for a, b in rng.normal(0.0, 1.5, size=(1000, 2, 2)):
        dl = hyperboloid_distance(weierstrass_lift(a), weierstrass_lift(b))
        dk = klein_distance(ambient_to_klein(a), ambient_to_klein(b))
        assert abs(dl - dk) <= 1e-10


def test_central_project_values():
    assert np.allclose(central_project(ProjectionSpec(0.0, 1.0), (1.0, 0.0, 0.0)), [0.0, 0.0])
    np.testing.assert_allclose(
        central_project(ProjectionSpec(0.0, 1.0), (1.25, 0.75, 0.0)), [0.6, 0.0]
    )
    np.testing.assert_allclose(
        central_project(ProjectionSpec(0.0, 0.5), (1.25, 0.75, 0.0)), [0.3, 0.0]
    )


def test_central_project_norm_bound():
    rng = np.random.default_rng(8)
    for level in (1.0, 0.5, 0.25):
        spec = ProjectionSpec(0.0, level)
        for x in rng.normal(0.0, 3.0, size=(300, 2)):
            img = central_project(spec, weierstrass_lift(x))
            assert float(np.linalg.norm(img)) <= level + 1e-12


def test_projection_degeneracies():
    with pytest.raises(DomainError):
        ProjectionSpec(1.0, 1.0)
    with pytest.raises(DomainError):
        ProjectionSpec(2.0, 1.0)
    # an apex offset just below 1 makes the denominator vanish at the sheet apex
    spec = ProjectionSpec(1.0 - 1e-13, 1.0)
    with pytest.raises(DegeneracyError):
        central_project(spec, (1.0, 0.0, 0.0))


def test_klein_poincare_fixed_point_and_value():
    np.testing.assert_allclose(klein_to_poincare((0.0, 0.0)), [0.0, 0.0])
    np.testing.assert_allclose(klein_to_poincare((0.6, 0.0)), [1.0 / 3.0, 0.0])
    np.testing.assert_allclose(poincare_to_klein((1.0 / 3.0, 0.0)), [0.6, 0.0])


def test_klein_poincare_roundtrip():
    rng = np.random.default_rng(9)
    for x in sample_disk(rng, 1000, 0.999):
        back = poincare_to_klein(klein_to_poincare(x))
        assert float(np.max(np.abs(back - x))) <= 1e-12


def test_ambient_klein_roundtrip():
    rng = np.random.default_rng(10)
    for x in rng.normal(0.0, 2.0, size=(1000, 2)):
        back = klein_to_ambient(ambient_to_klein(x))
        assert float(np.max(np.abs(back - x))) <= 1e-12


def test_conversion_domain_errors():
    for f in (klein_to_poincare, poincare_to_klein, klein_to_ambient):
        with pytest.raises(DomainError):
            f((1.0, 0.0))


def test_arccosh_monotonicity_preserves_ordering():
    # composing with arccosh must not change which site is closer
    rng = np.random.default_rng(11)
    pts = sample_disk(rng, 900, 0.9)
    for x, p, q in zip(pts[::3], pts[1::3], pts[2::3]):
        raw = klein_distance(x, p, equivalent=True) < klein_distance(x, q, equivalent=True)
        full = klein_distance(x, p) < klein_distance(x, q)
        assert raw == full
