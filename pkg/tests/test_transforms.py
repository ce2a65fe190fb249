import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sphereslice.constants import funk_limit_const, radon_limit_const, sphere_area
from sphereslice.errors import DomainError, RangeError
from sphereslice.fields import catalog_field, latitude_bump, sphere_field
from sphereslice.geometry import north_pole, random_unit
from sphereslice.transforms import (
    cap_cosine,
    cosine_transform,
    funk,
    shifted_cosine,
    slice_complete,
    slice_geometry,
    slice_truncated,
)

PN = north_pole(2)


def test_funk_constant_and_odd():
    one = catalog_field("const1", 2)
    odd = catalog_field("z", 2)
    rng = np.random.default_rng(0)
    for _ in range(5):
        xi = random_unit(rng, 3)
        assert funk(one, xi) == pytest.approx(1.0, abs=1e-13)
        assert abs(funk(odd, xi)) < 1e-9


def test_funk_degree_two_multiplier():
    # degree-2 zonal field maps to (1 - xi_last^2)/2 on S^2
    z2 = catalog_field("z2", 2)
    rng = np.random.default_rng(1)
    for _ in range(5):
        xi = random_unit(rng, 3)
        assert funk(z2, xi) == pytest.approx((1 - xi[-1] ** 2) / 2, abs=1e-12)


def test_slice_geometry():
    center, radius = slice_geometry(PN, 0.5)
    assert_allclose(center, [0, 0, 0.5], atol=1e-15)
    assert radius == pytest.approx(math.sqrt(0.75), rel=1e-15)


@pytest.mark.parametrize("a", [0.0, 0.5, -0.5, 0.9, 1.0])
def test_slice_constant_law(a):
    one = catalog_field("const1", 2)
    rng = np.random.default_rng(2)
    for _ in range(20):
        xi = random_unit(rng, 3)
        want = sphere_area(1) * (1 - a * a * xi[-1] ** 2) ** 0.5
        assert slice_complete(one, xi, a) == pytest.approx(want, rel=1e-12)


def test_slice_reduces_to_funk_at_zero():
    f = catalog_field("smooth1", 2)
    rng = np.random.default_rng(3)
    for _ in range(10):
        xi = random_unit(rng, 3)
        assert slice_complete(f, xi, 0.0) == pytest.approx(
            sphere_area(1) * funk(f, xi), rel=1e-10
        )


def test_slice_z2_example():
    z2 = catalog_field("z2", 2)
    want = 2 * math.pi * math.sqrt(0.75) * 0.25
    assert slice_complete(z2, PN, 0.5) == pytest.approx(want, rel=1e-12)


def test_slice_evenness_exact():
    f = catalog_field("smooth1", 2)
    rng = np.random.default_rng(4)
    for a in (0.5, 0.9):
        for _ in range(10):
            xi = random_unit(rng, 3)
            assert slice_complete(f, xi, a) == pytest.approx(
                slice_complete(f, -xi, a), abs=1e-12
            )


def test_slice_degenerate_pole():
    one = catalog_field("const1", 2)
    with pytest.raises(DomainError):
        slice_complete(one, PN, 1.0)


def test_truncated_half_great_circle():
    capone = catalog_field("const1", 2, domain="cap", a=0.0)
    for xi in (np.array([1.0, 0, 0]), np.array([0.6, 0, 0.8]), np.array([0, 0.8, 0.6])):
        assert slice_truncated(capone, xi, 0.0) == pytest.approx(math.pi, rel=1e-12)


def test_truncated_polar_slices_are_complete_spheres():
    capone3 = catalog_field("const1", 3, domain="cap", a=1.0)
    xi = np.array([0.6, 0.0, 0.0, 0.8])
    assert slice_truncated(capone3, xi, 1.0) == pytest.approx(
        4 * math.pi * (1 - 0.64), rel=1e-12
    )
    capone2 = catalog_field("const1", 2, domain="cap", a=1.0)
    xi2 = np.array([0.8, 0.0, 0.6])
    assert slice_truncated(capone2, xi2, 1.0) == pytest.approx(
        2 * math.pi * 0.8, rel=1e-12
    )


def test_truncated_disjoint_support_is_zero():
    # support below -0.9; a slice whose lowest point stays above -0.9
    f = latitude_bump(2, -0.8, margin=0.1, lo=-0.97)
    xi = np.array([0.2, 0.0, 0.98])
    xi /= np.linalg.norm(xi)
    assert slice_truncated(f, xi, -0.8) == pytest.approx(0.0, abs=1e-15)


def test_truncated_requires_upper_label():
    capone = catalog_field("const1", 2, domain="cap", a=0.0)
    with pytest.raises(DomainError):
        slice_truncated(capone, np.array([0.6, 0.0, -0.8]), 0.0)


def test_truncated_matches_zero_extension_path():
    # margin field: hard-gated extension integrated without clip knowledge
    f = latitude_bump(2, 0.5, margin=0.1, modulated=True)
    ext = sphere_field(lambda p: np.where(p[..., -1] < 0.5, f.evaluate(p), 0.0), 2)
    rng = np.random.default_rng(5)
    for _ in range(10):
        xi = random_unit(rng, 3)
        xi[-1] = abs(xi[-1])
        xi /= np.linalg.norm(xi)
        if xi[-1] > 0.99:
            continue
        assert slice_truncated(f, xi, 0.5, lat=96) == pytest.approx(
            slice_complete(ext, xi, 0.5, lat=96), abs=1e-6
        )


def test_cosine_transform_range_checks():
    f = catalog_field("const1", 2)
    for lam in (-1.0, 0.0, 1.2):
        with pytest.raises(RangeError):
            cosine_transform(f, PN, lam)


def test_cosine_annihilates_odd():
    odd = catalog_field("z", 2)
    xi = np.array([0.6, 0.0, 0.8])
    assert abs(cosine_transform(odd, xi, -0.5)) < 1e-10


def test_cosine_constant_closed_form():
    # C^lam(1) = gamma(2, lam) * (area(S1)/area(S2)) * B((1+lam)/2, 1)
    from sphereslice.constants import cosine_gamma

    one = catalog_field("const1", 2)
    for lam in (-0.25, -0.5, -0.75):
        want = (
            cosine_gamma(2, lam)
            * (sphere_area(1) / sphere_area(2))
            * 2.0
            / (1.0 + lam)
        )
        assert cosine_transform(one, PN, lam) == pytest.approx(want, rel=1e-12)


def test_shifted_cosine_reduces_at_zero():
    f = catalog_field("smooth1", 2)
    xi = np.array([0.6, 0.0, 0.8])
    lam = -0.5
    assert shifted_cosine(f, xi, lam, 0.0) == pytest.approx(
        sphere_area(2) * cosine_transform(f, xi, lam), rel=1e-11
    )


def test_shifted_cosine_limit_to_slice():
    f = catalog_field("smooth1", 2)
    xi = np.array([0.6, 0.0, 0.8])
    a = 0.5
    target = radon_limit_const(2) / math.sqrt(1 - a * a * xi[-1] ** 2) * slice_complete(
        f, xi, a
    )
    diffs = [
        abs(shifted_cosine(f, xi, -1 + eps, a) - target) for eps in (0.2, 0.1, 0.05)
    ]
    assert diffs[0] > diffs[1] > diffs[2]


def test_cosine_limit_to_funk():
    f = catalog_field("z2", 2)
    xi = np.array([0.6, 0.0, 0.8])
    target = funk_limit_const(2) * (1 - xi[-1] ** 2) / 2
    diffs = [abs(cosine_transform(f, xi, -1 + eps) - target) for eps in (0.2, 0.1, 0.05)]
    assert diffs[0] > diffs[1] > diffs[2]


def test_cap_cosine_equals_shifted_of_extension():
    f = latitude_bump(2, 0.5, margin=0.1)
    ext = sphere_field(lambda p: np.where(p[..., -1] < 0.5, f.evaluate(p), 0.0), 2)
    xi = np.array([0.6, 0.0, 0.8])
    lam = -0.5
    assert cap_cosine(f, xi, lam, 0.5) == pytest.approx(
        shifted_cosine(ext, xi, lam, 0.5), rel=1e-9
    )


def test_cap_cosine_limit_anchor():
    # f = 1 on the lower half sphere, a = 0, equatorial label:
    # limit d_2 * S_0(1) = d_2 * pi
    capone = catalog_field("const1", 2, domain="cap", a=0.0)
    xi = np.array([1.0, 0.0, 0.0])
    target = radon_limit_const(2) * math.pi
    d = [abs(cap_cosine(capone, xi, -1 + e, 0.0) - target) for e in (0.2, 0.1, 0.05)]
    assert d[0] > d[1] > d[2]
    extrap = 2 * cap_cosine(capone, xi, -0.975, 0.0) - cap_cosine(capone, xi, -0.95, 0.0)
    assert extrap == pytest.approx(target, rel=5e-3)
