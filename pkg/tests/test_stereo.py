import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sphereslice.errors import DomainError
from sphereslice.fields import gaussian_field, latitude_bump
from sphereslice.geometry import random_unit
from sphereslice.stereo import (
    batch_truncated_slices,
    cap_measure_identity,
    cap_weight,
    fractional_slice_via_radon,
    norm_identity_sides,
    plane_measure_identity,
    plane_support_radius,
    profile_to_sphere,
    pull_from_plane,
    push_to_plane,
    radon_product_identity,
    reconstruct_truncated,
    slice_via_radon,
    sphere_to_profile,
    stereo_factors,
    stereo_to_plane,
    stereo_to_sphere,
)
from sphereslice.transforms import cap_cosine, slice_truncated


def test_projection_examples():
    assert_allclose(stereo_to_sphere(np.zeros((1, 2)), 0.0)[0], [0, 0, -1], atol=1e-14)
    assert_allclose(stereo_to_plane(np.array([[1.0, 0.0, 0.0]]), 1.0)[0], [2.0, 0.0], atol=1e-14)
    eta = stereo_to_sphere(np.array([[2.0, 0.0]]), 1.0)[0]
    assert eta[-1] == pytest.approx(0.0, abs=1e-14)


def test_factor_special_cases():
    x = np.array([[0.0, 0.0], [1.0, 1.0]])
    p, q, d, wpi = stereo_factors(x, 0.0)
    assert_allclose(d, np.sqrt(np.sum(x * x, -1) + 1.0), atol=1e-14)
    assert_allclose(p, 1.0 / np.sqrt(np.sum(x * x, -1) + 1.0), atol=1e-14)
    p1, q1, d1, _ = stereo_factors(x, 1.0)
    assert_allclose(d1, 2.0, atol=1e-14)
    assert_allclose(p1, 4.0 / (np.sum(x * x, -1) + 4.0), atol=1e-14)
    assert q1[0] == pytest.approx(-1.0, abs=1e-14)


@pytest.mark.parametrize("a", [0.0, 0.5, 1.0])
def test_roundtrips_and_factor_identities(a):
    rng = np.random.default_rng(0)
    x = rng.normal(size=(1000, 2)) * 2.0
    eta = stereo_to_sphere(x, a)
    assert np.abs(np.linalg.norm(eta, axis=1) - 1.0).max() < 1e-12
    assert np.all(eta[:, -1] < a)
    assert np.abs(stereo_to_plane(eta, a) - x).max() < 1e-10
    p, q, d, wpi = stereo_factors(x, a)
    assert np.abs(p - (a - eta[:, -1]) / (a + 1.0)).max() < 1e-10
    assert np.abs(q - eta[:, -1]).max() < 1e-10
    assert np.abs(wpi - cap_weight(eta, a)).max() < 1e-9


def test_plane_measure_identity():
    g = gaussian_field(2)
    for a in (0.0, 0.5, 1.0):
        lhs, rhs = plane_measure_identity(g, a)
        assert lhs == pytest.approx(rhs, rel=1e-6)
        assert lhs == pytest.approx(math.pi, rel=1e-9)


def test_cap_measure_identity():
    f = latitude_bump(2, 0.5, margin=0.1, modulated=True)
    lhs, rhs = cap_measure_identity(f, 0.5)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_push_pull_roundtrip():
    f = latitude_bump(2, 0.5, margin=0.1, modulated=True)
    u = push_to_plane(f, 0.5)
    back = pull_from_plane(u, 2, 0.5)
    rng = np.random.default_rng(1)
    pts = random_unit(rng, 3, 200)
    pts = pts[pts[:, -1] < 0.45]
    assert np.abs(back(pts) - f(pts)).max() < 1e-10


def test_push_special_forms():
    # a = 0 and a = 1 prefactors
    f = latitude_bump(2, 0.0, margin=0.1)
    u = push_to_plane(f, 0.0)
    x = np.array([[0.5, -0.2], [1.5, 0.3]])
    r2 = np.sum(x * x, -1)
    expect = (r2 + 1.0) ** (-1.0) * f(stereo_to_sphere(x, 0.0))
    assert_allclose(u(x), expect, atol=1e-13)
    f1 = latitude_bump(2, 1.0, margin=0.4)
    u1 = push_to_plane(f1, 1.0)
    expect1 = (4.0 / (r2 + 4.0)) ** 1 * f1(stereo_to_sphere(x, 1.0))
    assert_allclose(u1(x), expect1, atol=1e-13)


def test_push_requires_margin():
    f = latitude_bump(2, 0.5, margin=0.1)
    bare = type(f)(f.evaluate, f.domain, f.n, cap_a=f.cap_a, margin=0.0)
    with pytest.raises(DomainError):
        push_to_plane(bare, 0.5)


def test_profile_lift_example():
    phi = lambda theta, t: np.ones(np.shape(t))
    lifted = profile_to_sphere(phi, 2, 0.5)
    xi = np.array([[0.8, 0.0, 0.6]])
    want = math.sqrt((1 - 0.25 * 0.36) / (1 - 0.36))
    assert lifted(xi)[0] == pytest.approx(want, rel=1e-13)


def test_profile_lift_inverse_roundtrip():
    phi = lambda theta, t: np.exp(-np.asarray(t) ** 2) * (1.0 + 0.2 * np.asarray(theta)[..., 0])
    a = 0.5
    lifted = profile_to_sphere(phi, 2, a)
    back = sphere_to_profile(lifted, a)
    theta = np.array([0.6, 0.8])
    for t in (0.0, 0.5, 2.0):
        assert back(theta, np.array([t]))[0] == pytest.approx(
            float(phi(theta, np.array([t]))[0]), rel=1e-12
        )


@pytest.mark.parametrize("a", [0.0, 0.5, 1.0])
def test_factorization_matches_truncated_slices(a):
    rng = np.random.default_rng(2)
    worst = 0.0
    for modulated in (False, True):
        f = latitude_bump(2, a, margin=0.1, modulated=modulated)
        for _ in range(10):
            xi = random_unit(rng, 3)
            xi[-1] = abs(xi[-1])
            xi /= np.linalg.norm(xi)
            if xi[-1] > 0.97:
                continue
            worst = max(
                worst, abs(slice_truncated(f, xi, a) - slice_via_radon(f, xi, a))
            )
    assert worst <= 1e-5


def test_fractional_factorization():
    f = latitude_bump(2, 0.5, margin=0.1)
    rng = np.random.default_rng(3)
    worst = 0.0
    for lam in (-0.25, -0.5, -0.75):
        for _ in range(4):
            xi = random_unit(rng, 3)
            xi[-1] = abs(xi[-1])
            xi /= np.linalg.norm(xi)
            if xi[-1] > 0.95:
                continue
            c1 = cap_cosine(f, xi, lam, 0.5, lat=96)
            c2 = fractional_slice_via_radon(f, xi, lam, 0.5, nodes=48, radon_nodes=48)
            worst = max(worst, abs(c1 - c2))
    assert worst <= 1e-6


def test_pole_label_rejected():
    f = latitude_bump(2, 0.5, margin=0.1)
    with pytest.raises(DomainError):
        slice_via_radon(f, np.array([0.0, 0.0, 1.0]), 0.5)


def test_norm_identities():
    f = latitude_bump(2, 0.5, margin=0.1, modulated=True)
    lhs, rhs = norm_identity_sides("plane_mass", f, 0.5)
    assert lhs == pytest.approx(rhs, rel=1e-7)
    lhs, rhs = norm_identity_sides("plane_norm", f, 0.5, p=2.0, lam=0.5)
    assert lhs == pytest.approx(rhs, rel=1e-6)
    f0 = latitude_bump(2, 0.0, margin=0.1, modulated=True)
    lhs, rhs = norm_identity_sides("half_norm", f0, 0.0, p=1.0, lat=128)
    assert lhs == pytest.approx(rhs, rel=1e-7)


def test_radon_product_identity():
    g = gaussian_field(2, radius=6.0)
    lhs, rhs = radon_product_identity(g)
    assert lhs == pytest.approx(rhs, rel=1e-6)


@pytest.mark.parametrize("a,margin", [(0.0, 0.3), (1.0, 1.3)])
def test_truncated_round_trip(a, margin):
    f = latitude_bump(2, a, margin=margin, lo=-0.9, modulated=True)
    data = batch_truncated_slices(f, a, lat=48)
    rng = np.random.default_rng(4)
    pts = []
    while len(pts) < 200:
        v = random_unit(rng, 3)
        if -0.93 < v[2] < a - margin + 0.08:
            pts.append(v)
    pts = np.array(pts)
    radius = plane_support_radius(a, a - margin + 0.1)
    rec = reconstruct_truncated(data, pts, a, support_radius=radius, n_angles=300, n_t=600)
    truth = f(pts)
    rel = np.linalg.norm(rec - truth) / np.linalg.norm(truth)
    assert rel <= 2e-2


def test_reconstruct_zero_data():
    def zero(xis):
        return np.zeros(np.atleast_2d(xis).shape[0])

    pts = np.array([[0.0, 0.6, -0.8]])
    rec = reconstruct_truncated(zero, pts, 0.0, support_radius=2.0)
    assert abs(rec[0]) < 1e-12


def test_reconstruct_rejects_points_outside_cap():
    def zero(xis):
        return np.zeros(np.atleast_2d(xis).shape[0])

    with pytest.raises(DomainError):
        reconstruct_truncated(zero, np.array([[0.0, 0.6, 0.8]]), 0.0, support_radius=2.0)
