import numpy as np
import pytest
from numpy.testing import assert_allclose

from sphereslice.errors import DomainError
from sphereslice.fields import (
    SampledSphereField,
    ball_indicator,
    catalog_field,
    gaussian_field,
    grid_colatitudes,
    grid_longitudes,
    latitude_bump,
    read_grid_file,
    smooth_window,
    write_grid_file,
)


def test_cap_gate_is_exact_zero():
    f = catalog_field("const1", 2, domain="cap", a=0.3)
    pts = np.array([[0.0, 0.0, 1.0], [0.8, 0.0, 0.6], [0.0, 0.8, -0.6]])
    vals = f(pts)
    assert vals[0] == 0.0 and vals[1] == 0.0
    assert vals[2] == 1.0


def test_plane_support_gate():
    g = gaussian_field(2, radius=3.0)
    assert g(np.array([[4.0, 0.0]]))[0] == 0.0
    assert g(np.array([[1.0, 0.0]]))[0] == pytest.approx(np.exp(-1.0))


def test_margin_bump_vanishes_above_margin():
    f = latitude_bump(2, 0.5, margin=0.1)
    theta = np.linspace(0, np.pi, 100)
    pts = np.stack([np.sin(theta), np.zeros_like(theta), np.cos(theta)], axis=1)
    vals = f(pts)
    assert np.all(vals[pts[:, 2] >= 0.4] == 0.0)
    assert vals.max() > 0.5


def test_smooth_window_shape():
    assert smooth_window(np.array(0.0)) == pytest.approx(1.0)
    assert smooth_window(np.array(1.0)) == 0.0
    assert smooth_window(np.array(-2.0)) == 0.0


def test_unknown_catalog_name():
    with pytest.raises(DomainError):
        catalog_field("nope", 2)


def test_grid_file_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    vals = rng.normal(size=(8, 12))
    path = tmp_path / "grid.txt"
    write_grid_file(path, vals, a=1.0)
    sampled = read_grid_file(path)
    assert sampled.shape == (8, 12)
    # interpolant reproduces the sample grid
    th = grid_colatitudes(8)
    ph = grid_longitudes(12)
    pts = np.array(
        [
            [np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)]
            for t in th
            for p in ph
        ]
    )
    assert_allclose(sampled(pts).reshape(8, 12), vals, atol=1e-9)


def test_grid_file_rejects_bad_values(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n=2 kind=latlon dims=2x2 a=1.0\n1.0\n2.0\nnan\n4.0\n")
    with pytest.raises(DomainError):
        read_grid_file(path)


def test_sampled_field_interpolates_smooth_data():
    th = grid_colatitudes(48)
    ph = grid_longitudes(96)
    vals = np.cos(th)[:, None] ** 2 + 0.1 * np.sin(ph)[None, :]
    sampled = SampledSphereField(vals)
    pts = np.array([[np.sin(1.0) * np.cos(2.0), np.sin(1.0) * np.sin(2.0), np.cos(1.0)]])
    want = np.cos(1.0) ** 2 + 0.1 * np.sin(2.0)
    assert sampled(pts)[0] == pytest.approx(want, abs=1e-5)


def test_ball_indicator_breaks():
    b = ball_indicator(3)
    assert b.radial_breaks == (1.0,)
    assert b(np.array([[0.5, 0.0, 0.0]]))[0] == 1.0
    assert b(np.array([[1.5, 0.0, 0.0]]))[0] == 0.0
