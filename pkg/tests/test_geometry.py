import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from sphereslice.errors import DomainError
from sphereslice.geometry import (
    basis_last_aligned,
    decompose,
    make_point,
    north_pole,
    orthonormal_basis,
    random_unit,
)


def test_make_point_equator():
    p = make_point(np.array([1.0, 0.0]), 0.0)
    assert_allclose(p, [1.0, 0.0, 0.0], atol=1e-15)


def test_make_point_pole_degenerate():
    for psi in ([1.0, 0.0], [0.0, 1.0]):
        assert_allclose(make_point(np.array(psi), 1.0), north_pole(2), atol=1e-15)


def test_make_point_example():
    p = make_point(np.array([1.0, 0.0]), 0.6)
    assert_allclose(p, [0.8, 0.0, 0.6], atol=1e-15)


def test_make_point_rejects_bad_inputs():
    with pytest.raises(DomainError):
        make_point(np.array([1.0, 1.0]), 0.0)
    with pytest.raises(DomainError):
        make_point(np.array([1.0, 0.0]), 1.5)


@given(
    u=st.floats(min_value=-0.999, max_value=0.999),
    ang=st.floats(min_value=0.0, max_value=2 * np.pi),
)
@settings(max_examples=100, deadline=None)
def test_meridional_roundtrip(u, ang):
    psi = np.array([np.cos(ang), np.sin(ang)])
    eta = make_point(psi, u)
    psi2, u2 = decompose(eta)
    assert abs(u2 - u) < 1e-12
    assert np.linalg.norm(make_point(psi2, u2) - eta) < 1e-12


def test_orthonormal_basis_properties():
    rng = np.random.default_rng(0)
    for dim in (3, 4):
        for _ in range(20):
            xi = random_unit(rng, dim)
            basis = orthonormal_basis(xi)
            assert basis.shape == (dim, dim - 1)
            gram = basis.T @ basis
            assert_allclose(gram, np.eye(dim - 1), atol=1e-12)
            assert_allclose(basis.T @ xi, 0.0, atol=1e-12)


def test_orthonormal_basis_sign_invariant():
    rng = np.random.default_rng(1)
    xi = random_unit(rng, 3)
    assert_allclose(orthonormal_basis(xi), orthonormal_basis(-xi), atol=1e-15)


def test_basis_last_aligned_isolates_last_axis():
    rng = np.random.default_rng(2)
    for _ in range(20):
        xi = random_unit(rng, 4)
        basis, p = basis_last_aligned(xi)
        assert p == pytest.approx(np.sqrt(1 - xi[-1] ** 2), abs=1e-12)
        # all but the final column are horizontal
        assert_allclose(basis[-1, :-1], 0.0, atol=1e-12)
        assert_allclose(basis.T @ basis, np.eye(3), atol=1e-12)
        assert_allclose(basis.T @ xi, 0.0, atol=1e-12)


def test_basis_last_aligned_at_pole_falls_back():
    basis, p = basis_last_aligned(north_pole(2))
    assert p == 0.0
    assert basis.shape == (3, 2)
