import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sphereslice.constants import sphere_area
from sphereslice.quadrature import (
    cap_rule,
    geometric_breaks,
    latitude_rule,
    latitude_singular_rule,
    paneled_nodes,
    segment_nodes,
    singular_endpoint_panels,
    sphere_rule,
    weighted_segment_nodes,
)


@pytest.mark.parametrize("n", [2, 3])
def test_constant_area(n):
    for lat in (16, 32, 64):
        rule = sphere_rule(n, lat)
        assert np.all(rule.weights > 0)
        assert float(np.sum(rule.weights)) == pytest.approx(sphere_area(n), rel=1e-12)


@pytest.mark.parametrize("n", [2, 3])
def test_polynomial_moments(n):
    # even coordinate powers have closed-form moments by symmetry
    rule = sphere_rule(n, 32)
    last = rule.points[:, -1]
    total = sphere_area(n)
    # sum of squares over all coordinates = 1, split equally
    assert rule.integrate(last**2) == pytest.approx(total / (n + 1), rel=1e-10)
    # degree 8 stays at rule precision
    m8 = rule.integrate(rule.points[:, 0] ** 8)
    m8_b = sphere_rule(n, 64).integrate(sphere_rule(n, 64).points[:, 0] ** 8)
    assert m8 == pytest.approx(m8_b, rel=1e-10)


def test_refinement_improves_or_stays_converged():
    f = lambda pts: np.exp(pts[:, 0] + 0.5 * pts[:, 2])
    vals = {}
    for lat in (8, 16, 32, 64):
        rule = sphere_rule(2, lat)
        vals[lat] = rule.integrate(f(rule.points))
    ref = vals[64]
    e8, e16, e32 = (abs(vals[k] - ref) for k in (8, 16, 32))
    assert e16 <= 0.5 * e8 or e16 < 1e-12
    assert e32 <= 0.5 * e16 or e32 < 1e-12


def test_latitude_rule_weight_absorption():
    # int_{-1}^{1} (1-t^2)^((n-2)/2) dt equals area(S^n)/area(S^(n-1))
    for n in (2, 3):
        t, w = latitude_rule(n, 48)
        assert float(np.sum(w)) == pytest.approx(
            sphere_area(n) / sphere_area(n - 1), rel=1e-13
        )


def test_weighted_segment_nodes_against_closed_form():
    # int_0^1 t^lam dt = 1/(1+lam)
    for lam in (-0.25, -0.5, -0.9):
        t, w = weighted_segment_nodes(0.0, 1.0, 32, left_exp=lam)
        assert float(np.sum(w)) == pytest.approx(1.0 / (1.0 + lam), rel=1e-13)
    # smooth remainder
    t, w = weighted_segment_nodes(0.0, 2.0, 48, left_exp=-0.5)
    got = float(np.dot(w, np.cos(t)))
    # reference via substitution t = u^2: 2 int_0^sqrt(2) cos(u^2) du
    u, wu = segment_nodes(0.0, math.sqrt(2.0), 200)
    want = 2.0 * float(np.dot(wu, np.cos(u**2)))
    assert got == pytest.approx(want, rel=1e-12)


def test_latitude_singular_rule_matches_plain_on_smooth():
    # with lam folded back in, the singular rule must reproduce a smooth integral
    x0, lam = 0.3, -0.5
    t, w = latitude_singular_rule(2, x0, lam, 48)
    got = float(np.dot(w, np.cos(t)))
    tt, ww = weighted_segment_nodes(x0, 1.0, 64, left_exp=lam)
    tt2, ww2 = weighted_segment_nodes(-1.0, x0, 64, right_exp=lam)
    want = float(np.dot(ww, np.cos(tt))) + float(np.dot(ww2, np.cos(tt2)))
    assert got == pytest.approx(want, rel=1e-12)


def test_singular_endpoint_panels_value():
    # int_0^8 t^(-0.5) exp(-t) dt = gamma(1/2) erf-ish; reference by substitution
    t, w = singular_endpoint_panels(0.0, 8.0, 0.0, -0.5, 32)
    got = float(np.dot(w, np.exp(-t)))
    u, wu = segment_nodes(0.0, math.sqrt(8.0), 400)
    want = 2.0 * float(np.dot(wu, np.exp(-(u**2))))
    assert got == pytest.approx(want, rel=1e-12)


def test_geometric_breaks_cover_interval():
    br = geometric_breaks(-10.0, 10.0)
    assert br[0] == -10.0 and br[-1] == 10.0
    assert 0.0 in br and 1.0 in br and -4.0 in br
    t, w = paneled_nodes(br, 16)
    assert float(np.sum(w)) == pytest.approx(20.0, rel=1e-14)


def test_cap_rule_area():
    # cap area on S^2: 2 pi (1 - a) below height a measured from the bottom:
    # area{eta3 < a} = 2 pi (1 + a)
    for a in (-0.3, 0.0, 0.5, 1.0):
        rule = cap_rule(2, a, 64)
        assert float(np.sum(rule.weights)) == pytest.approx(
            2 * math.pi * (1 + a), rel=1e-12
        )
