import math

import numpy as np
import pytest

from birefringence.errors import DomainError, QuadratureError
from birefringence.oracle import (
    QuadratureSpec,
    compare_grid,
    quadrature_field,
    region_sample_points,
)
from birefringence.planewave import CrystalMedium, filtered_amplitude
from birefringence.pulse import GaussianPulse, closed_form_values

PI = math.pi
BETA = 0.21 * PI


def test_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(nodes=32)
    with pytest.raises(DomainError):
        QuadratureSpec(span=5)
    assert QuadratureSpec().doubled().nodes == 4096


def test_incoming_region_carrier(fig5_medium):
    m = fig5_medium
    p = GaussianPulse.tuned(m, 0, ell=1.3)
    for x, t in [(-0.5, -1.0), (-2.0, -1.2), (-0.1, 0.3)]:
        s = x - t
        expected = math.sqrt(0.5) * 2 * math.cos(PI / 4) * np.exp(-s * s / p.sigma + 1j * p.omega0 * s)
        assert abs(quadrature_field(x, t, m, PI / 4, p) - expected) < 1e-8
        # the carrier exp(i sigma omega0 s / 4) does not reproduce the synthesized field
        misprint = math.sqrt(0.5) * 2 * math.cos(PI / 4) * np.exp(-s * s / p.sigma + 0.25j * p.sigma * p.omega0 * s)
        assert abs(quadrature_field(x, t, m, PI / 4, p) - misprint) > 1e-3


def test_outgoing_region_matches_closed_form(fig6_medium):
    m = fig6_medium
    p = GaussianPulse.tuned(m, 0, ell=4.0)
    for beta in (0.0, BETA, PI / 4, 1.3):
        pts = [(x, x + 0.35 + dt) for x, dt in zip(np.linspace(1.01, 12, 25), np.linspace(-6, 6, 25))]
        assert compare_grid(pts, m, beta, p).max_error < 1e-8


def test_single_component_all_regions(fig5_medium):
    p = GaussianPulse.tuned(fig5_medium, 0, mu=1.6)
    pts = [pt for region in region_sample_points(fig5_medium, p, 60).values() for pt in region]
    assert compare_grid(pts, fig5_medium, 0.0, p).max_error < 1e-10


def test_narrowband_limit_recovers_plane_wave(fig5_medium):
    m = fig5_medium
    omega0 = 17.3
    p = GaussianPulse(omega0, 1e6)
    t = 5.0
    x = t + (1.0 - m.n_bar) * m.d
    expected = abs(filtered_amplitude(BETA, m.dkd(omega0)))
    assert abs(abs(quadrature_field(x, t, m, BETA, p)) - expected) < 1e-4


def test_random_parameter_fuzz():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(20):
        n_o = rng.uniform(1.0, 2.0)
        m = CrystalMedium(n_o, n_o + rng.uniform(0.05, 0.8), rng.uniform(0.5, 2.0))
        p = GaussianPulse.tuned(m, int(rng.integers(0, 4)), ell=rng.uniform(0.3, 5.0) * m.d)
        beta = rng.uniform(0, PI)
        pts = [pt for region in region_sample_points(m, p, 10).values() for pt in region]
        worst = max(worst, compare_grid(pts, m, beta, p).max_error)
    assert worst < 1e-7


def test_self_convergence(fig6_medium):
    p = GaussianPulse.tuned(fig6_medium, 0, ell=4.0)
    spec = QuadratureSpec()
    for x, t in [(-3.0, -2.0), (0.5, 1.0), (4.0, 5.0)]:
        a = quadrature_field(x, t, fig6_medium, BETA, p, spec)
        b = quadrature_field(x, t, fig6_medium, BETA, p, spec.doubled())
        assert abs(a - b) < 1e-11


def test_continuity_across_boundaries(fig6_medium):
    m = fig6_medium
    p = GaussianPulse.tuned(m, 0, ell=1.0)
    for edge, t in ((0.0, 0.2), (m.d, 1.4)):
        left = quadrature_field(edge - 1e-10, t, m, BETA, p)
        right = quadrature_field(edge + 1e-10, t, m, BETA, p)
        assert abs(left - right) < 1e-8


def test_non_finite_integrand(fig5_medium):
    p = GaussianPulse(1.0, 1.0)
    with pytest.raises(QuadratureError) as info:
        quadrature_field(float("inf"), 0.0, fig5_medium, BETA, p)
    assert info.value.omega is not None


def test_sample_points_are_region_interior(fig5_medium):
    p = GaussianPulse.tuned(fig5_medium, 0, mu=2.6)
    pts = region_sample_points(fig5_medium, p, 200)
    assert all(x < 0 for x, _ in pts["before"])
    assert all(0 < x < fig5_medium.d for x, _ in pts["inside"])
    assert all(x > fig5_medium.d for x, _ in pts["after"])
    # every sample sees a non-negligible field
    for region in pts.values():
        xs, ts = np.array(region).T
        assert np.abs(closed_form_values(xs, ts, fig5_medium, 0.0, p)).min() > 1e-6
