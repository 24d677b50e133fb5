"""Direct frequency quadrature of the Gaussian packet.

Independent of the closed forms in :mod:`birefringence.pulse`: the field is
synthesized by integrating monochromatic plane waves against the Gaussian
spectral weight with composite Gauss-Legendre quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError
from .planewave import CrystalMedium
from .pulse import GaussianPulse, closed_form_values


@dataclass(frozen=True)
class QuadratureSpec:
    nodes: int = 2048
    span: float = 8.0
    panel_order: int = 16

    def __post_init__(self):
        if self.nodes < 64:
            raise DomainError(f"need at least 64 quadrature nodes, got {self.nodes}")
        if self.span < 6:
            raise DomainError(f"need a span of at least 6 standard deviations, got {self.span}")
        if self.nodes % self.panel_order:
            raise DomainError("nodes must be a multiple of panel_order")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(2 * self.nodes, self.span, self.panel_order)


@dataclass(frozen=True)
class ComparisonReport:
    max_error: float
    argmax: tuple
    points: int


def _nodes_and_weights(pulse: GaussianPulse, spec: QuadratureSpec):
    std = math.sqrt(2.0 / pulse.sigma)
    lo = pulse.omega0 - spec.span * std
    hi = pulse.omega0 + spec.span * std
    panels = spec.nodes // spec.panel_order
    ref_x, ref_w = np.polynomial.legendre.leggauss(spec.panel_order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    omega = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
    weights = (half[:, None] * ref_w[None, :]).ravel()
    spectral = math.sqrt(pulse.sigma / (4.0 * math.pi)) * np.exp(-0.25 * pulse.sigma * (omega - pulse.omega0) ** 2)
    return omega, weights * spectral


def monochromatic_field(omega, x: float, t: float, medium: CrystalMedium):
    """y and z components of the unit plane wave at frequency ``omega``."""
    k, k_o, k_e = medium.wavenumbers(omega)
    d = medium.d
    if x < 0.0:
        e_y = np.exp(1j * (k * x - omega * t))
        e_z = e_y
    elif x <= d:
        e_y = np.exp(1j * (k_o * x - omega * t))
        e_z = np.exp(1j * (k_e * x - omega * t))
    else:
        free = np.exp(1j * (k * x - omega * t))
        e_y = free * np.exp(1j * (k_o - k) * d)
        e_z = free * np.exp(1j * (k_e - k) * d)
    return e_y / math.sqrt(2.0), e_z / math.sqrt(2.0)


def quadrature_field(x: float, t: float, medium: CrystalMedium, beta: float, pulse: GaussianPulse,
                     spec: QuadratureSpec = QuadratureSpec()) -> complex:
    omega, weights = _nodes_and_weights(pulse, spec)
    with np.errstate(invalid="ignore", over="ignore"):
        e_y, e_z = monochromatic_field(omega, x, t, medium)
        integrand = math.cos(beta) * e_y + math.sin(beta) * e_z
    bad = ~np.isfinite(integrand)
    if bad.any():
        w = float(omega[np.argmax(bad)])
        raise QuadratureError(f"non-finite integrand at omega={w!r} (x={x!r}, t={t!r})", omega=w)
    return complex(np.dot(weights, integrand))


def compare_grid(points, medium: CrystalMedium, beta: float, pulse: GaussianPulse,
                 spec: QuadratureSpec = QuadratureSpec()) -> ComparisonReport:
    """Largest ``|closed form - quadrature|`` over a list of ``(x, t)`` points."""
    points = [(float(x), float(t)) for x, t in points]
    worst, where = -1.0, None
    for x, t in points:
        err = abs(complex(closed_form_values(x, t, medium, beta, pulse)) - quadrature_field(x, t, medium, beta, pulse, spec))
        if err > worst:
            worst, where = err, (x, t)
    return ComparisonReport(max(worst, 0.0), where, len(points))


def region_sample_points(medium: CrystalMedium, pulse: GaussianPulse, per_region: int = 200):
    """Deterministic ``(x, t)`` points strictly inside each region, near the packet.

    Returns a dict keyed by region name. Times are chosen so the envelope is
    within about two widths of every sample, where the field is not negligible.
    """
    d, ell = medium.d, pulse.ell
    spread = np.linspace(-2.0 * ell, 2.0 * ell, per_region)[::-1]
    gap = 1e-6 * d
    before_x = np.linspace(-3.0 * ell, -gap, per_region)
    inside_x = np.linspace(gap, d - gap, per_region)
    after_x = d + np.linspace(gap, 3.0 * ell, per_region)
    return {
        "before": list(zip(before_x, before_x + spread)),
        "inside": list(zip(inside_x, medium.n_bar * inside_x + spread)),
        "after": list(zip(after_x, after_x + (medium.n_bar - 1.0) * d + spread)),
    }
