"""Gaussian wave packet through the crystal, in closed form.

The packet is a Gaussian superposition of the monochromatic waves with
spectral weight ``exp(-sigma (omega - omega0)**2 / 4)``. Each polarization
component stays Gaussian in every region; only its argument changes:

    before      s = x - t
    inside      s = n x - t
    after       s = x - t + (n - 1) d

with ``n`` the index of that component, and the component field is
``exp(-s**2 / sigma) * exp(1j * omega0 * s) / sqrt(2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, SingularityError, SolverError
from .planewave import SQRT_HALF, CrystalMedium

# exp() overflows a double just above 709
_EXP_GUARD = 700.0


class Region(str, Enum):
    BEFORE = "before"
    INSIDE = "inside"
    AFTER = "after"


@dataclass(frozen=True)
class GaussianPulse:
    """Gaussian packet with spatial width ``ell = sqrt(sigma)`` (c = 1)."""

    omega0: float
    sigma: float
    d: float = 1.0
    N: Optional[int] = None

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"spectral width parameter sigma must be positive, got {self.sigma}")
        if not self.d > 0:
            raise DomainError(f"crystal width must be positive, got {self.d}")

    @classmethod
    def tuned(cls, medium: CrystalMedium, N: int = 0, *, ell=None, mu=None) -> "GaussianPulse":
        """Pulse centred on the N-th half-wave-plate frequency of ``medium``.

        Give exactly one of ``ell`` (spatial width) or ``mu`` (= d / ell).
        """
        if (ell is None) == (mu is None):
            raise DomainError("give exactly one of ell or mu")
        if ell is None:
            if not mu > 0:
                raise DomainError(f"mu must be positive, got {mu}")
            ell = medium.d / mu
        if not ell > 0:
            raise DomainError(f"ell must be positive, got {ell}")
        return cls(half_waveplate_omega(medium, N), ell * ell, medium.d, N)

    @property
    def ell(self) -> float:
        return math.sqrt(self.sigma)

    @property
    def mu(self) -> float:
        return self.d / self.ell

    def is_tuned(self, medium: CrystalMedium, tol: float = 1e-12) -> bool:
        if self.N is None:
            return False
        return abs(medium.dkd(self.omega0) - (2 * self.N + 1) * math.pi) <= tol * max(1.0, self.N)


@dataclass(frozen=True)
class FieldSample:
    xi: float
    value: complex
    region: Region

    @property
    def f(self) -> float:
        return abs(self.value) ** 2


@dataclass(frozen=True)
class Peak:
    xi: float
    f: float


@dataclass(frozen=True)
class PeakSet:
    advanced_peak: Peak
    retarded_peak: Optional[Peak]
    minima: tuple
    maxima: tuple = ()


@dataclass(frozen=True)
class WidthBounds:
    """Pulse widths (in the units of d) relevant to the stationary-phase estimate.

    ``threshold`` is the width the pulse has to greatly exceed; ``universal``
    is the beta-independent lower bound that applies on the superluminal side.
    """

    threshold: float
    universal: float


def half_waveplate_omega(medium: CrystalMedium, N: int = 0) -> float:
    if N < 0:
        raise DomainError(f"half-wave-plate order must be >= 0, got {N}")
    if not medium.dn > 0:
        raise DomainError("half-wave-plate frequency needs a nonzero birefringence")
    return (2 * N + 1) * math.pi / (medium.dn * medium.d)


def xi_of(x, t, medium: CrystalMedium):
    """Comoving coordinate in which vacuum propagation is stationary."""
    return (np.asarray(x) - np.asarray(t)) / medium.d + (medium.n_bar - 1.0)


def x_of(xi, t, medium: CrystalMedium):
    return np.asarray(t) + medium.d * (np.asarray(xi) - (medium.n_bar - 1.0))


def _gaussian(s, pulse: GaussianPulse):
    return SQRT_HALF * np.exp(-(s * s) / pulse.sigma + 1j * pulse.omega0 * s)


def component_fields(x, t, medium: CrystalMedium, pulse: GaussianPulse):
    """Ordinary (y) and extraordinary (z) field components at ``(x, t)``.

    Broadcasts over ``x`` and ``t``. ``x == 0`` and ``x == d`` use the inside
    form; the piecewise forms agree there.
    """
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    d = medium.d
    before = x < 0.0
    after = x > d
    s_o = np.where(before, x - t, np.where(after, x - t + (medium.n_o - 1.0) * d, medium.n_o * x - t))
    s_e = np.where(before, x - t, np.where(after, x - t + (medium.n_e - 1.0) * d, medium.n_e * x - t))
    return _gaussian(s_o, pulse), _gaussian(s_e, pulse)


def closed_form_values(x, t, medium: CrystalMedium, beta: float, pulse: GaussianPulse):
    e_y, e_z = component_fields(x, t, medium, pulse)
    return math.cos(beta) * e_y + math.sin(beta) * e_z


def region_of(x: float, medium: CrystalMedium) -> Region:
    if x < 0.0:
        return Region.BEFORE
    if x > medium.d:
        return Region.AFTER
    return Region.INSIDE


def closed_form_field(x: float, t: float, medium: CrystalMedium, beta: float, pulse: GaussianPulse) -> FieldSample:
    value = complex(closed_form_values(x, t, medium, beta, pulse))
    return FieldSample(float(xi_of(x, t, medium)), value, region_of(x, medium))


def free_space_values(x, t, beta: float, pulse: GaussianPulse):
    """Same packet propagated without the crystal."""
    s = np.asarray(x, dtype=float) - np.asarray(t, dtype=float)
    return (math.cos(beta) + math.sin(beta)) * _gaussian(s, pulse)


def envelope_f(xi, beta: float, mu: float, dn: float):
    """Squared relative amplitude behind the filter for a tuned pulse."""
    xi = np.asarray(xi, dtype=float)
    h = 0.5 * dn
    mu2 = mu * mu
    amp = math.cos(beta) * np.exp(-mu2 * (xi - h) ** 2) - math.sin(beta) * np.exp(-mu2 * (xi + h) ** 2)
    f = 0.5 * amp * amp
    return f[()] if f.ndim == 0 else f


def envelope_bound(xi, beta: float, mu: float, dn: float):
    """Same as :func:`envelope_f` with the two components added in phase."""
    xi = np.asarray(xi, dtype=float)
    h = 0.5 * dn
    mu2 = mu * mu
    amp = math.cos(beta) * np.exp(-mu2 * (xi - h) ** 2) + math.sin(beta) * np.exp(-mu2 * (xi + h) ** 2)
    f = 0.5 * amp * amp
    return f[()] if f.ndim == 0 else f


def xi1_stationary(beta: float, dn: float) -> float:
    """Peak position predicted by stationary phase under half-wave-plate tuning."""
    c, s = math.cos(beta), math.sin(beta)
    if abs(c - s) < 1e-12:
        raise SingularityError(f"stationary-phase peak position has a pole at beta = pi/4 (got {beta!r})")
    return 0.5 * dn * (c + s) / (c - s)


def _scaled_residual(xi, beta, mu, dn):
    # extremum equation divided by exp(|q|); same sign, never overflows
    q = mu * mu * xi * dn
    aq = abs(q)
    h = 0.5 * dn
    return math.cos(beta) * (xi - h) * math.exp(q - aq) - math.sin(beta) * (xi + h) * math.exp(-q - aq)


def _scaled_difference(xi, beta, mu, dn):
    # cos(beta) e^{q} - sin(beta) e^{-q}, zero where the two Gaussians cancel
    q = mu * mu * xi * dn
    aq = abs(q)
    return math.cos(beta) * math.exp(q - aq) - math.sin(beta) * math.exp(-q - aq)


def peak_residual(xi: float, beta: float, mu: float, dn: float) -> float:
    """Left-hand side of the extremum equation for the outgoing envelope.

    For ``|mu**2 * xi * dn| > 700`` the value is returned divided by
    ``exp(|mu**2 * xi * dn|)``; the sign (and therefore every root) is unchanged.
    """
    q = mu * mu * xi * dn
    if abs(q) > _EXP_GUARD:
        return _scaled_residual(xi, beta, mu, dn)
    h = 0.5 * dn
    return math.cos(beta) * (xi - h) * math.exp(q) - math.sin(beta) * (xi + h) * math.exp(-q)


def search_window(mu: float, dn: float):
    half = 0.5 * dn + 6.0 / mu
    return -half, half


def _bracketed_roots(func, lo, hi, samples, xtol):
    grid = np.linspace(lo, hi, samples)
    values = np.array([func(x) for x in grid])
    roots = []
    for i in range(samples - 1):
        a, b = values[i], values[i + 1]
        if a == 0.0:
            roots.append(float(grid[i]))
        elif a * b < 0.0:
            roots.append(brentq(func, grid[i], grid[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def find_extrema(beta: float, mu: float, dn: float, *, samples: int = 512, xtol: float = 1e-13) -> PeakSet:
    """Locate the maxima and minima of the outgoing envelope.

    The derivative of the envelope factors into (difference of the two
    Gaussians) x (extremum-equation residual). Zeros of the first factor are
    zeros of the envelope itself and therefore minima; roots of the second
    are classified by the sign of the second difference of the envelope.
    """
    if not 0.0 <= beta < 0.5 * math.pi:
        raise DomainError(f"extremum search needs 0 <= beta < pi/2, got {beta!r}")
    if not mu > 0 or not dn > 0:
        raise DomainError(f"mu and dn must be positive, got mu={mu}, dn={dn}")
    lo, hi = search_window(mu, dn)

    residual_roots = _bracketed_roots(lambda x: _scaled_residual(x, beta, mu, dn), lo, hi, samples, xtol)
    cancel_roots = _bracketed_roots(lambda x: _scaled_difference(x, beta, mu, dn), lo, hi, samples, xtol)

    step = 1e-3 / mu
    maxima, minima = [], list(cancel_roots)
    for xi in residual_roots:
        f0, fm, fp = envelope_f(np.array([xi, xi - step, xi + step]), beta, mu, dn)
        if fm + fp - 2.0 * f0 < 0.0:
            maxima.append(Peak(xi, float(f0)))
        else:
            minima.append(xi)
    if not maxima:
        raise SolverError(
            f"no envelope maximum found for beta={beta!r}, mu={mu!r}, dn={dn!r} in window "
            f"[{lo:.6g}, {hi:.6g}] ({len(residual_roots)} residual roots, {len(cancel_roots)} cancellation roots)"
        )
    maxima.sort(key=lambda p: p.xi)
    return PeakSet(
        advanced_peak=maxima[-1],
        retarded_peak=maxima[0] if len(maxima) > 1 else None,
        minima=tuple(sorted(minima)),
        maxima=tuple(maxima),
    )


def validity_constraint(beta: float, medium: CrystalMedium) -> WidthBounds:
    """Widths the pulse must exceed for the stationary-phase peak to be accurate."""
    c, s = math.cos(beta), math.sin(beta)
    if not (beta >= 0.0 and c - s > 1e-12):
        raise DomainError(f"width constraint is defined for 0 <= beta < pi/4, got {beta!r}")
    threshold = math.sqrt((c + s) / (c - s)) * medium.dn * medium.d
    universal = math.sqrt(2.0 * medium.dn * (medium.n_bar - 1.0)) * medium.d
    return WidthBounds(threshold, universal)
