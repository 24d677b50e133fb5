"""Monochromatic plane wave through the crystal and the filtered amplitude.

Units throughout: c = 1 and, unless a medium says otherwise, d = 1. The
optical phase difference ``dkd = (k_e - k_o) d = omega * dn * d`` is the
frequency-like coordinate used by every map in this package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateLoopError, DomainError

TWO_PI = 2.0 * math.pi
SQRT_HALF = math.sqrt(0.5)

# |z| below this is treated as an exact zero for phase purposes
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class CrystalMedium:
    """Lossless, non-reflecting uniaxial slab of width ``d``.

    ``n_o`` is the index of the ordinary (y-polarized, fast) wave and ``n_e``
    the index of the extraordinary (z-polarized, slow) wave.
    """

    n_o: float
    n_e: float
    d: float = 1.0

    def __post_init__(self):
        for name in ("n_o", "n_e", "d"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.n_o < 1.0 or self.n_e < 1.0:
            raise DomainError(f"refractive indices must be >= 1, got n_o={self.n_o}, n_e={self.n_e}")
        if not self.n_e > self.n_o:
            raise DomainError(
                f"birefringence n_e - n_o must be positive (ordinary wave is the fast one), "
                f"got n_o={self.n_o}, n_e={self.n_e}"
            )
        if self.d <= 0.0:
            raise DomainError(f"crystal width must be positive, got d={self.d}")

    @classmethod
    def from_mean(cls, n_bar: float, dn: float, d: float = 1.0) -> "CrystalMedium":
        """Build a medium from the mean index and the birefringence."""
        return cls(n_o=n_bar - 0.5 * dn, n_e=n_bar + 0.5 * dn, d=d)

    @property
    def n_bar(self) -> float:
        return 0.5 * (self.n_e + self.n_o)

    @property
    def dn(self) -> float:
        return self.n_e - self.n_o

    def wavenumbers(self, omega):
        """Return ``(k, k_o, k_e)`` for angular frequency ``omega``."""
        return omega, omega * self.n_o, omega * self.n_e

    def dkd(self, omega):
        """Optical phase difference accumulated across the slab."""
        return omega * self.dn * self.d


@dataclass(frozen=True)
class FilterSetting:
    """Polarizer angle measured from the y-axis, stored in [0, 2*pi)."""

    beta: float

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta) % TWO_PI)


@dataclass(frozen=True)
class PhasePoint:
    beta: float
    dkd: float
    z: complex
    modulus: float
    # None at a zero of z, where the phase is undefined
    chi: Optional[float] = field(default=None)

    @property
    def is_singular(self) -> bool:
        return self.chi is None


def fresnel_reflectance(n1: float, n2: float) -> float:
    """Normal-incidence intensity reflectance between two dielectrics."""
    if not (n1 > 0 and n2 > 0):
        raise DomainError(f"refractive indices must be positive, got {n1}, {n2}")
    return ((n1 - n2) / (n1 + n2)) ** 2


def filtered_amplitude(beta, dkd):
    """Relative complex amplitude behind a polarizer at angle ``beta``.

    Works elementwise on arrays. The incoming wave is polarized at 45 degrees,
    so the ordinary and extraordinary components carry equal weight.
    """
    beta = np.asarray(beta, dtype=float)
    dkd = np.asarray(dkd, dtype=float)
    z = SQRT_HALF * (np.cos(beta) + np.sin(beta) * np.exp(1j * dkd))
    return z[()] if z.ndim == 0 else z


def modulus_closed_form(beta, dkd):
    """``|z|`` from the real closed form, independent of the complex path."""
    arg = 0.5 * (1.0 + np.sin(2.0 * np.asarray(beta, dtype=float)) * np.cos(dkd))
    # rounding can push the argument a hair below zero at the zeros
    return np.sqrt(np.clip(arg, 0.0, None))


def modulus_and_phase(beta: float, dkd: float) -> PhasePoint:
    z = complex(filtered_amplitude(beta, dkd))
    modulus = float(modulus_closed_form(beta, dkd))
    if abs(z) < ZERO_TOL:
        return PhasePoint(beta, dkd, z, modulus, None)
    return PhasePoint(beta, dkd, z, modulus, math.atan2(z.imag, z.real))


def _integers_in(lo: float, hi: float, offset: float, period: float):
    """Integers m with lo <= offset + m*period <= hi (small slack for rounding)."""
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    first = math.ceil((lo - offset - slack) / period)
    last = math.floor((hi - offset + slack) / period)
    return range(first, last + 1)


def zero_points(beta_min: float, beta_max: float, dkd_min: float, dkd_max: float):
    """All exact zeros of the filtered amplitude in a closed window.

    Zeros come in two families: beta = pi/4 (mod pi) with dkd = pi (mod 2 pi),
    where the crystal acts as a half-wave plate, and beta = 3 pi/4 (mod pi)
    with dkd = 0 (mod 2 pi). Returned sorted by (beta, dkd).
    """
    if beta_min > beta_max or dkd_min > dkd_max:
        return []
    points = []
    for beta_offset, dkd_offset in ((0.25 * math.pi, math.pi), (0.75 * math.pi, 0.0)):
        betas = [beta_offset + m * math.pi for m in _integers_in(beta_min, beta_max, beta_offset, math.pi)]
        dkds = [dkd_offset + m * TWO_PI for m in _integers_in(dkd_min, dkd_max, dkd_offset, TWO_PI)]
        points.extend((b, k) for b in betas for k in dkds)
    return sorted(points)


def phase_winding(center, radius: float, samples: int = 256) -> int:
    """Winding number of the phase of z around a circle in the (beta, dkd) plane.

    The loop runs counter-clockwise with beta on the horizontal axis. Raises
    :class:`DegenerateLoopError` if any sample sits on a zero.
    """
    if samples < 16:
        raise DomainError(f"need at least 16 loop samples, got {samples}")
    if not radius > 0:
        raise DomainError(f"loop radius must be positive, got {radius}")
    theta = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    beta0, dkd0 = center
    z = filtered_amplitude(beta0 + radius * np.cos(theta), dkd0 + radius * np.sin(theta))
    if np.min(np.abs(z)) < ZERO_TOL:
        raise DegenerateLoopError(f"loop of radius {radius} around {center} passes through a zero")
    steps = np.angle(np.roll(z, -1) / z)
    return int(round(steps.sum() / TWO_PI))
