"""Stationary-phase time shift of the filtered peak.

``tau`` is the delay of the filtered peak relative to a pulse travelling the
same distance in vacuum, in units of d/c. Negative ``tau`` is the apparent
superluminal transit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularityError
from .planewave import CrystalMedium

# guard band on 1 + cos(dkd) sin(2 beta), which vanishes only at the zeros of z
DENOM_TOL = 1e-12
# |epsilon| or |phi| beyond this and the first-order expansion is not trusted
SMALL_SIGNAL_LIMIT = 0.3


@dataclass(frozen=True)
class SmallSignalCoords:
    """Offsets from the half-wave-plate zero: beta = pi/4 + epsilon, dkd = (2N+1) pi + phi."""

    epsilon: float
    phi: float
    N: int = 0

    @classmethod
    def from_angles(cls, beta: float, dkd: float, N: int = 0) -> "SmallSignalCoords":
        return cls(beta - 0.25 * math.pi, dkd - (2 * N + 1) * math.pi, N)

    @property
    def beta(self) -> float:
        return 0.25 * math.pi + self.epsilon

    @property
    def dkd(self) -> float:
        return (2 * self.N + 1) * math.pi + self.phi

    @property
    def in_regime(self) -> bool:
        return abs(self.epsilon) <= SMALL_SIGNAL_LIMIT and abs(self.phi) <= SMALL_SIGNAL_LIMIT


@dataclass(frozen=True)
class TimeShiftResult:
    tau: float
    out_of_regime: bool = False

    @property
    def superluminal(self) -> bool:
        return self.tau < 0.0


def tau_array(medium: CrystalMedium, beta, dkd):
    """Vectorized exact time shift; returns ``(tau, singular_mask)``.

    Singular cells get ``tau = 0`` so callers never see inf or NaN.
    """
    beta = np.asarray(beta, dtype=float)
    dkd = np.asarray(dkd, dtype=float)
    denom = 1.0 + np.cos(dkd) * np.sin(2.0 * beta)
    singular = denom < DENOM_TOL
    safe = np.where(singular, 1.0, denom)
    tau = medium.d * (medium.n_bar - 1.0 - 0.5 * np.cos(2.0 * beta) * medium.dn / safe)
    return np.where(singular, 0.0, tau), singular


def time_shift(medium: CrystalMedium, beta: float, dkd: float) -> TimeShiftResult:
    denom = 1.0 + math.cos(dkd) * math.sin(2.0 * beta)
    if denom < DENOM_TOL:
        raise SingularityError(
            f"time shift is unbounded at beta={beta!r}, dkd={dkd!r} (zero of the filtered amplitude)"
        )
    tau = medium.d * (medium.n_bar - 1.0 - 0.5 * math.cos(2.0 * beta) * medium.dn / denom)
    return TimeShiftResult(tau)


def small_signal_tau(medium: CrystalMedium, coords: SmallSignalCoords) -> TimeShiftResult:
    """First-order time shift near the half-wave-plate zero."""
    eps, phi = coords.epsilon, coords.phi
    r2 = 4.0 * eps * eps + phi * phi
    if r2 == 0.0:
        raise SingularityError("small-signal time shift is unbounded at epsilon = phi = 0")
    tau = medium.d * (medium.n_bar - 1.0 + 2.0 * eps * medium.dn / r2)
    return TimeShiftResult(tau, out_of_regime=not coords.in_regime)


def ellipse_parameter(medium: CrystalMedium) -> float:
    """Semi-axis ``a = dn / (4 (n_bar - 1))`` of the superluminal ellipse."""
    return medium.dn / (4.0 * (medium.n_bar - 1.0))


def superluminal_region(medium: CrystalMedium, coords: SmallSignalCoords) -> bool:
    """True strictly inside the first-order superluminal ellipse.

    The ellipse is centred at epsilon = -a, phi = 0 with semi-axes a along
    epsilon and 2a along phi, so it touches the zero of z at its right edge.
    """
    a = ellipse_parameter(medium)
    return (coords.epsilon + a) ** 2 / a**2 + coords.phi**2 / (4.0 * a**2) < 1.0
