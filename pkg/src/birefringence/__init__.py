"""Polarization-filtered wave transit through a birefringent crystal.

Plane-wave amplitude maps, stationary-phase time shifts, exact Gaussian
pulse evolution and an independent frequency-quadrature check.
"""
from .errors import (
    BirefringenceError,
    DegenerateLoopError,
    DomainError,
    QuadratureError,
    SingularityError,
    SolverError,
)
from .planewave import (
    CrystalMedium,
    FilterSetting,
    PhasePoint,
    filtered_amplitude,
    fresnel_reflectance,
    modulus_and_phase,
    phase_winding,
    zero_points,
)
from .pulse import (
    GaussianPulse,
    closed_form_field,
    envelope_f,
    find_extrema,
    half_waveplate_omega,
    peak_residual,
    validity_constraint,
    xi1_stationary,
    xi_of,
)
from .timeshift import (
    SmallSignalCoords,
    TimeShiftResult,
    small_signal_tau,
    superluminal_region,
    time_shift,
)

__version__ = "0.1.0"
