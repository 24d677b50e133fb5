"""Parameter sweeps and deterministic CSV output for the figure data.

Every table is rectangular and finite. Singular cells are marked through an
``is_singular`` 0/1 column instead of empty or NaN entries. Floats are
written with 17 significant digits so a table round-trips exactly.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, SingularityError
from .planewave import ZERO_TOL, CrystalMedium, filtered_amplitude, modulus_closed_form, zero_points
from .pulse import (
    GaussianPulse,
    closed_form_values,
    envelope_f,
    free_space_values,
    xi1_stationary,
)
from .timeshift import tau_array


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid over ``beta`` and ``dkd``, both ends included."""

    beta_range: tuple
    dkd_range: tuple
    beta_points: int = 201
    dkd_points: int = 201

    def __post_init__(self):
        for name, (lo, hi), n in (("beta", self.beta_range, self.beta_points),
                                  ("dkd", self.dkd_range, self.dkd_points)):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise DomainError(f"{name} range must be finite and increasing, got ({lo}, {hi})")
            if n < 2:
                raise DomainError(f"{name} resolution must be at least 2, got {n}")

    def axes(self):
        return (np.linspace(*self.beta_range, self.beta_points),
                np.linspace(*self.dkd_range, self.dkd_points))

    def cell_area(self) -> float:
        (b0, b1), (k0, k1) = self.beta_range, self.dkd_range
        return (b1 - b0) / (self.beta_points - 1) * (k1 - k0) / (self.dkd_points - 1)


# beta over [0, pi], dkd over one period: the three zeros of the amplitude map
FIG2_GRID = GridSpec((0.0, math.pi), (0.0, 2.0 * math.pi), 201, 201)


def fig3_grid(resolution: int = 400, N: int = 0) -> GridSpec:
    """Window around the half-wave-plate zero used for the time-shift map."""
    b0, k0 = 0.25 * math.pi, (2 * N + 1) * math.pi
    return GridSpec((b0 - 0.4, b0 + 0.1), (k0 - 0.4, k0 + 0.4), resolution, resolution)


def _fmt(value) -> str:
    return format(float(value), ".17g")


@dataclass(frozen=True)
class CsvTable:
    columns: tuple
    data: np.ndarray
    int_columns: frozenset = frozenset()

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2 or data.shape[1] != len(self.columns):
            raise DomainError(f"table shape {data.shape} does not match {len(self.columns)} columns")
        if not np.all(np.isfinite(data)):
            raise DomainError("tables must be finite; mark singular cells with the sentinel column")
        object.__setattr__(self, "data", data)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def to_csv(self) -> str:
        int_idx = {i for i, c in enumerate(self.columns) if c in self.int_columns}
        lines = [",".join(self.columns)]
        for row in self.data:
            lines.append(",".join(str(int(v)) if i in int_idx else _fmt(v) for i, v in enumerate(row)))
        return "\n".join(lines) + "\n"


def _nearest_index(axis: np.ndarray, value: float) -> int:
    return int(np.argmin(np.abs(axis - value)))


def _singular_cells(grid: GridSpec, modulus: np.ndarray) -> np.ndarray:
    """Grid nodes nearest to each analytic zero, plus any node that is numerically zero."""
    betas, dkds = grid.axes()
    mask = modulus < ZERO_TOL
    for b, k in zero_points(grid.beta_range[0], grid.beta_range[1], grid.dkd_range[0], grid.dkd_range[1]):
        mask[_nearest_index(betas, b), _nearest_index(dkds, k)] = True
    return mask


def amplitude_phase_map(grid: GridSpec = FIG2_GRID) -> CsvTable:
    """Columns: beta, dkd, modulus, chi, is_singular (beta-major order)."""
    betas, dkds = grid.axes()
    B, K = np.meshgrid(betas, dkds, indexing="ij")
    z = filtered_amplitude(B, K)
    modulus = np.minimum(modulus_closed_form(B, K), 1.0)
    chi = np.where(np.abs(z) < ZERO_TOL, 0.0, np.angle(z))
    singular = _singular_cells(grid, np.abs(z))
    data = np.column_stack([B.ravel(), K.ravel(), modulus.ravel(), chi.ravel(), singular.ravel()])
    return CsvTable(("beta", "dkd", "modulus", "chi", "is_singular"), data, frozenset({"is_singular"}))


def timeshift_map(medium: CrystalMedium, grid: GridSpec) -> CsvTable:
    """Columns: beta, dkd, tau, superluminal, is_singular; tau in units of d/c."""
    betas, dkds = grid.axes()
    B, K = np.meshgrid(betas, dkds, indexing="ij")
    tau, singular = tau_array(medium, B, K)
    singular = singular | _singular_cells(grid, np.abs(filtered_amplitude(B, K)))
    tau = np.where(singular, 0.0, tau)
    superluminal = (tau < 0.0) & ~singular
    data = np.column_stack([B.ravel(), K.ravel(), tau.ravel(), superluminal.ravel(), singular.ravel()])
    return CsvTable(("beta", "dkd", "tau", "superluminal", "is_singular"), data,
                    frozenset({"superluminal", "is_singular"}))


def _mu_label(mu: float) -> str:
    return "f_mu=" + format(float(mu), ".17g")


def profile_set(medium: CrystalMedium, beta: float, mu_list: Sequence[float],
                xi_range=(-1.5, 2.0), points: int = 701) -> CsvTable:
    """Outgoing envelopes for several pulse widths on a common xi grid.

    Columns: marker, xi, then one ``f_mu=<mu>`` column per width. Grid rows
    have marker 0; one extra row sits at the light-speed position (marker 1)
    and one at the stationary-phase position (marker 2, omitted at beta = pi/4).
    """
    if not mu_list or any(not mu > 0 for mu in mu_list):
        raise DomainError(f"every mu must be positive, got {list(mu_list)}")
    xs = list(np.linspace(xi_range[0], xi_range[1], points))
    markers = [0] * len(xs)
    xs.append(medium.n_bar - 1.0)
    markers.append(1)
    try:
        xs.append(xi1_stationary(beta, medium.dn))
        markers.append(2)
    except SingularityError:
        pass
    xs = np.asarray(xs)
    cols = [np.asarray(markers, dtype=float), xs]
    cols += [np.asarray(envelope_f(xs, beta, mu, medium.dn)) for mu in mu_list]
    header = ("marker", "xi") + tuple(_mu_label(mu) for mu in mu_list)
    return CsvTable(header, np.column_stack(cols), frozenset({"marker"}))


def evolution_frames(medium: CrystalMedium, beta: float, pulse: GaussianPulse, times: Sequence[float],
                     x_range=(-20.0, 20.0), points: int = 801, comoving: bool = False) -> CsvTable:
    """Filtered and vacuum envelopes at a sequence of times.

    Columns: t, x, f_filtered, f_freespace. With ``comoving=True`` the x
    window is shifted with each frame to follow the vacuum peak.
    """
    times = [float(t) for t in times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise DomainError("frame times must be in non-decreasing order")
    xs = np.linspace(x_range[0], x_range[1], points)
    blocks = []
    for t in times:
        x = xs + t if comoving else xs
        filtered = np.abs(closed_form_values(x, t, medium, beta, pulse)) ** 2
        free = np.abs(free_space_values(x, t, beta, pulse)) ** 2
        blocks.append(np.column_stack([np.full_like(x, t), x, filtered, free]))
    return CsvTable(("t", "x", "f_filtered", "f_freespace"), np.vstack(blocks))


def manifest_text(generator: str, params: dict) -> str:
    lines = [f"generator = {generator}"]
    for key in sorted(params):
        value = params[key]
        if isinstance(value, float):
            value = _fmt(value)
        elif isinstance(value, (list, tuple)):
            value = " ".join(_fmt(v) if isinstance(v, float) else str(v) for v in value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def params_hash(generator: str, params: dict) -> str:
    return hashlib.sha256(manifest_text(generator, params).encode()).hexdigest()[:12]


def write_table(table: CsvTable, out, generator: str, params: dict) -> Path:
    """Write ``table`` and its key = value manifest; return the CSV path.

    If ``out`` is a directory the file is named ``<generator>_<hash>.csv``;
    otherwise ``out`` is the CSV path. The manifest sits next to the CSV with
    a ``.manifest`` suffix.
    """
    out = Path(out)
    if out.is_dir():
        path = out / f"{generator}_{params_hash(generator, params)}.csv"
    else:
        path = out
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(table.to_csv())
    with open(path.with_suffix(".manifest"), "w", newline="\n", encoding="ascii") as fh:
        fh.write(manifest_text(generator, params))
    return path
