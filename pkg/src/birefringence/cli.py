"""Command-line interface.

All quantities are dimensionless (c = d = 1) unless ``d_physical`` is set, in
which case single-point time shifts are also reported in seconds. Scene values
are resolved as built-in defaults, then the ``--config`` file, then flags.

Exit codes: 0 success, 1 validation check failed, 2 usage error,
3 domain error, 4 solver or quadrature failure.
"""
from __future__ import annotations

import argparse
import configparser
import math
import re
import sys
from dataclasses import dataclass, replace
from typing import Optional

from . import oracle, pulse as pulse_mod, sweeps_io
from .errors import DomainError, QuadratureError, SolverError
from .planewave import CrystalMedium, fresnel_reflectance, modulus_and_phase
from .timeshift import SmallSignalCoords, small_signal_tau, time_shift

SPEED_OF_LIGHT = 299_792_458.0

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_DOMAIN, EXIT_SOLVER = 0, 1, 2, 3, 4

_ANGLE_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_angle(text: str) -> float:
    """Radians from ``'0.21pi'``, ``'pi/4'``, ``'-0.5*pi'`` or a plain number."""
    m = _ANGLE_RE.match(text)
    if m is None:
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None
    coef = float(m.group(1)) if m.group(1) not in (None, "+", "-") else (-1.0 if m.group(1) == "-" else 1.0)
    value = coef * math.pi
    if m.group(2):
        value /= float(m.group(2))
    return value


@dataclass(frozen=True)
class SceneConfig:
    n_o: float = 1.225
    n_e: float = 1.375
    d_physical: Optional[float] = None
    beta: float = 0.21 * math.pi
    ell: float = 4.0
    N: int = 0

    def medium(self) -> CrystalMedium:
        return CrystalMedium(self.n_o, self.n_e)


_CONFIG_KEYS = {
    "n_o": float, "n_e": float, "d_physical": float, "beta": parse_angle,
    "ell": float, "mu": float, "sigma": float, "N": int, "n_bar": float, "dn": float,
}


def read_config(path) -> dict:
    """Parse a ``key = value`` file (``#`` comments, no sections)."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[scene]\n" + fh.read())
    values = {}
    for key, raw in parser["scene"].items():
        if key not in _CONFIG_KEYS:
            raise DomainError(f"unknown config key {key!r} in {path}")
        try:
            values[key] = _CONFIG_KEYS[key](raw)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise DomainError(f"bad value for {key!r} in {path}: {raw!r}") from exc
    return values


def _apply(scene: SceneConfig, values: dict) -> SceneConfig:
    values = {k: v for k, v in values.items() if v is not None}
    n_o, n_e = values.get("n_o", scene.n_o), values.get("n_e", scene.n_e)
    if "n_bar" in values or "dn" in values:
        n_bar = values.get("n_bar", 0.5 * (n_o + n_e))
        dn = values.get("dn", n_e - n_o)
        n_o, n_e = n_bar - 0.5 * dn, n_bar + 0.5 * dn
    ell = scene.ell
    if "sigma" in values:
        ell = math.sqrt(values["sigma"])
    if "ell" in values:
        ell = values["ell"]
    if "mu" in values:
        ell = 1.0 / values["mu"]
    d_physical = values.get("d_physical", scene.d_physical)
    if d_physical is not None and not d_physical > 0:
        raise DomainError(f"d_physical must be positive, got {d_physical}")
    return replace(scene, n_o=n_o, n_e=n_e, d_physical=d_physical,
                   beta=values.get("beta", scene.beta), ell=ell, N=values.get("N", scene.N))


def resolve_scene(args) -> SceneConfig:
    scene = SceneConfig()
    if args.config:
        scene = _apply(scene, read_config(args.config))
    flags = {
        "n_o": args.n_o, "n_e": args.n_e, "n_bar": args.n_bar, "dn": args.dn,
        "d_physical": args.d_physical, "beta": getattr(args, "beta", None),
        "ell": getattr(args, "ell", None), "N": getattr(args, "N", None),
    }
    mu = getattr(args, "mu", None)
    if isinstance(mu, float):
        flags["mu"] = mu
    return _apply(scene, flags)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit_values(pairs, out):
    text = "".join(f"{key} = {_fmt(value)}\n" for key, value in pairs)
    if out:
        with open(out, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(table, out, generator, params):
    if out:
        path = sweeps_io.write_table(table, out, generator, params)
        print(path)
    else:
        sys.stdout.write(table.to_csv())


def cmd_reflectance(args, scene):
    n2 = args.n2 if args.n2 is not None else scene.medium().n_bar
    _emit_values([("n1", args.n1), ("n2", n2), ("reflectance", fresnel_reflectance(args.n1, n2))], args.out)


def cmd_amplitude(args, scene):
    p = modulus_and_phase(scene.beta, args.dkd)
    chi = "singular" if p.is_singular else p.chi
    _emit_values([("beta", p.beta), ("dkd", p.dkd), ("modulus", p.modulus), ("chi", chi)], args.out)


def cmd_timeshift(args, scene):
    medium = scene.medium()
    if args.small_signal:
        coords = SmallSignalCoords.from_angles(scene.beta, args.dkd, scene.N)
        result = small_signal_tau(medium, coords)
    else:
        result = time_shift(medium, scene.beta, args.dkd)
    pairs = [("beta", scene.beta), ("dkd", args.dkd), ("tau", result.tau), ("superluminal", result.superluminal)]
    if args.small_signal:
        pairs.append(("out_of_regime", result.out_of_regime))
    if scene.d_physical is not None:
        pairs.append(("tau_seconds", result.tau * scene.d_physical / SPEED_OF_LIGHT))
    _emit_values(pairs, args.out)


def _grid_from_args(args, default):
    if args.beta_range is None and args.dkd_range is None and args.resolution is None:
        return default
    br = tuple(args.beta_range) if args.beta_range else default.beta_range
    kr = tuple(args.dkd_range) if args.dkd_range else default.dkd_range
    nb, nk = args.resolution if args.resolution else (default.beta_points, default.dkd_points)
    return sweeps_io.GridSpec(br, kr, nb, nk)


def _grid_params(grid):
    return {"beta_range": list(grid.beta_range), "dkd_range": list(grid.dkd_range),
            "resolution": [grid.beta_points, grid.dkd_points]}


def cmd_map_amplitude(args, scene):
    grid = _grid_from_args(args, sweeps_io.FIG2_GRID)
    _emit_table(sweeps_io.amplitude_phase_map(grid), args.out, "map_amplitude", _grid_params(grid))


def cmd_map_timeshift(args, scene):
    grid = _grid_from_args(args, sweeps_io.fig3_grid(N=scene.N))
    medium = scene.medium()
    params = _grid_params(grid) | {"n_o": medium.n_o, "n_e": medium.n_e}
    _emit_table(sweeps_io.timeshift_map(medium, grid), args.out, "map_timeshift", params)


def cmd_profiles(args, scene):
    medium = scene.medium()
    table = sweeps_io.profile_set(medium, scene.beta, args.mu, tuple(args.xi_range), args.points)
    params = {"n_o": medium.n_o, "n_e": medium.n_e, "beta": scene.beta, "mu": list(args.mu),
              "xi_range": list(args.xi_range), "points": args.points}
    _emit_table(table, args.out, "profiles", params)


def cmd_evolve(args, scene):
    medium = scene.medium()
    pulse = pulse_mod.GaussianPulse.tuned(medium, scene.N, ell=scene.ell)
    table = sweeps_io.evolution_frames(medium, scene.beta, pulse, args.times, tuple(args.x_range),
                                       args.points, args.comoving)
    params = {"n_o": medium.n_o, "n_e": medium.n_e, "beta": scene.beta, "ell": scene.ell, "N": scene.N,
              "times": list(args.times), "x_range": list(args.x_range), "points": args.points,
              "comoving": args.comoving}
    _emit_table(table, args.out, "evolve", params)


def cmd_peaks(args, scene):
    medium = scene.medium()
    mu = args.mu if args.mu is not None else 1.0 / scene.ell
    peaks = pulse_mod.find_extrema(scene.beta, mu, medium.dn)
    pairs = [("beta", scene.beta), ("mu", mu), ("dn", medium.dn),
             ("advanced_xi", peaks.advanced_peak.xi), ("advanced_f", peaks.advanced_peak.f)]
    if peaks.retarded_peak is not None:
        pairs += [("retarded_xi", peaks.retarded_peak.xi), ("retarded_f", peaks.retarded_peak.f)]
    else:
        pairs.append(("retarded_xi", "none"))
    pairs.append(("minima", " ".join(_fmt(m) for m in peaks.minima) or "none"))
    pairs.append(("xi0", medium.n_bar - 1.0))
    try:
        pairs.append(("xi1", pulse_mod.xi1_stationary(scene.beta, medium.dn)))
    except DomainError:
        pairs.append(("xi1", "pole"))
    _emit_values(pairs, args.out)


VALIDATION_SETS = {
    "fig5": dict(n_bar=1.30, dn=0.15, beta=0.21 * math.pi, mu=2.6),
    "fig6": dict(n_bar=1.35, dn=0.5, beta=0.21 * math.pi, mu=0.25),
}


def cmd_validate(args, scene):
    spec = oracle.QuadratureSpec(args.nodes)
    ok = True
    pairs = []
    for name, p in VALIDATION_SETS.items():
        medium = CrystalMedium.from_mean(p["n_bar"], p["dn"])
        pulse = pulse_mod.GaussianPulse.tuned(medium, 0, mu=p["mu"])
        for region, pts in oracle.region_sample_points(medium, pulse, args.points).items():
            report = oracle.compare_grid(pts, medium, p["beta"], pulse, spec)
            ok &= report.max_error < args.tolerance
            pairs.append((f"{name}.{region}.max_error", report.max_error))
    pairs.append(("tolerance", args.tolerance))
    pairs.append(("passed", ok))
    _emit_values(pairs, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _float_pair(parser, flag, **kw):
    parser.add_argument(flag, nargs=2, type=float, metavar=("LO", "HI"), **kw)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scene file with key = value lines")
    common.add_argument("--n-o", dest="n_o", type=float, help="ordinary refractive index")
    common.add_argument("--n-e", dest="n_e", type=float, help="extraordinary refractive index")
    common.add_argument("--n-bar", dest="n_bar", type=float, help="mean refractive index")
    common.add_argument("--dn", type=float, help="birefringence n_e - n_o")
    common.add_argument("--d-physical", dest="d_physical", type=float, help="crystal width in meters")
    common.add_argument("--out", help="output file, or directory for generated CSV names")

    parser = argparse.ArgumentParser(prog="birefringence", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reflectance", parents=[common], help="normal-incidence reflectance")
    p.add_argument("--n1", type=float, default=1.0)
    p.add_argument("--n2", type=float, help="default: mean index of the scene")
    p.set_defaults(func=cmd_reflectance)

    p = sub.add_parser("amplitude", parents=[common], help="filtered amplitude at one point")
    p.add_argument("--beta", type=parse_angle)
    p.add_argument("--dkd", type=parse_angle, required=True)
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("timeshift", parents=[common], help="time shift at one point, in units of d/c")
    p.add_argument("--beta", type=parse_angle)
    p.add_argument("--dkd", type=parse_angle, required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--small-signal", action="store_true", help="use the first-order expansion")
    p.set_defaults(func=cmd_timeshift)

    for name, func, window, help_ in (
        ("map-amplitude", cmd_map_amplitude, "fig2", "amplitude and phase over a (beta, dkd) grid"),
        ("map-timeshift", cmd_map_timeshift, "fig3", "time shift over a (beta, dkd) grid"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--window", choices=[window], default=window,
                       help="preset window; explicit ranges override it")
        _float_pair(p, "--beta-range")
        _float_pair(p, "--dkd-range")
        p.add_argument("--resolution", nargs=2, type=int, metavar=("NB", "NK"))
        p.add_argument("--N", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("profiles", parents=[common], help="outgoing envelopes for several widths")
    p.add_argument("--beta", type=parse_angle)
    p.add_argument("--mu", type=float, nargs="+", default=[2.6, 1.6, 0.6])
    _float_pair(p, "--xi-range", default=[-1.5, 2.0])
    p.add_argument("--points", type=int, default=701)
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser("evolve", parents=[common], help="envelope snapshots during transit")
    p.add_argument("--beta", type=parse_angle)
    p.add_argument("--ell", type=float, help="pulse width in units of d")
    p.add_argument("--N", type=int)
    p.add_argument("--times", type=float, nargs="+", default=[-10.0, -2.0, 1.0, 10.0])
    _float_pair(p, "--x-range", default=[-20.0, 25.0])
    p.add_argument("--points", type=int, default=901)
    p.add_argument("--comoving", action="store_true")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("peaks", parents=[common], help="advanced and retarded peaks of the outgoing envelope")
    p.add_argument("--beta", type=parse_angle)
    p.add_argument("--mu", type=float, help="d / ell (default: from the scene width)")
    p.set_defaults(func=cmd_peaks)

    p = sub.add_parser("validate", parents=[common], help="closed forms against frequency quadrature")
    p.add_argument("--points", type=int, default=200, help="points per region")
    p.add_argument("--nodes", type=int, default=2048)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        scene = resolve_scene(args)
        status = args.func(args, scene)
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK if status is None else status


def run(argv=None) -> int:
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
