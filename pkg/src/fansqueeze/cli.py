"""Command-line front end.

Computes single squeezing values, sweeps amplitude and direction grids, finds
critical amplitudes, classifies squeezing directions, maps ion-trap drive
parameters, and runs the cross-validation suites.  Emits CSV or JSON, with
numbers serialized at full double precision so repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import (
    BracketError,
    CutoffTooSmallError,
    FansqueezeError,
    GuardBandError,
    LaguerreZeroError,
    NonConvergenceError,
    NonlinearitySingularError,
)
from .moments import FanStateSpec, SeriesControl, moment
from .nonlinearity import (
    UNITY,
    IonTrap,
    IonTrapDrive,
    PhotonAdded,
    QDeformed,
    drive_amplitude,
    f_value,
)
from .squeezing import (
    QuadratureSpec,
    critical_amplitude,
    direction_sets,
    squeezing_degree,
    squeezing_profile,
)
from .verify import run_all

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NON_CONVERGENCE = 3
EXIT_SINGULAR = 4
EXIT_VERIFY_FAILED = 5

OUT_DIR_ENV = "FANSQUEEZE_OUT_DIR"

F_MODELS = ("unity", "iontrap", "qdeformed", "photon-added")


class ConfigError(FansqueezeError):
    """Invalid command-line configuration."""


def _add_state_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=1, help="fan order (default 1)")
    p.add_argument("--f-model", choices=F_MODELS, default="unity",
                   help="nonlinearity model (default unity)")
    p.add_argument("--eta2", type=float, default=0.05,
                   help="squared Lamb-Dicke parameter for iontrap (default 0.05)")
    p.add_argument("--lambda", dest="lam", type=float, default=0.1,
                   help="deformation parameter for qdeformed (default 0.1)")
    p.add_argument("--m-add", type=int, default=2,
                   help="photon-added parameter m (default 2)")


def _add_series_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nmax", type=int, default=400,
                   help="series index cutoff (default 400)")
    p.add_argument("--rel-tol", type=float, default=1e-15,
                   help="relative tail tolerance (default 1e-15)")


def _add_output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None,
                   help="output file (default stdout); relative paths resolve "
                        f"against ${OUT_DIR_ENV} when set")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--jobs", type=int, default=1,
                   help="concurrent grid evaluations (default 1)")
    p.add_argument("--degrees", action="store_true",
                   help="angles in degrees on input and output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fansqueeze",
        description="Power-N amplitude squeezing of fan states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="one ladder moment <adag^l a^m>")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_state_options(p)
    _add_series_options(p)
    _add_output_options(p)

    p = sub.add_parser("squeeze", help="squeezing report at one (N, phi)")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--n-power", type=int, default=None,
                   help="quadrature power N (default 2k)")
    p.add_argument("--phi", type=float, default=0.0)
    _add_state_options(p)
    _add_series_options(p)
    _add_output_options(p)

    p = sub.add_parser("polar", help="S over a direction grid on [0, pi)")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--n-power", type=int, default=None)
    p.add_argument("--phi-steps", type=int, default=720)
    _add_state_options(p)
    _add_series_options(p)
    _add_output_options(p)

    p = sub.add_parser("scan", help="S over an amplitude/direction grid")
    p.add_argument("--xi-min", type=float, default=0.0)
    p.add_argument("--xi-max", type=float, default=2.0)
    p.add_argument("--xi-steps", type=int, default=101)
    p.add_argument("--n-power", type=int, default=None)
    p.add_argument("--phi-steps", type=int, default=181)
    _add_state_options(p)
    _add_series_options(p)
    _add_output_options(p)

    p = sub.add_parser("variance", help="quadrature variance against its circle")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--n-power", type=int, default=None)
    p.add_argument("--phi-steps", type=int, default=720)
    _add_state_options(p)
    _add_series_options(p)
    _add_output_options(p)

    p = sub.add_parser("critical", help="critical amplitude by bisection")
    p.add_argument("--n-power", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_state_options(p)
    _add_series_options(p)
    _add_output_options(p)

    p = sub.add_parser("directions", help="the two direction families for k")
    _add_state_options(p)
    _add_output_options(p)

    p = sub.add_parser("iontrap", help="drive-to-amplitude map and f table")
    p.add_argument("--omega0", type=float, required=True)
    p.add_argument("--omega1", type=float, required=True)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--phi1", type=float, default=0.0)
    p.add_argument("--levels", type=int, default=24,
                   help="levels in the emitted f table (default 24)")
    _add_state_options(p)
    _add_output_options(p)

    p = sub.add_parser("verify", help="run the cross-validation suites")
    _add_series_options(p)
    _add_output_options(p)

    return parser


def _model_from_args(args) -> object:
    if args.f_model == "unity":
        return UNITY
    if args.f_model == "iontrap":
        return IonTrap(eta2=args.eta2)
    if args.f_model == "qdeformed":
        return QDeformed(lam=args.lam)
    return PhotonAdded(m_add=args.m_add)


def _control_from_args(args) -> SeriesControl:
    try:
        return SeriesControl(n_max=args.nmax, rel_tol=args.rel_tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _angle_in(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def _angle_out(args, value: float) -> float:
    return math.degrees(value) if args.degrees else value


def _n_power(args) -> int:
    n = getattr(args, "n_power", None)
    if n is None:
        n = 2 * args.k
    if n < 1:
        raise ConfigError("n-power must be at least 1")
    return n


def _validate_common(args) -> None:
    if args.k < 1:
        raise ConfigError("k must be a positive integer")
    xi = getattr(args, "xi", None)
    if xi is not None and not (math.isfinite(xi) and xi >= 0.0):
        raise ConfigError("xi must be finite and non-negative")
    for name in ("phi_steps", "xi_steps", "levels"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            raise ConfigError(f"{name.replace('_', '-')} must be positive")
    jobs = getattr(args, "jobs", 1)
    if jobs < 1:
        raise ConfigError("jobs must be positive")


def _config_echo(args) -> dict:
    skip = {"out"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return cfg


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(args, header, rows) -> str:
    if args.format == "json":
        payload = {"config": _config_echo(args),
                   "rows": [dict(zip(header, row)) for row in rows]}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _write_output(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    path = args.out
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _phi_grid(steps: int):
    return [i * math.pi / steps for i in range(steps)]


def _run_moments(args) -> int:
    if args.l < 0 or args.m < 0:
        raise ConfigError("l and m must be non-negative")
    spec = FanStateSpec(k=args.k, xi=args.xi, model=_model_from_args(args))
    mv = moment(spec, args.l, args.m, _control_from_args(args))
    rows = [(args.l, args.m, mv.value, mv.terms_used, mv.converged,
             mv.last_term_ratio)]
    _write_output(args, _emit(
        args, ("l", "m", "value", "terms_used", "converged", "last_term_ratio"),
        rows))
    return EXIT_OK


def _run_squeeze(args) -> int:
    n = _n_power(args)
    phi = _angle_in(args, args.phi)
    spec = FanStateSpec(k=args.k, xi=args.xi, model=_model_from_args(args))
    report = squeezing_degree(spec, QuadratureSpec(n_power=n, phi=phi),
                              _control_from_args(args))
    rows = [(args.k, n, args.xi, args.phi, report.s_value, report.variance,
             report.f_n, report.squeezed, report.admissible_power,
             report.classification)]
    _write_output(args, _emit(
        args, ("k", "n_power", "xi", "phi", "s", "variance", "f_n",
               "squeezed", "admissible_power", "classification"), rows))
    return EXIT_OK


def _run_polar(args) -> int:
    n = _n_power(args)
    spec = FanStateSpec(k=args.k, xi=args.xi, model=_model_from_args(args))
    phis = _phi_grid(args.phi_steps)
    values = squeezing_profile(spec, n, phis, _control_from_args(args))
    rows = [(_angle_out(args, phi), s) for phi, s in zip(phis, values)]
    _write_output(args, _emit(args, ("phi", "s"), rows))
    return EXIT_OK


def _run_scan(args) -> int:
    n = _n_power(args)
    if not args.xi_min <= args.xi_max:
        raise ConfigError("xi-min must not exceed xi-max")
    ctrl = _control_from_args(args)
    model = _model_from_args(args)
    phis = _phi_grid(args.phi_steps)
    if args.xi_steps == 1:
        xis = [args.xi_min]
    else:
        step = (args.xi_max - args.xi_min) / (args.xi_steps - 1)
        xis = [args.xi_min + i * step for i in range(args.xi_steps)]

    def one_xi(xi):
        spec = FanStateSpec(k=args.k, xi=xi, model=model)
        return squeezing_profile(spec, n, phis, ctrl)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            profiles = list(pool.map(one_xi, xis))
    else:
        profiles = [one_xi(xi) for xi in xis]
    rows = []
    for xi, profile in zip(xis, profiles):
        for phi, s in zip(phis, profile):
            rows.append((xi, _angle_out(args, phi), s))
    _write_output(args, _emit(args, ("xi", "phi", "s"), rows))
    return EXIT_OK


def _run_variance(args) -> int:
    n = _n_power(args)
    spec = FanStateSpec(k=args.k, xi=args.xi, model=_model_from_args(args))
    ctrl = _control_from_args(args)
    phis = _phi_grid(args.phi_steps)
    values = squeezing_profile(spec, n, phis, ctrl)
    report = squeezing_degree(spec, QuadratureSpec(n_power=n, phi=0.0), ctrl)
    circle = 0.25 * report.f_n
    rows = [(_angle_out(args, phi), circle * (1.0 + s), circle)
            for phi, s in zip(phis, values)]
    _write_output(args, _emit(args, ("phi", "variance", "circle"), rows))
    return EXIT_OK


def _run_critical(args) -> int:
    n = _n_power(args)
    if args.tol <= 0.0:
        raise ConfigError("tol must be positive")
    try:
        res = critical_amplitude(args.k, n, _model_from_args(args),
                                 _control_from_args(args), tol=args.tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [(res.xi_c, res.iterations, res.bracket_lo, res.bracket_hi)]
    _write_output(args, _emit(
        args, ("xi_c", "iterations", "bracket_lo", "bracket_hi"), rows))
    return EXIT_OK


def _run_directions(args) -> int:
    phi1, phi2 = direction_sets(args.k)
    rows = [("phi1", j, _angle_out(args, phi)) for j, phi in enumerate(phi1)]
    rows += [("phi2", j, _angle_out(args, phi)) for j, phi in enumerate(phi2)]
    _write_output(args, _emit(args, ("family", "index", "phi"), rows))
    return EXIT_OK


def _run_iontrap(args) -> int:
    if args.eta2 <= 0.0:
        raise ConfigError("eta2 must be positive")
    if args.omega0 <= 0.0 or args.omega1 <= 0.0:
        raise ConfigError("both Rabi frequencies must be positive")
    drive = IonTrapDrive(eta=math.sqrt(args.eta2), omega0=args.omega0,
                         omega1=args.omega1,
                         phi0=_angle_in(args, args.phi0),
                         phi1=_angle_in(args, args.phi1), k=args.k)
    da = drive_amplitude(drive)
    model = IonTrap(eta2=args.eta2)
    rows = [("xi_abs", "", da.magnitude),
            ("xi_phase", "", _angle_out(args, math.atan2(da.xi.imag, da.xi.real))),
            ("rotation", "", _angle_out(args, da.rotation))]
    for level in range(args.levels + 1):
        rows.append(("f", level, f_value(model, level, args.k)))
    _write_output(args, _emit(args, ("quantity", "n", "value"), rows))
    return EXIT_OK


def _run_verify(args) -> int:
    report = run_all(_control_from_args(args))
    rows = [(c.name, c.passed, c.required, c.max_deviation, c.tolerance,
             c.detail) for c in report.checks]
    _write_output(args, _emit(
        args, ("check", "passed", "required", "max_deviation", "tolerance",
               "detail"), rows))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


_RUNNERS = {
    "moments": _run_moments,
    "squeeze": _run_squeeze,
    "polar": _run_polar,
    "scan": _run_scan,
    "variance": _run_variance,
    "critical": _run_critical,
    "directions": _run_directions,
    "iontrap": _run_iontrap,
    "verify": _run_verify,
}


def _error_record(args, exc: Exception, code: int) -> None:
    if getattr(args, "format", "csv") == "json":
        payload = {"error": {"type": exc.__class__.__name__,
                             "message": str(exc), "exit_code": code}}
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        print(f"error: {exc}", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _validate_common(args)
        return _RUNNERS[args.command](args)
    except (ConfigError, CutoffTooSmallError, GuardBandError, ValueError) as exc:
        _error_record(args, exc, EXIT_CONFIG)
        return EXIT_CONFIG
    except (NonConvergenceError, BracketError) as exc:
        _error_record(args, exc, EXIT_NON_CONVERGENCE)
        return EXIT_NON_CONVERGENCE
    except (LaguerreZeroError, NonlinearitySingularError) as exc:
        _error_record(args, exc, EXIT_SINGULAR)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
