"""Command line front end.

    hybridamp steady         --config run.ini
    hybridamp gain-spectrum  --config run.ini [--omega-start 0 --omega-stop 100 --omega-count 2001]
    hybridamp noise-report   --config run.ini
    hybridamp sweep          --config run.ini [--variable kappa --start 485 --stop 600 --count 116]
    hybridamp ql-check       [--n-samples 1000 --seed 42]
    hybridamp oracle-verify  --config run.ini

Exit codes: 0 success, 1 validation error, 2 physics error (unstable,
multistable, no transduction, ...), 3 verification failure.
Relative ``--out`` paths are placed under $HYBRIDAMP_OUTPUT_DIR when it is set.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from .config import SweepSpec, load_config
from .errors import HybridAmpError, UnstableSystemError, ValidationError
from .linearization import build_m_matrix
from .noise import current_noise_zero, homodyne_coefficients, noise_report
from .oracle import RNG_NAME, TrajectoryConfig, min_psd_duration, stochastic_current_psd, time_domain_gain
from .response import bandwidth_3db, gain_spectrum, omega_grid
from .steady_state import require_operating_point, solve_photon_number
from .sweep import SWEEP_COLUMNS, run_ql_check, run_sweep

EXIT_CODES = {"validation": 1, "physics": 2, "verification": 3}
OUTPUT_DIR_ENV = "HYBRIDAMP_OUTPUT_DIR"
GAIN_TOL = 1e-3
PSD_TOL = 0.05


def fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_csv(fh, columns, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in columns])


def _complex(z):
    return None if z is None else {"re": z.real, "im": z.imag}


def _operating_point(config):
    steady = require_operating_point(config.system)
    return steady, build_m_matrix(config.system, steady.n_s)


def run_steady(config):
    steady = solve_photon_number(config.system)
    return {
        "n_s": steady.n_s,
        "alpha": _complex(steady.alpha),
        "single_valued": steady.single_valued,
        "n_roots": len(steady.roots),
        "n_stable": steady.n_stable,
        "roots": [
            {
                "n_bar": r.n_bar,
                "residual": r.residual,
                "stable": r.stable,
                "physical": r.physical,
                "real_alpha": r.real_alpha,
                "alpha": _complex(r.alpha),
            }
            for r in steady.roots
        ],
    }


def run_gain_spectrum(config, omegas):
    _, lin = _operating_point(config)
    spec = gain_spectrum(config.system, lin, omegas)
    rows = [
        {"omega": float(w), "gain": float(g), "re_gx": gx.real, "im_gx": gx.imag, "re_gp": gp.real, "im_gp": gp.imag}
        for w, g, gx, gp in zip(spec.omegas, spec.gain, spec.gx, spec.gp)
    ]
    return spec, rows


GAIN_COLUMNS = ("omega", "gain", "re_gx", "im_gx", "re_gp", "im_gp")


def run_noise_report(config):
    report = noise_report(config.system, config.measurement)
    return report.to_dict()


def run_oracle_verify(config, settings=None, gain=True, psd=True):
    """Compare frequency-domain predictions with the time-domain oracle.

    Returns (rows, passed); each row holds quantity, probe, analytic, measured,
    relative error, tolerance and the pass flag. ``gain`` and ``psd`` select
    the sinusoid-response probes and the current-noise check.
    """
    settings = settings or config.oracle
    system = config.system
    steady, lin = _operating_point(config)
    if not lin.stable:
        raise UnstableSystemError("operating point is unstable", eigenvalues=(lin.eig1, lin.eig2))
    kappa = system.kappa
    rows = []
    omegas = list(settings.probe_omegas) if gain else []
    spec = gain_spectrum(system, lin, omegas)
    for w, analytic in zip(omegas, spec.gain):
        cfg = TrajectoryConfig(
            dt=settings.dt, duration=settings.duration, seed=settings.seed, drive_omega=w, drive_amp=settings.drive_amp
        )
        measured = time_domain_gain(lin, kappa, cfg)
        err = abs(measured / analytic - 1)
        rows.append(_check_row("gain", w, float(analytic), measured, err, GAIN_TOL))

    if not psd:
        return rows, all(r["passed"] for r in rows)
    psd_dt = settings.psd_dt or settings.dt
    duration = settings.psd_duration or min_psd_duration(lin, settings.segments, psd_dt)
    cfg = TrajectoryConfig(dt=psd_dt, duration=duration, seed=settings.seed, segments=settings.segments)
    phi_h = config.measurement.phi_h
    hc = homodyne_coefficients(lin, kappa, phi_h)
    analytic = current_noise_zero(hc.f1, hc.f2)
    measured = stochastic_current_psd(lin, kappa, phi_h, cfg)
    rows.append(_check_row("current_psd", 0.0, analytic, measured, abs(measured / analytic - 1), PSD_TOL))
    return rows, all(r["passed"] for r in rows)


def _check_row(quantity, probe, analytic, measured, err, tol):
    return {
        "quantity": quantity,
        "omega": probe,
        "analytic": analytic,
        "measured": measured,
        "rel_error": err,
        "tolerance": tol,
        "passed": bool(err < tol),
    }


VERIFY_COLUMNS = ("quantity", "omega", "analytic", "measured", "rel_error", "tolerance", "passed")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODES["validation"], f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="hybridamp", description="Hybrid Kerr + OPA cavity amplifier toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="INI run configuration")
        p.add_argument("--out", help="output file (default: stdout)")
        return p

    p = common(sub.add_parser("steady", help="solve the classical steady state"))
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = common(sub.add_parser("gain-spectrum", help="gain versus signal frequency (CSV)"))
    p.add_argument("--omega-start", type=float, default=0.0)
    p.add_argument("--omega-stop", type=float, default=100.0)
    p.add_argument("--omega-count", type=int, default=2001)

    common(sub.add_parser("noise-report", help="zero-frequency noise budget (JSON)"))

    p = common(sub.add_parser("sweep", help="one-parameter sweep (CSV)"))
    p.add_argument("--variable")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--lambda-mode", choices=("fixed", "auto_real_alpha"))
    p.add_argument("--jobs", type=int, default=1)

    p = common(sub.add_parser("ql-check", help="sample random configurations and test the quantum limit"), False)
    p.add_argument("--n-samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--include-config", action="store_true", help="use --config as the first sample")
    p.add_argument("--jobs", type=int, default=1)

    p = common(sub.add_parser("oracle-verify", help="time-domain checks of gain and current noise"))
    p.add_argument("--seed", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--duration", type=float)
    p.add_argument("--segments", type=int)
    return parser


def _open_out(path):
    if path is None:
        return None
    if not os.path.isabs(path) and os.environ.get(OUTPUT_DIR_ENV):
        path = os.path.join(os.environ[OUTPUT_DIR_ENV], path)
    return path


def _emit(text, path):
    path = _open_out(path)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv(columns, rows):
    buf = io.StringIO()
    write_csv(buf, columns, rows)
    return buf.getvalue()


def _dispatch(args):
    if args.command == "ql-check":
        if args.n_samples < 1:
            raise ValidationError("--n-samples must be at least 1")
        base = None
        if args.include_config:
            if not args.config:
                raise ValidationError("--include-config needs --config")
            cfg = load_config(args.config)
            base = (cfg.system, cfg.measurement)
        summary = run_ql_check(args.n_samples, seed=args.seed, base=base, jobs=args.jobs)
        _emit(_json(summary.to_dict()), args.out)
        return 0 if summary.passed else EXIT_CODES["verification"]

    config = load_config(args.config)

    if args.command == "steady":
        result = run_steady(config)
        if args.format == "json":
            _emit(_json(result), args.out)
        else:
            row = {
                "n_s": result["n_s"],
                "alpha_re": result["alpha"]["re"] if result["alpha"] else None,
                "alpha_im": result["alpha"]["im"] if result["alpha"] else None,
                "n_roots": result["n_roots"],
                "n_stable": result["n_stable"],
                "single_valued": result["single_valued"],
            }
            _emit(_csv(list(row), [row]), args.out)
        return 0

    if args.command == "gain-spectrum":
        omegas = omega_grid(args.omega_start, args.omega_stop, args.omega_count)
        spec, rows = run_gain_spectrum(config, omegas)
        _emit(_csv(GAIN_COLUMNS, rows), args.out)
        try:
            print(f"g[0] = {spec.gain[0]:.6g}, 3 dB bandwidth = {bandwidth_3db(spec):.6g}", file=sys.stderr)
        except HybridAmpError:
            pass
        return 0

    if args.command == "noise-report":
        result = run_noise_report(config)
        result["n_s"] = solve_photon_number(config.system).n_s
        result["phi_h"] = config.measurement.phi_h
        result["coupling_a"] = config.measurement.coupling_a
        _emit(_json(result), args.out)
        return 0

    if args.command == "sweep":
        spec = config.sweep
        overrides = {
            k: getattr(args, k) for k in ("variable", "start", "stop", "count", "lambda_mode") if getattr(args, k) is not None
        }
        if spec is None:
            if not {"variable", "start", "stop", "count"} <= set(overrides):
                raise ValidationError("sweep needs a [sweep] section or --variable/--start/--stop/--count")
            spec = SweepSpec(**overrides)
        elif overrides:
            spec = SweepSpec(**{**spec.__dict__, **overrides})
        rows = run_sweep(config.system, config.measurement, spec, jobs=args.jobs)
        _emit(_csv((spec.variable,) + SWEEP_COLUMNS, rows), args.out)
        return 0

    if args.command == "oracle-verify":
        settings = config.oracle
        changes = {k: getattr(args, k) for k in ("seed", "dt", "duration", "segments") if getattr(args, k) is not None}
        if changes:
            settings = type(settings)(**{**settings.__dict__, **changes})
        rows, passed = run_oracle_verify(config, settings)
        text = f"# seed={settings.seed} dt={settings.dt!r} rng={RNG_NAME}\n" + _csv(VERIFY_COLUMNS, rows)
        _emit(text, args.out)
        for r in rows:
            status = "PASS" if r["passed"] else "FAIL"
            print(
                f"{status} {r['quantity']:<12} omega={r['omega']:<8g} analytic={r['analytic']:.8g} "
                f"measured={r['measured']:.8g} rel_err={r['rel_error']:.2e} tol={r['tolerance']:g}",
                file=sys.stderr,
            )
        return 0 if passed else EXIT_CODES["verification"]

    raise ValidationError(f"unknown command {args.command}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except HybridAmpError as exc:
        print(f"hybridamp {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        eig = getattr(exc, "eigenvalues", None)
        if eig is not None:
            print(f"eigenvalues: {', '.join(f'{z:.10g}' for z in eig)}", file=sys.stderr)
        return EXIT_CODES[exc.category]
    except OSError as exc:
        print(f"hybridamp {args.command}: {exc}", file=sys.stderr)
        return EXIT_CODES["validation"]


if __name__ == "__main__":
    sys.exit(main())
