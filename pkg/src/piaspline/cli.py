"""Command line interface: solve, spectra, bench, gen."""

import argparse
import statistics
import sys

from . import datasets, io
from .bspline import curve_sample
from .errors import NotConverged, PiaSplineError
from .reference import (
    APPROXIMATE_EXAMPLES,
    METHOD_LABELS,
    REFERENCE_ITERATIONS,
    reference_radius,
)
from .solvers import MethodConfig, iteration_spectral_radius, solve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2

_PRECONDITIONED_LABELS = {"ppia", "pwpia", "pjacobi", "pgs", "psor"}
_PLAIN_LABELS = {"pia", "wpia", "jacobi", "gs", "sor"}


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; reserve 2 for
    non-convergence and use 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit2(message)


class SystemExit2(Exception):
    def __init__(self, message):
        self.message = message
        super().__init__(message)


def method_config(label, precondition=False, omega="auto"):
    """Resolve a method label (plain or p-prefixed) plus flags into a config."""
    label = label.lower()
    if label in _PRECONDITIONED_LABELS:
        family = label[1:]
        precondition = True
    elif label in _PLAIN_LABELS:
        family = label
    else:
        raise PiaSplineError(
            f"unknown method {label!r}; expected one of "
            f"{sorted(_PLAIN_LABELS | _PRECONDITIONED_LABELS)}"
        )
    return MethodConfig(family=family, preconditioned=precondition, omega=omega)


def _parse_omega(text):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise PiaSplineError(f"--omega must be 'auto' or a number, got {text!r}") from None


def _comma_list(text, cast=str):
    return [cast(part.strip()) for part in text.split(",") if part.strip()]


def _load_points(args):
    if (args.example is None) == (args.input is None):
        raise PiaSplineError("exactly one of --example or --input is required")
    if args.input is not None:
        return io.read_points(args.input), None
    spec = datasets.example_spec(args.example, n=args.n, alt_z=args.alt_z)
    return datasets.sample_curve(spec), spec


def _infer_format(args):
    if args.format:
        return args.format
    if args.out:
        suffix = args.out.rsplit(".", 1)[-1].lower()
        if suffix in ("csv", "json", "svg"):
            return suffix
    return "csv"


def cmd_solve(args):
    points, _ = _load_points(args)
    config = method_config(args.method, args.precondition, _parse_omega(args.omega))

    exit_code = EXIT_OK
    try:
        result = solve(
            points,
            config,
            scheme=args.param,
            tol=args.tol,
            max_iter=args.max_iter,
        )
    except NotConverged as exc:
        result = exc.result
        exit_code = EXIT_NOT_CONVERGED
        print(f"piaspline solve: {exc}", file=sys.stderr)

    trace = result.trace
    summary = io.summary_dict(
        config,
        trace,
        n=points.shape[0],
        dim=points.shape[1],
        scheme=args.param,
        tol=args.tol,
        max_iter=args.max_iter,
    )

    fmt = _infer_format(args)
    if args.out:
        if fmt == "csv":
            io.write_trace_csv(args.out, trace)
        elif fmt == "json":
            io.write_summary_json(args.out, summary)
        else:
            curve = _sample_result(result, args.samples)
            io.write_curve_svg(args.out, curve, points)
    if args.curve_out:
        curve = _sample_result(result, args.samples)
        io.write_points(
            args.curve_out,
            curve,
            comment=f"sampled curve, {args.samples} points, method {config.label}",
        )

    omega_txt = "-" if trace.omega_used is None else f"{trace.omega_used:.6f}"
    print(
        f"{config.label}: converged={trace.converged} k={trace.iterations} "
        f"eps={trace.errors[-1]:.3e} omega={omega_txt} "
        f"sweep_s={trace.elapsed_seconds:.4f} omega_s={trace.omega_seconds:.4f}"
    )
    return exit_code


def _sample_result(result, m):
    return curve_sample(result.knots, result.control, m)


def cmd_spectra(args):
    examples = _comma_list(args.examples)
    methods = _comma_list(args.methods)
    sizes = [int(v) for v in _comma_list(args.n)]
    for label in methods:
        if label not in METHOD_LABELS:
            raise PiaSplineError(f"unknown method {label!r}")

    rows = []
    for example_id in examples:
        per_example_sizes = (
            sizes if example_id == datasets.SPHERICAL_CARDIOID else [None]
        )
        for n in per_example_sizes:
            spec = datasets.example_spec(example_id, n=n, alt_z=args.alt_z)
            points = datasets.sample_curve(spec)
            for label in methods:
                config = method_config(label)
                radius = iteration_spectral_radius(points, config, scheme=args.param)
                ref = None
                if args.param == "chord":
                    ref = reference_radius(example_id, label, n=spec.n)
                    if example_id == datasets.SPHERICAL_CARDIOID and not args.alt_z:
                        ref = None
                dev = None if ref is None else radius - ref
                note = "approximate" if example_id in APPROXIMATE_EXAMPLES else ""
                rows.append(
                    {
                        "example": example_id,
                        "n": spec.n,
                        "method": label,
                        "radius": radius,
                        "reference": ref,
                        "deviation": dev,
                        "note": note,
                    }
                )

    lines = ["example,n,method,radius,reference,deviation,note"]
    for r in rows:
        ref = "" if r["reference"] is None else f"{r['reference']:.4f}"
        dev = "" if r["deviation"] is None else f"{r['deviation']:+.4f}"
        lines.append(
            f"{r['example']},{r['n']},{r['method']},{r['radius']:.6f},{ref},{dev},{r['note']}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")
    return EXIT_OK


def cmd_bench(args):
    methods = _comma_list(args.methods)
    sizes = [int(v) for v in _comma_list(args.n)]
    tols = [float(v) for v in _comma_list(args.tols)]
    for label in methods:
        if label not in METHOD_LABELS:
            raise PiaSplineError(f"unknown method {label!r}")

    rows = []
    for n in sizes:
        spec = datasets.example_spec(args.example, n=n, alt_z=args.alt_z)
        points = datasets.sample_curve(spec)
        for tol in tols:
            for label in methods:
                config = method_config(label)
                sweeps, omegas, iterations, converged = [], [], None, True
                for _ in range(args.repeats):
                    try:
                        result = solve(
                            points,
                            config,
                            scheme=args.param,
                            tol=tol,
                            max_iter=args.max_iter,
                        )
                    except NotConverged as exc:
                        result = exc.result
                        converged = False
                    trace = result.trace
                    sweeps.append(trace.elapsed_seconds)
                    omegas.append(trace.omega_seconds)
                    iterations = trace.iterations
                ref = REFERENCE_ITERATIONS.get((n, tol), {}).get(label)
                rows.append(
                    {
                        "example": args.example,
                        "n": n,
                        "tol": tol,
                        "method": label,
                        "iterations": iterations,
                        "converged": converged,
                        "sweep_seconds": statistics.median(sweeps),
                        "omega_seconds": statistics.median(omegas),
                        "reference_iterations": ref,
                    }
                )

    lines = [
        "example,n,tol,method,iterations,converged,sweep_seconds,omega_seconds,"
        "reference_iterations,deviation"
    ]
    for r in rows:
        ref = r["reference_iterations"]
        dev = ""
        if ref is not None and r["converged"]:
            dev = f"{r['iterations'] - ref:+d}"
        mark = "" if r["converged"] else "*"
        lines.append(
            f"{r['example']},{r['n']},{r['tol']:g},{r['method']},"
            f"{r['iterations']}{mark},{r['converged']},"
            f"{r['sweep_seconds']:.6f},{r['omega_seconds']:.6f},"
            f"{'' if ref is None else ref},{dev}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")
    return EXIT_OK


def cmd_gen(args):
    if args.example is None:
        raise PiaSplineError("--example is required")
    spec = datasets.example_spec(args.example, n=args.n, alt_z=args.alt_z)
    points = datasets.sample_curve(spec)
    if args.out:
        io.write_points(
            args.out, points, comment=f"example {spec.example_id}, n={spec.n}"
        )
    else:
        for row in points:
            print(",".join(repr(float(v)) for v in row))
    return EXIT_OK


def _add_common_example_args(p, default_n=None):
    p.add_argument("--example", choices=datasets.EXAMPLE_IDS, default=None)
    p.add_argument("--n", type=int, default=default_n, help="sample count override")
    p.add_argument(
        "--alt-z",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="spherical cardioid: bounded half-angle z variant",
    )


def build_parser():
    parser = _Parser(prog="piaspline", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="fit a spline and report the trace")
    _add_common_example_args(p)
    p.add_argument("--input", help="points CSV file (alternative to --example)")
    p.add_argument("--method", default="pia", help="pia|wpia|jacobi|gs|sor, or p-prefixed")
    p.add_argument("--precondition", action="store_true")
    p.add_argument("--omega", default="auto", help="'auto' or a value in (0, 2)")
    p.add_argument("--param", choices=("chord", "uniform"), default="chord")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--out", help="output path (trace csv, summary json, or curve svg)")
    p.add_argument("--format", choices=("csv", "json", "svg"), default=None)
    p.add_argument("--curve-out", help="also write the sampled curve as points CSV")
    p.add_argument("--samples", type=int, default=400, help="curve sample count")
    p.add_argument(
        "--seed-free",
        action="store_true",
        help="reserved; all computations are already deterministic",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("spectra", help="iteration-matrix spectral radii per method")
    p.add_argument("--examples", default=",".join(datasets.EXAMPLE_IDS))
    p.add_argument("--methods", default=",".join(METHOD_LABELS))
    p.add_argument("--n", default="1000", help="comma list, spherical cardioid sizes")
    p.add_argument(
        "--alt-z",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="spherical cardioid z variant used for the comparison grid",
    )
    p.add_argument("--param", choices=("chord", "uniform"), default="chord")
    p.add_argument("--out", help="write the CSV here as well as stdout")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("bench", help="iteration counts and sweep timings")
    p.add_argument("--example", choices=datasets.EXAMPLE_IDS, default=datasets.SPHERICAL_CARDIOID)
    p.add_argument("--n", default="1000", help="comma list of sizes")
    p.add_argument("--tols", default="1e-10,1e-12", help="comma list of tolerances")
    p.add_argument("--methods", default=",".join(METHOD_LABELS))
    p.add_argument(
        "--alt-z",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="spherical cardioid z variant used for the comparison grid",
    )
    p.add_argument("--param", choices=("chord", "uniform"), default="chord")
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--repeats", type=int, default=3, help="timing repeats (median)")
    p.add_argument("--out", help="write the CSV here as well as stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write an example's points as CSV")
    _add_common_example_args(p)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit2 as exc:
        print(f"piaspline: error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except NotConverged as exc:  # commands that do not handle it themselves
        print(f"piaspline: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (PiaSplineError, ValueError, OSError) as exc:
        print(f"piaspline: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
