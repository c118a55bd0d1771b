"""Command-line interface.

Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or file format
error, 3 numerical failure.
"""

import argparse
import glob
import json
import sys

import numpy as np

from . import characterizations as ch
from .errors import NullCaseError, ProportionalProfilesError, SpiralError, UsageError
from .estimators import estimate
from .expr import parse_profile
from .frenet import integrate
from .io import dumps_csv, dumps_curve, read_curve, render_svg, write_text
from .lorentz import CurveCase
from .planar import PlanarKind, PlanarSpiralSpec, generate_planar
from .profiles import FIT_TOLERANCE, fit_linear

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

CHECK_TOLERANCES = {
    "bertrand": 1e-3,
    "darboux": ch.RESIDUAL_TOLERANCE,
    "involute": 1e-4,
    "developable": 1e-4,
    "ucurve": ch.RESIDUAL_TOLERANCE,
}


def _err(msg):
    print(f"minkspiral: error: {msg}", file=sys.stderr)


def _profile(text, flag):
    try:
        return parse_profile(text)
    except UsageError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _input_paths(pattern):
    if pattern == "-" or not glob.has_magic(pattern):
        return [pattern]
    paths = sorted(glob.glob(pattern))
    if not paths:
        raise UsageError(f"no files match {pattern!r}")
    return paths


# ---------------------------------------------------------------------------
# generate

def cmd_generate(args):
    kappa = _profile(args.kappa, "--kappa")
    if args.mode == "frenet":
        if args.case is None:
            raise UsageError("--mode frenet requires --case")
        if args.tau is None:
            raise UsageError("--mode frenet requires --tau")
        try:
            case = CurveCase.from_name(args.case)
        except (NullCaseError, ValueError) as exc:
            raise UsageError(f"--case: {exc}") from None
        tau = _profile(args.tau, "--tau")
        curve = integrate(case, kappa, tau, s0=args.s0, s1=args.s1, step=args.step)
    else:
        if args.case is not None or args.tau is not None:
            raise UsageError("--case and --tau only apply to --mode frenet")
        kind = PlanarKind(args.mode)
        try:
            spec = PlanarSpiralSpec.from_step(kappa, args.s0, args.s1, args.step, kind, args.phi0)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        curve = generate_planar(spec)
    text = dumps_curve(curve) if args.format == "json" else dumps_csv(curve)
    write_text(args.out, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# classify

def _classify_one(path, args):
    curve = read_curve(path)
    if args.estimate:
        curve = estimate(curve.s, curve.points).to_curve()
    return ch.classify(curve, args.tolerance)


def cmd_classify(args):
    paths = _input_paths(args.infile)
    results = {}
    for path in paths:
        report = _classify_one(path, args)
        results[path] = report
        if not args.json:
            if len(paths) > 1:
                print(f"== {path}")
            print(report.format())
    if args.json:
        if len(paths) == 1:
            doc = results[paths[0]].to_dict()
        else:
            doc = {p: r.to_dict() for p, r in results.items()}
        print(json.dumps(doc, indent=1))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _need_abcd(args):
    if args.abcd is None:
        raise UsageError(f"--check {args.check} requires --abcd A B C D")
    return args.abcd


def _verify_bertrand(curve, args, tol):
    k_fit = fit_linear(curve.s, curve.kappa, FIT_TOLERANCE)
    t_fit = fit_linear(curve.s, curve.tau, FIT_TOLERANCE)
    info = {}
    if k_fit.ok and t_fit.ok:
        try:
            A, B = ch.bertrand_coefficients(k_fit, t_fit)
        except ProportionalProfilesError as exc:
            return False, float("nan"), {"message": str(exc)}
    else:
        report = ch.classify(curve, FIT_TOLERANCE)
        if not report.bertrand.ok:
            return False, report.bertrand.residual, {"message": "no constants A, B with A kappa + B tau = 1"}
        A, B = report.bertrand.coefficients
    r = args.r if args.r is not None else ch.bertrand_offset(A, curve.case)
    mate = ch.bertrand_mate(curve, r)
    angle = float(np.max(ch.normal_line_angles(curve, mate)))
    info.update(A=A, B=B, r=r, max_normal_angle_rad=angle)
    return angle <= tol, angle, info


def _verify(curve, args, tol):
    check = args.check
    if check == "bertrand":
        return _verify_bertrand(curve, args, tol)
    if check == "darboux":
        res = ch.parallel_to_normal_residual(*ch.darboux_curve(curve), curve)
        return res <= tol, res, {}
    if check == "ucurve":
        res = ch.parallel_to_normal_residual(*ch.u_curve(curve), curve)
        return res <= tol, res, {}
    a, b, c, d = _need_abcd(args)
    if check == "involute":
        off = ch.involute_offset_curve(curve, a, b, c, d, args.lam)
        comp = ch.involute_normal_component(curve, off)
        closed = ch.expected_normal_component(curve, a, b, c, d)
        res = float(np.max(np.abs(comp)))
        return res <= tol, res, {"max_identity_deviation": float(np.max(np.abs(comp - closed)))}
    if check == "developable":
        res = ch.developability_residual(ch.RuledSurfaceSpec(curve, a, b, c, d))
        return res <= tol, res, {}
    raise UsageError(f"unknown check {check!r}")


def _format_info(info):
    parts = []
    for key, value in info.items():
        if key == "message":
            parts.append(str(value))
        elif isinstance(value, float):
            parts.append(f"{key}={value:.6g}")
        else:
            parts.append(f"{key}={value}")
    return "".join("  " + p for p in parts)


def cmd_verify(args):
    tol = args.tolerance if args.tolerance is not None else CHECK_TOLERANCES[args.check]
    paths = _input_paths(args.infile)
    status = EXIT_OK
    out = {}
    for path in paths:
        curve = read_curve(path)
        passed, residual, info = _verify(curve, args, tol)
        status = max(status, EXIT_OK if passed else EXIT_FAIL)
        out[path] = {
            "check": args.check,
            "pass": passed,
            "residual": residual if np.isfinite(residual) else None,
            "tolerance": tol,
            **info,
        }
        if not args.json:
            prefix = f"{path}: " if len(paths) > 1 else ""
            extra = _format_info(info)
            print(f"{prefix}{args.check}: residual={residual:.3e} tolerance={tol:g} "
                  f"{'PASS' if passed else 'FAIL'}{extra}")
    if args.json:
        doc = out[paths[0]] if len(paths) == 1 else out
        print(json.dumps(doc, indent=1, default=float))
    return status


# ---------------------------------------------------------------------------
# export-svg

def cmd_export_svg(args):
    curve = read_curve(args.infile)
    write_text(args.out, render_svg(curve, args.plane, args.width, args.height))
    return EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _err(message)
        sys.exit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="minkspiral", description="Euler-type spirals in Minkowski 3-space.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="generate a sampled curve")
    g.add_argument("--mode", required=True, choices=["planar-timelike", "planar-spacelike", "frenet"])
    g.add_argument("--case", help="frenet only: timelike | spacelike-spacelike-normal | spacelike-timelike-normal")
    g.add_argument("--kappa", required=True, help="curvature profile in s, e.g. '2*s+1'")
    g.add_argument("--tau", help="frenet only: torsion profile in s")
    g.add_argument("--s0", type=float, default=0.0)
    g.add_argument("--s1", type=float, default=1.0)
    g.add_argument("--step", type=float, default=1e-3)
    g.add_argument("--phi0", type=float, default=0.0, help="planar only: initial turning angle")
    g.add_argument("--out", default="-", help="output path, '-' for stdout")
    g.add_argument("--format", choices=["json", "csv"], default="json")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("classify", help="classify a curve file into spiral families")
    c.add_argument("--in", dest="infile", required=True, help="curve file, glob, or '-'")
    c.add_argument("--tolerance", type=float, default=FIT_TOLERANCE)
    c.add_argument("--json", action="store_true")
    c.add_argument("--estimate", action="store_true",
                   help="re-estimate curvature and torsion from the points instead of using stored values")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="check one characterization on a curve file")
    v.add_argument("--check", required=True, choices=sorted(CHECK_TOLERANCES))
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--abcd", type=float, nargs=4, metavar=("A", "B", "C", "D"))
    v.add_argument("--lambda", dest="lam", type=float, default=0.0)
    v.add_argument("--r", type=float, help="bertrand: offset along N (default derived from A)")
    v.add_argument("--tolerance", type=float)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export-svg", help="write an SVG polyline of a projected curve")
    e.add_argument("--in", dest="infile", required=True)
    e.add_argument("--plane", choices=["yz", "xz", "xy"], default="yz")
    e.add_argument("--out", default="-")
    e.add_argument("--width", type=int, default=600)
    e.add_argument("--height", type=int, default=600)
    e.set_defaults(func=cmd_export_svg)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except SpiralError as exc:
        _err(str(exc))
        return EXIT_NUMERIC
    except ValueError as exc:
        # remaining ValueErrors come from argument values (e.g. an unknown case name)
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
