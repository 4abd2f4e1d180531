"""Command-line front end.

Every command emits machine-readable output (JSON documents or CSV with
fixed headers) together with a run manifest identifying the inputs, the
constants table and the tool version.  Exit codes: 0 success, 2 bad
usage or input, 3 quadrature non-convergence (best estimate still
printed).  CASIMIR_THREADS caps the concurrency of grid sweeps (0 or
unset picks a default).
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .constants import CONSTANTS_VERSION
from .engine import (GapConfig, QuadratureConfig, energy_per_area, pressure)
from .errors import CasimirError, ConvergenceError
from .io import load_absorption_table, load_material, material_digest, material_to_dict
from .materials import Tabulated
from .pfa import SpherePlate, pfa_force
from .sign_analysis import (Verdict, boundary_points, classify, sign_map,
                            uvl_map)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3


def _fmt(x):
    """Full-precision scientific notation (17 significant digits)."""
    return f"{x:.16e}"


def _thread_count():
    raw = os.environ.get("CASIMIR_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(os.cpu_count() or 1, 4)
    return n


def _manifest(command, parameters, materials):
    return {
        "command": command,
        "parameters": parameters,
        "materials": [{"label": m.label, "kind": m.kind,
                       "digest": material_digest(m)} for m in materials],
        "constants_version": CONSTANTS_VERSION,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _quad_config(args):
    kwargs = {}
    if getattr(args, "rel_tol", None) is not None:
        kwargs["rel_tol"] = args.rel_tol
    if getattr(args, "max_subdivisions", None) is not None:
        kwargs["max_subdivisions"] = args.max_subdivisions
    return QuadratureConfig(**kwargs)


def _verdict_of(value, error):
    threshold = max(10.0 * error, 1e-12)
    if value < -threshold:
        return Verdict.ATTRACTIVE.value
    if value > threshold:
        return Verdict.REPULSIVE.value
    return Verdict.INDETERMINATE.value


def _emit_scalar_doc(args, result, units, manifest, converged=True):
    doc = {
        "value": result.value,
        "error_estimate": result.error_estimate,
        "units": units,
        "dominant_xi_rad_s": result.dominant_xi,
        "verdict": _verdict_of(result.value, result.error_estimate),
        "converged": converged,
        "manifest": manifest,
    }
    if args.csv:
        print("value,error_estimate,units,dominant_xi_rad_s,verdict,converged")
        dom = "" if result.dominant_xi is None else _fmt(result.dominant_xi)
        print(f"{_fmt(result.value)},{_fmt(result.error_estimate)},{units},"
              f"{dom},{doc['verdict']},{str(converged).lower()}")
        print(json.dumps(manifest), file=sys.stderr)
    else:
        print(json.dumps(doc, indent=2))


def _cmd_point(args, kind):
    m1 = load_material(args.material1)
    m2 = load_material(args.material2)
    cfg = GapConfig(args.gap, m1, m2)
    quad = _quad_config(args)
    manifest = _manifest(kind, {"gap_m": args.gap, "rel_tol": quad.rel_tol,
                                "max_subdivisions": quad.max_subdivisions},
                         [m1, m2])
    compute = energy_per_area if kind == "energy" else pressure
    units = "J/m^2" if kind == "energy" else "Pa"
    try:
        result = compute(cfg, quad)
    except ConvergenceError as exc:
        _emit_scalar_doc(args, exc.best, units, manifest, converged=False)
        print(f"warning: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    _emit_scalar_doc(args, result, units, manifest)
    return EXIT_OK


def _cmd_sweep(args):
    m1 = load_material(args.material1)
    m2 = load_material(args.material2)
    quad = _quad_config(args)
    gaps = np.geomspace(args.gap_min, args.gap_max, args.points)
    manifest = _manifest("sweep", {"gap_min_m": args.gap_min,
                                   "gap_max_m": args.gap_max,
                                   "points": args.points,
                                   "rel_tol": quad.rel_tol}, [m1, m2])

    def one(a):
        cfg = GapConfig(float(a), m1, m2)
        e = energy_per_area(cfg, quad)
        p = pressure(cfg, quad)
        return e, p

    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        results = list(pool.map(one, gaps))

    print("a_m,energy_J_m2,pressure_Pa,error,verdict")
    for a, (e, p) in zip(gaps, results):
        verdict = _verdict_of(p.value, p.error_estimate)
        print(f"{_fmt(a)},{_fmt(e.value)},{_fmt(p.value)},"
              f"{_fmt(p.error_estimate)},{verdict}")
    print(json.dumps(manifest), file=sys.stderr)
    return EXIT_OK


def _write_summary(args, summary, manifest):
    summary = dict(summary)
    summary["manifest"] = manifest
    text = json.dumps(summary, indent=2)
    if args.summary:
        with open(args.summary, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=sys.stderr)


def _cmd_signmap(args):
    quad = _quad_config(args)
    manifest = _manifest("signmap", {"eps1": args.eps1, "mu1": args.mu1,
                                     "eps2": args.eps2, "mu2": args.mu2,
                                     "gap_m": args.gap,
                                     "rel_tol": quad.rel_tol}, [])
    table = sign_map(args.eps1, args.mu1, args.eps2, args.mu2, args.gap,
                     quad=quad, threshold=args.threshold,
                     threads=_thread_count())
    if args.refine_boundaries:
        for axis in ("eps1", "mu1", "eps2", "mu2"):
            table.boundaries.extend(
                boundary_points(table, axis, quad=quad, threshold=args.threshold))
    sys.stdout.write(table.to_csv())
    _write_summary(args, table.summary(), manifest)
    return EXIT_OK


def _cmd_uvlmap(args):
    quad = _quad_config(args)
    manifest = _manifest("uvlmap", {"mu1": args.mu1, "mu2": args.mu2,
                                    "gap_m": args.gap, "mode": args.mode,
                                    "eps_mu_product": args.product,
                                    "rel_tol": quad.rel_tol}, [])
    table = uvl_map(args.mu1, args.mu2, args.gap, quad=quad,
                    threshold=args.threshold, mode=args.mode,
                    eps_mu_product=args.product, threads=_thread_count())
    if args.refine_boundaries:
        for axis in ("mu1", "mu2"):
            table.boundaries.extend(
                boundary_points(table, axis, quad=quad, threshold=args.threshold))
    sys.stdout.write(table.to_csv())
    _write_summary(args, table.summary(), manifest)
    return EXIT_OK


def _cmd_kk(args):
    table = load_absorption_table(args.table)
    label = args.label or f"tabulated from {os.path.basename(args.table)}"
    model = Tabulated(table, label=label)
    doc = material_to_dict(model)
    doc["manifest"] = _manifest("kk", {"table": args.table}, [model])
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def _cmd_pfa(args):
    sphere = load_material(args.sphere)
    plate = load_material(args.plate)
    quad = _quad_config(args)
    geom = SpherePlate(args.radius, args.gap)
    manifest = _manifest("pfa", {"radius_m": args.radius, "gap_m": args.gap,
                                 "rel_tol": quad.rel_tol}, [sphere, plate])
    result = pfa_force(geom, sphere, plate, quad)
    doc = {
        "force_N": result.force,
        "aspect_a_over_R": result.aspect,
        "warning": result.warning,
        "energy_J_m2": result.energy.value,
        "energy_error_J_m2": result.energy.error_estimate,
        "verdict": _verdict_of(result.force, 2 * np.pi * args.radius
                               * result.energy.error_estimate),
        "manifest": manifest,
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def _float_list(values):
    return [float(v) for v in values]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir",
        description="Casimir energy, pressure and force-sign analysis "
                    "between material half-spaces across a vacuum gap.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_quad_flags(p):
        p.add_argument("--rel-tol", type=float, default=None, dest="rel_tol",
                       help="relative quadrature tolerance (default 1e-8)")
        p.add_argument("--max-subdivisions", type=int, default=None,
                       dest="max_subdivisions",
                       help="outer adaptive panel-split budget")

    def add_materials(p):
        p.add_argument("--material1", required=True,
                       help="JSON model file or builtin: pc, vacuum, permeable")
        p.add_argument("--material2", required=True)

    for name, help_text in (("energy", "Casimir energy per unit area (J/m^2)"),
                            ("pressure", "Casimir pressure (Pa)")):
        p = sub.add_parser(name, help=help_text)
        add_materials(p)
        p.add_argument("--gap", type=float, required=True, help="separation in m")
        add_quad_flags(p)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", default=True,
                         help="JSON document on stdout (default)")
        fmt.add_argument("--csv", action="store_true", default=False,
                         help="CSV on stdout, manifest on stderr")

    p = sub.add_parser("sweep", help="energy/pressure over a separation range (CSV)")
    add_materials(p)
    p.add_argument("--gap-min", type=float, default=1e-7)
    p.add_argument("--gap-max", type=float, default=5e-6)
    p.add_argument("--points", type=int, default=40)
    add_quad_flags(p)

    p = sub.add_parser("signmap",
                       help="force sign over a constant-(eps, mu) grid "
                            "(flagged non-dispersive mode)")
    p.add_argument("--eps1", type=float, nargs="+", default=[1.0, 10.0, 100.0, 1000.0])
    p.add_argument("--mu1", type=float, nargs="+", default=[1.0, 10.0, 100.0, 1000.0])
    p.add_argument("--eps2", type=float, nargs="+", default=[1.0, 10.0, 100.0, 1000.0])
    p.add_argument("--mu2", type=float, nargs="+", default=[1.0, 10.0, 100.0, 1000.0])
    p.add_argument("--gap", type=float, default=1e-6)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--summary", default=None, help="write JSON summary to this file")
    p.add_argument("--no-refine-boundaries", dest="refine_boundaries",
                   action="store_false", default=True)
    add_quad_flags(p)

    p = sub.add_parser("uvlmap", help="force sign on uniform-light-speed slices")
    p.add_argument("--mu1", type=float, nargs="+", default=[0.5, 0.8, 1.25, 2.0])
    p.add_argument("--mu2", type=float, nargs="+", default=[0.5, 0.8, 1.25, 2.0])
    p.add_argument("--gap", type=float, default=1e-6)
    p.add_argument("--mode", choices=["vacuum-matched", "equal-eps-mu"],
                   default="vacuum-matched")
    p.add_argument("--product", type=float, default=1.0,
                   help="shared eps*mu product (vacuum-matched mode)")
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--summary", default=None)
    p.add_argument("--no-refine-boundaries", dest="refine_boundaries",
                   action="store_false", default=True)
    add_quad_flags(p)

    p = sub.add_parser("kk", help="absorption CSV -> material model JSON")
    p.add_argument("--table", required=True,
                   help="CSV with header omega_rad_s,eps_imag; tail config in "
                        "the adjacent <stem>.json sidecar")
    p.add_argument("--label", default=None)

    p = sub.add_parser("pfa", help="sphere-plate force via the proximity rule")
    p.add_argument("--radius", type=float, required=True, help="sphere radius, m")
    p.add_argument("--gap", type=float, required=True, help="closest approach, m")
    p.add_argument("--sphere", required=True, help="sphere material (file or builtin)")
    p.add_argument("--plate", required=True, help="plate material (file or builtin)")
    add_quad_flags(p)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("energy", "pressure"):
            return _cmd_point(args, args.command)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "signmap":
            return _cmd_signmap(args)
        if args.command == "uvlmap":
            return _cmd_uvlmap(args)
        if args.command == "kk":
            return _cmd_kk(args)
        if args.command == "pfa":
            return _cmd_pfa(args)
        parser.error(f"unknown command {args.command!r}")
    except ConvergenceError as exc:
        # commands that did not handle it themselves have no partial output
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except CasimirError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
