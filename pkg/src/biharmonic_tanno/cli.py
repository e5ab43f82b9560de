"""
Command line interface.

    biharmonic-tanno curve    --a 0.5 --samples 100 --format csv --out curve.csv
    biharmonic-tanno cylinder --a 0.5 --grid 32 --format obj --out torus.obj
    biharmonic-tanno geodesic --a 0.5 --c1 0.6 --c2 0.8
    biharmonic-tanno cv       --l 2 --m 2
    biharmonic-tanno verify   --a 0.5 --json report.json

Exit status is 0 on success (for ``verify`` and ``cv``: when every asserted
check passes), 1 when a verification fails and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import export
from .cartan_vranceanu import CVParams, cartan_vranceanu
from .errors import GeometryError
from .generators import (
    LegendreFrame,
    cylinder_geodesic,
    hopf_cylinder,
    legendre_biharmonic_curve,
    proposition_tau,
)
from .sasakian import TannoStructure
from .verify import TOL_ANALYTIC, TOL_ORACLE, VerifyConfig, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _positive_float(text: str) -> float:
    x = float(text)
    if not np.isfinite(x) or x <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return x


def _count(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError(f"must be at least 2, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biharmonic-tanno",
                                     description="Biharmonic Legendre curves and Hopf cylinders in the Tanno-deformed 3-sphere.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=0.5, help="deformation parameter in (0, 1)")
    common.add_argument("--frame", type=float, nargs=8, metavar="X",
                        help="e1 then e3 (8 numbers); e3 must be orthogonal to e1 and J e1")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--timing", action="store_true", help="record wall-clock runtime in reports")

    p = sub.add_parser("curve", parents=[common], help="sample the biharmonic Legendre curve")
    p.add_argument("--samples", type=_count, default=100)
    p.add_argument("--length", type=_positive_float, default=2 * np.pi, help="parameter span")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("cylinder", parents=[common], help="sample or mesh the Hopf cylinder over a period cell")
    p.add_argument("--grid", type=_count, default=32)
    p.add_argument("--format", choices=("json", "csv", "obj"), default="json")

    p = sub.add_parser("geodesic", parents=[common], help="sample a geodesic of the Hopf cylinder")
    p.add_argument("--c1", type=float, default=0.0, help="component along xi")
    p.add_argument("--c2", type=float, default=1.0, help="component along x_u")
    p.add_argument("--samples", type=_count, default=100)
    p.add_argument("--length", type=_positive_float, default=2 * np.pi)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("cv", parents=[common], help="residual report for the Cartan-Vranceanu curves")
    p.add_argument("--l", type=float, default=2.0)
    p.add_argument("--m", type=float, default=2.0)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--samples", type=_count, default=50)
    p.add_argument("--grid", type=_count, default=20)
    p.add_argument("--l", type=float, default=2.0)
    p.add_argument("--m", type=float, default=2.0)
    p.add_argument("--tol-analytic", type=_positive_float, default=TOL_ANALYTIC)
    p.add_argument("--tol-oracle", type=_positive_float, default=TOL_ORACLE)
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    return parser


def _frame(args) -> LegendreFrame:
    if args.frame is None:
        return LegendreFrame.standard()
    return LegendreFrame(np.array(args.frame[:4]), np.array(args.frame[4:]))


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_curve(args) -> int:
    st, frame = TannoStructure(args.a), _frame(args)
    s, p, dp = export.curve_samples(legendre_biharmonic_curve(st, frame), args.samples, args.length)
    if args.format == "csv":
        _write(args.out, export.curve_csv(s, p, dp))
    else:
        _write(args.out, export.curve_json(export.meta(st, frame), s, p, dp))
    return EXIT_OK


def cmd_cylinder(args) -> int:
    st, frame = TannoStructure(args.a), _frame(args)
    uv, pts = export.cylinder_grid(hopf_cylinder(st, frame), args.grid)
    if args.format == "obj":
        _write(args.out, export.mesh_obj(pts, comment=f"hopf cylinder a={args.a:.17g} grid={args.grid}"))
    elif args.format == "csv":
        _write(args.out, export.cylinder_csv(uv, pts))
    else:
        _write(args.out, export.cylinder_json(export.meta(st, frame), uv, pts))
    return EXIT_OK


def cmd_geodesic(args) -> int:
    st, frame = TannoStructure(args.a), _frame(args)
    curve = cylinder_geodesic(hopf_cylinder(st, frame), args.c1, args.c2)
    s, p, dp = export.curve_samples(curve, args.samples, args.length)
    if args.format == "csv":
        _write(args.out, export.curve_csv(s, p, dp))
    else:
        tau, tau2 = proposition_tau(st, args.c1, args.c2)
        m = export.meta(st, frame, c1=args.c1, c2=args.c2, predicted_tension=tau, predicted_bitension=tau2)
        _write(args.out, export.curve_json(m, s, p, dp))
    return EXIT_OK


def cmd_cv(args) -> int:
    start = time.perf_counter()
    _, _, _, report = cartan_vranceanu(CVParams(args.l, args.m))
    report.config = {"command": "cv", "l": args.l, "m": args.m}
    if args.timing:
        report.runtime_ms = (time.perf_counter() - start) * 1e3
    _write(args.out, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = VerifyConfig(a=args.a, frame=_frame(args), samples=args.samples, grid=args.grid, l=args.l, m=args.m,
                       tol_analytic=args.tol_analytic, tol_oracle=args.tol_oracle, timing=args.timing)
    TannoStructure(cfg.a)  # validate before doing any work
    report = run_verify(cfg)
    _write(args.out, "\n".join(report.summary_lines()) + "\n")
    if args.json:
        _write(args.json, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"curve": cmd_curve, "cylinder": cmd_cylinder, "geodesic": cmd_geodesic, "cv": cmd_cv,
            "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
