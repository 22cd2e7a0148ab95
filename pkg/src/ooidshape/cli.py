"""Command line entry point: ``ooidshape <command> ...``.

Exit codes: 0 ok, 2 bad arguments, 3 parameters not realizable, 4 flow
topology failure. Console summaries are ``key=value`` lines with 6
significant digits; files use 17.
"""

import argparse
import math
import os
import sys

import numpy as np

from . import ellipse as ell
from .errors import DomainError, NotRealizableError, TopologyError
from .flow import (
    FlowConfig,
    FlowState,
    circle_markers,
    ellipse_markers,
    evolve_to_steady,
    markers_from_shape,
    residual,
)
from .geometry import resample_uniform
from .inverse import recover_params
from .local import (
    DEFAULT_SAMPLES,
    LocalParams,
    assemble_shape,
    c1_crit,
    find_y0,
    find_ybar,
    realize_segment,
)
from .nonlocal_map import NonlocalParams, q_of, solve_nonlocal, steady_residual, sweep
from .properties import property_report
from .shapeio import read_shape, write_rows, write_shape

EXIT_OK = 0
EXIT_ARGS = 2
EXIT_NOT_REALIZABLE = 3
EXIT_TOPOLOGY = 4

SAMPLES_ENV = "OOIDSHAPE_SAMPLES"


def _default_samples():
    raw = os.environ.get(SAMPLES_ENV)
    if raw is None:
        return DEFAULT_SAMPLES
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{SAMPLES_ENV} must be an integer, got {raw!r}") from None


def _say(stream, /, **kv):
    for k, v in kv.items():
        if isinstance(v, (bool, str, int, np.integer)):
            stream.write(f"{k}={v}\n")
        else:
            stream.write(f"{k}={format(float(v) + 0.0, '.6g')}\n")


def _shape_residual(shape, c1, c2):
    y_cos = shape.points[:, 1] * np.cos(shape.gamma)
    return float(np.max(np.abs(steady_residual(c1, c2, shape.area, shape.kappa, y_cos))))


def cmd_steady(args, out):
    np_ = NonlocalParams(args.c1, args.c2)
    shape = solve_nonlocal(np_, args.samples)
    lp = shape.local_params
    meta = {"c1": np_.c1, "c2": np_.c2, "c1_hat": lp.c1_hat, "q": lp.q, "area": shape.area}
    write_shape(args.out, shape.points, shape.gamma, shape.kappa, meta)
    _say(out, area=shape.area, c1_hat=lp.c1_hat, q=lp.q, max_residual=_shape_residual(shape, np_.c1, np_.c2), out=str(args.out))
    return EXIT_OK


def cmd_local(args, out):
    p = LocalParams(args.c1_hat, args.q)
    seg = realize_segment(p, args.samples)
    shape = assemble_shape(seg)
    kv = {"y_bar": seg.y_bar, "area": shape.area, "c1": p.c1_hat / shape.area, "c2": p.c2_hat / shape.area}
    if p.q > 0:
        kv.update(y0=find_y0(p), c1_crit=c1_crit(p.q))
    _say(out, **kv)
    if args.out:
        meta = {"c1": kv["c1"], "c2": kv["c2"], "c1_hat": p.c1_hat, "q": p.q, "area": shape.area}
        write_shape(args.out, shape.points, shape.gamma, shape.kappa, meta)
        _say(out, out=str(args.out))
    return EXIT_OK


def cmd_crit(args, out):
    crit = c1_crit(args.q)
    _say(out, c1_crit=crit, y0=find_y0(LocalParams(crit, args.q)))
    return EXIT_OK


def cmd_sweep(args, out):
    table = sweep(args.q, args.rows)
    header = ["c1_hat", "area", "c1"]
    if args.out:
        write_rows(args.out, header, table.rows)
        _say(out, rows=len(table.rows), out=str(args.out))
    else:
        write_rows(out, header, table.rows)
    return EXIT_OK


def _initial_markers(args):
    m = args.markers
    if args.init:
        points, _, _, meta = read_shape(args.init)
        return resample_uniform(points, m), meta
    if args.preset == "circle":
        return circle_markers(args.radius, m), {}
    if args.preset == "ellipse":
        e = ell.EllipseSpec(args.a, args.b)
        return ellipse_markers(e.a, e.b, m), {"c1": ell.forced_c1(e), "c2": ell.forced_c2(e)}
    if args.preset == "steady":
        if args.c1 is None:
            raise DomainError("--preset steady needs --c1")
        np_ = NonlocalParams(args.c1, args.c2 or 0.0)
        shape = solve_nonlocal(np_, 1024)
        return args.scale * markers_from_shape(shape, m), {"c1": np_.c1, "c2": np_.c2}
    raise DomainError("flow needs --preset or --init")


def cmd_flow(args, out):
    markers, meta = _initial_markers(args)
    c1 = args.c1 if args.c1 is not None else meta.get("c1")
    c2 = args.c2 if args.c2 is not None else meta.get("c2", 0.0)
    if c1 is None:
        raise DomainError("flow needs --c1 (or an input carrying c1)")
    np_ = NonlocalParams(c1, c2, args.c3)
    cfg = FlowConfig(
        dt_safety=args.dt_safety,
        max_steps=args.steps,
        redistribute_every=args.redistribute_every,
        stop_residual=args.stop_residual,
    )
    state = FlowState(markers)
    _, r0 = residual(state, np_)
    header = ["step", "time", "area", "max_residual"]
    try:
        result = evolve_to_steady(state, np_, cfg)
    except TopologyError as exc:
        write_rows(args.out, header, exc.history)
        _say(out, c1=np_.c1, c2=np_.c2, initial_residual=r0, topology_error=str(exc), out=str(args.out))
        return EXIT_TOPOLOGY
    write_rows(args.out, header, result.history)
    _say(
        out,
        c1=np_.c1,
        c2=np_.c2,
        initial_residual=r0,
        final_residual=result.history[-1][3],
        converged=result.converged,
        steps=result.state.step_count,
        area=result.state.area,
        out=str(args.out),
    )
    return EXIT_OK


def cmd_ellipse_check(args, out):
    e = ell.EllipseSpec(args.a, args.b)
    phi = np.linspace(0.0, math.pi / 2, args.phi_grid)
    r = np.asarray(ell.ellipse_residual(e, phi))
    worst, at = ell.max_abs_residual(e, args.phi_grid)
    _say(
        out,
        c1=ell.forced_c1(e),
        c2=ell.forced_c2(e),
        residual_pi4=ell.residual_quarter_pi(e),
        max_abs_residual=worst,
        phi_at_max=at,
    )
    for p_, v in zip(phi, r):
        out.write(f"phi={format(float(p_), '.6g')} residual={format(float(v), '.6g')}\n")
    return EXIT_OK


def cmd_recover(args, out):
    points, _, _, meta = read_shape(args.input)
    rec = recover_params(points, smooth_modes=args.smooth_modes)
    kv = dict(c1=rec.c1, c2=rec.c2, residual_norm=rec.residual_norm, degenerate=rec.degenerate, clamped=rec.clamped, convex=rec.convex)
    for key in ("c1", "c2"):
        if key in meta and meta[key]:
            kv[f"{key}_rel_error"] = abs(kv[key] - meta[key]) / meta[key]
    _say(out, **kv)
    return EXIT_OK


def cmd_properties(args, out):
    rep = property_report(LocalParams(args.c1_hat, args.q))
    for line in rep.lines():
        out.write(line + "\n")
    _say(out, all_hold=rep.all_hold)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ooidshape", description="Steady shapes of the ooid growth/abrasion/friction flow.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("steady", help="steady shape for physical parameters c1, c2")
    s.add_argument("--c1", type=float, required=True)
    s.add_argument("--c2", type=float, default=0.0)
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--out", default="steady.shape.csv")
    s.set_defaults(func=cmd_steady)

    s = sub.add_parser("local", help="steady shape of the local equation")
    s.add_argument("--c1-hat", type=float, required=True)
    s.add_argument("--q", type=float, default=0.0)
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_local)

    s = sub.add_parser("crit", help="critical c1_hat for a given q")
    s.add_argument("--q", type=float, required=True)
    s.set_defaults(func=cmd_crit)

    s = sub.add_parser("sweep", help="tabulate c1 = F(c1_hat) at fixed q (CSV)")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--rows", type=int, default=16)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("flow", help="run the marker flow and write a time series")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=["circle", "ellipse", "steady"])
    src.add_argument("--init", help="shape file to start from")
    s.add_argument("--radius", type=float, default=1.0)
    s.add_argument("--a", type=float, default=2.0)
    s.add_argument("--b", type=float, default=1.0)
    s.add_argument("--scale", type=float, default=1.0, help="scale factor for the steady preset")
    s.add_argument("--c1", type=float, default=None)
    s.add_argument("--c2", type=float, default=None)
    s.add_argument("--c3", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=10_000)
    s.add_argument("--markers", type=int, default=256)
    s.add_argument("--dt-safety", type=float, default=0.2)
    s.add_argument("--redistribute-every", type=int, default=1)
    s.add_argument("--stop-residual", type=float, default=1e-6)
    s.add_argument("--out", default="flow.csv")
    s.set_defaults(func=cmd_flow)

    s = sub.add_parser("ellipse-check", help="residual of an ellipse with forced constants")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--phi-grid", type=int, default=9)
    s.set_defaults(func=cmd_ellipse_check)

    s = sub.add_parser("recover", help="least-squares c1, c2 from a shape file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--smooth-modes", type=int, default=None)
    s.set_defaults(func=cmd_recover)

    s = sub.add_parser("properties", help="check the curvature-profile properties")
    s.add_argument("--c1-hat", type=float, required=True)
    s.add_argument("--q", type=float, required=True)
    s.set_defaults(func=cmd_properties)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "samples") and args.samples is None:
            args.samples = _default_samples()
        return args.func(args, out)
    except NotRealizableError as exc:
        sys.stderr.write(f"not realizable: {exc}\n")
        return EXIT_NOT_REALIZABLE
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
