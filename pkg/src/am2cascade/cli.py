"""Command-line surface: lambda, steady-states, diagram, simulate, basins.

All numeric output uses 9 significant digits; identical configuration
and seed produce byte-identical files. Exit codes: 0 success, 2 usage,
3 numeric failure, 4 non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, get_preset, parse_params_file
from .kinetics import INF, OperatingPoint, lambda1, lambda2_pair, critical_rates
from .equilibria import enumerate_steady_states, serialize_steady_states
from .stability import classify_all
from .diagram import PLANE_D_S1IN, PLANE_S2IN_S1IN, PlaneSpec, gamma_sample, scan_plane
from .regions import FIGURES, match_signature, region_color, region_table_check
from .simulator import DEFAULT_TOL, StiffnessError, basin_sample, integrate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_NOCONV = 4


def _g(x) -> str:
    """9-significant-digit rendering with an explicit inf spelling."""
    if x is None or (isinstance(x, float) and math.isinf(x)):
        return "inf"
    return f"{x:.9g}"


def _params_from(args):
    if args.params:
        return parse_params_file(args.params)
    return get_preset(args.preset)


def _point_from(args) -> OperatingPoint:
    missing = [k for k in ("D", "r", "s1in", "s2in") if getattr(args, k.lower()) is None]
    if missing:
        raise ConfigError(f"point command needs --D --r --s1in --s2in (missing {missing})")
    return OperatingPoint(d=args.d, r=args.r, s1in=args.s1in, s2in=args.s2in)


def _add_common(sp, point=True):
    sp.add_argument("--preset", default="bernard2001")
    sp.add_argument("--params", metavar="FILE", help="kinetics file overriding --preset")
    if point:
        sp.add_argument("--D", dest="d", type=float)
        sp.add_argument("--r", dest="r", type=float)
        sp.add_argument("--s1in", type=float)
        sp.add_argument("--s2in", type=float)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", metavar="DIR")
    sp.add_argument("--jobs", type=int, default=0, help="0 = all cores")


def _outdir(args) -> Path:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_lambda(args) -> int:
    p = _params_from(args)
    op = _point_from(args)
    cr = critical_rates(op, p)
    rows = [
        ("lambda1^1", lambda1(op.d, op.r, 1, p)),
        ("lambda1^2", lambda1(op.d, op.r, 2, p)),
        ("lambda2^11", lambda2_pair(op.d, op.r, 1, p)[0]),
        ("lambda2^12", lambda2_pair(op.d, op.r, 1, p)[1]),
        ("lambda2^21", lambda2_pair(op.d, op.r, 2, p)[0]),
        ("lambda2^22", lambda2_pair(op.d, op.r, 2, p)[1]),
        ("D1^m", cr.d1m),
        ("D2^m", cr.d2m),
        ("D1^*", cr.d1star),
        ("D2^*", cr.d2star),
        ("S2^m", cr.s2m),
    ]
    for name, value in rows:
        print(f"{name}\t{_g(value)}")
    return EXIT_OK


def cmd_steady_states(args) -> int:
    p = _params_from(args)
    op = _point_from(args)
    states = classify_all(enumerate_steady_states(op, p), op, p)
    text = serialize_steady_states(states)
    if args.out:
        (_outdir(args) / "steady_states.json").write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _plane_from(args) -> tuple[PlaneSpec, object]:
    p = _params_from(args)
    if args.figure:
        fig = FIGURES[args.figure]
        plane = fig.plane(nx=args.grid[0], ny=args.grid[1])
        if not args.params and args.preset == "bernard2001":
            p = fig.params()
        return plane, p
    if not args.plane:
        raise ConfigError("diagram needs --figure or --plane with ranges")
    if args.x_range is None or args.y_range is None:
        raise ConfigError("--plane needs --x-range LO HI and --y-range LO HI")
    kind = args.plane
    kw = dict(
        kind=kind,
        x_range=tuple(args.x_range),
        y_range=tuple(args.y_range),
        nx=args.grid[0],
        ny=args.grid[1],
    )
    if kind == PLANE_D_S1IN:
        if args.r is None or args.s2in is None:
            raise ConfigError("d-s1in plane needs --r and --s2in")
        plane = PlaneSpec(r=args.r, s2in=args.s2in, **kw)
    else:
        if args.r is None or args.d is None:
            raise ConfigError("s2in-s1in plane needs --r and --D")
        plane = PlaneSpec(r=args.r, d=args.d, **kw)
    return plane, p


def cmd_diagram(args) -> int:
    plane, p = _plane_from(args)
    jobs = args.jobs if args.jobs > 0 else None
    scan = scan_plane(plane, p, jobs=jobs or 1)
    fig = FIGURES.get(args.figure) if args.figure else None

    out = _outdir(args)
    xs, ys = plane.x_cells(), plane.y_cells()
    sig_list = sorted(set(scan.codes.values()))
    sig_ids = {code: i for i, code in enumerate(sig_list)}

    legend_rows = []
    for code in sig_list:
        jid = match_signature(code, fig) if fig else None
        color = region_color(jid) if jid is not None else ""
        jname = f"J{jid}" if jid is not None else ""
        legend_rows.append((sig_ids[code], code, jname, color))
    with open(out / "legend.tsv", "w") as fh:
        fh.write("region_id\tsignature\tj_label\tcolor\n")
        for rid, code, jname, color in legend_rows:
            fh.write(f"{rid}\t{code}\t{jname}\t{color}\n")

    jid_of_code = {code: match_signature(code, fig) for code in sig_list} if fig else {}
    with open(out / "grid.tsv", "w") as fh:
        fh.write("x\ty\tregion_id\tsignature_hash\tcolor\n")
        for iy in range(plane.ny):
            for ix in range(plane.nx):
                code = scan.codes[int(scan.bits[iy, ix])]
                jid = jid_of_code.get(code)
                color = region_color(jid) if jid is not None else ""
                fh.write(
                    f"{_g(float(xs[ix]))}\t{_g(float(ys[iy]))}\t{sig_ids[code]}\t"
                    f"{_crc(code)}\t{color}\n"
                )

    for gid in range(16):
        curve = gamma_sample(gid, plane, p)
        with open(out / f"gamma_{gid:02d}.tsv", "w") as fh:
            fh.write("x\ty\n")
            for k, seg in enumerate(curve.segments):
                if k:
                    fh.write("\n")
                for x, y in seg:
                    fh.write(f"{_g(float(x))}\t{_g(float(y))}\n")

    print(f"distinct signatures (interior cells): {scan.distinct_count}")
    if fig:
        report = region_table_check(scan, fig)
        print(f"golden rows matched: {len(set(e.jid_by_signature for e in report.entries) - {None})}"
              f" of {len(fig.region_ids)}")
        if report.missing_jids:
            print(f"missing golden regions: {report.missing_jids}")
        if report.unmatched_codes:
            print(f"signatures without golden row: {len(report.unmatched_codes)}")
    return EXIT_OK


def _crc(code: str) -> str:
    import zlib

    return f"{zlib.crc32(code.encode()):08x}"


def cmd_simulate(args) -> int:
    p = _params_from(args)
    op = _point_from(args)
    if args.ic:
        ic = [float(v) for v in args.ic.split(",")]
        if len(ic) not in (4, 8):
            raise ConfigError("--ic needs 4 or 8 comma-separated values")
    else:
        ic = [op.s1in, 0.1, op.s2in, 0.1, op.s1in, 0.1, op.s2in, 0.1]
    try:
        traj = integrate(np.array(ic), op, p, tmax=args.tmax,
                         tol=args.tol if args.tol else DEFAULT_TOL)
    except StiffnessError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    out = _outdir(args)
    with open(out / "trajectory.tsv", "w") as fh:
        if traj.kind == "full":
            hdr = ["t", "s1_1", "x1_1", "s2_1", "x2_1", "s1_2", "x1_2", "s2_2", "x2_2",
                   "dz1_1", "dz2_1", "dz1_2", "dz2_2"]
            dz = traj.z_deviation(p)
        else:
            hdr = ["t", "x1_1", "x2_1", "x1_2", "x2_2"]
            dz = None
        fh.write("\t".join(hdr) + "\n")
        for i, t in enumerate(traj.t):
            row = [t, *traj.y[i]]
            if dz is not None:
                row += list(dz[i])
            fh.write("\t".join(_g(float(v)) for v in row) + "\n")
    matched = f" -> {traj.matched[0]}#{traj.matched[1]}" if traj.matched else ""
    print(f"event: {traj.event}{matched} (t_end={_g(float(traj.t[-1]))})")
    return EXIT_OK if traj.event == "converged" else EXIT_NOCONV


def cmd_basins(args) -> int:
    p = _params_from(args)
    op = _point_from(args)
    try:
        report = basin_sample(op, p, n=args.n, seed=args.seed, tmax=args.tmax,
                              tol=args.tol if args.tol else DEFAULT_TOL)
    except StiffnessError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = json.dumps(report.to_record(), indent=1, sort_keys=True)
    if args.out:
        (_outdir(args) / "basins.json").write_text(text + "\n")
    print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="am2cascade",
        description="Two-chemostat AM2 cascade: break-evens, steady states, "
        "operating diagrams, simulation.",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lambda", help="break-even concentrations at a point")
    _add_common(sp)
    sp.set_defaults(fn=cmd_lambda)

    sp = sub.add_parser("steady-states", help="enumerate and classify steady states")
    _add_common(sp)
    sp.set_defaults(fn=cmd_steady_states)

    sp = sub.add_parser("diagram", help="scan an operating-diagram plane")
    _add_common(sp, point=True)
    sp.add_argument("--figure", choices=sorted(FIGURES))
    sp.add_argument("--plane", choices=[PLANE_D_S1IN, PLANE_S2IN_S1IN])
    sp.add_argument("--x-range", nargs=2, type=float, metavar=("LO", "HI"))
    sp.add_argument("--y-range", nargs=2, type=float, metavar=("LO", "HI"))
    sp.add_argument("--grid", nargs=2, type=int, default=[600, 600], metavar=("NX", "NY"))
    sp.set_defaults(fn=cmd_diagram)

    sp = sub.add_parser("simulate", help="integrate one trajectory")
    _add_common(sp)
    sp.add_argument("--ic", help="comma-separated initial state (4 or 8 values)")
    sp.add_argument("--tmax", type=float, default=1e4)
    sp.set_defaults(fn=cmd_simulate)

    sp = sub.add_parser("basins", help="Monte-Carlo basins of attraction")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=200)
    sp.add_argument("--tmax", type=float, default=1e4)
    sp.set_defaults(fn=cmd_basins)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
