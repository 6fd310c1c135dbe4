"""hypermds command line.

Exit codes: 0 success, 1 numerical failure, 2 usage or input validation error.
"""

from __future__ import annotations

import argparse
import logging
import secrets
import sys
from pathlib import Path

import numpy as np

from . import data_io, svg
from .euclidean import euclid_multi_start
from .linesearch import LineSearchParams
from .objective import ErrorModel
from .solver import SolverParams, StopReason, default_scale_grid, multi_start, scale_sweep

log = logging.getLogger("hypermds")

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_solver_flags(p):
    d = SolverParams()
    p.add_argument("--eps-e", type=float, default=d.eps_E, help="stop when E < eps (default %(default)g)")
    p.add_argument("--eps-de", type=float, default=d.eps_dE, help="stop when E decreases by less (default %(default)g)")
    p.add_argument("--eps-g", type=float, default=d.eps_g, help="stop when |g|_inf < eps (default %(default)g)")
    p.add_argument("--eps-r", type=float, default=d.eps_r, help="stop when r_M < eps (default %(default)g)")
    p.add_argument("--max-iter", type=int, default=d.T_M, help="iteration cap (default %(default)d)")
    p.add_argument("--s-max", type=float, default=d.s_M, help="hyperbolic step window (default %(default)g)")
    p.add_argument("--p", type=float, default=d.linesearch.p, help="roof slope fraction (default %(default)g)")
    p.add_argument("--r0", type=float, default=d.linesearch.r0, help="initial step parameter (default %(default)g)")
    p.add_argument("--normalize", action="store_true", help="divide the error by the number of pairs")


def _add_common(p, replicates):
    p.add_argument("--input", required=True, help="dissimilarity matrix CSV")
    p.add_argument("--weights", help="optional weight matrix CSV of the same shape")
    p.add_argument("--error", choices=["ads", "rds", "sam"], default="sam")
    p.add_argument("--replicates", type=int, default=replicates)
    p.add_argument("--seed", type=int)
    _add_solver_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypermds", description="Metric MDS in the Poincare disk.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed a dissimilarity matrix in the disk")
    _add_common(p, 20)
    p.add_argument("--scale", type=float, default=1.0, help="dissimilarity scale factor a")
    p.add_argument("--out-config", required=True)
    p.add_argument("--out-trace", required=True)
    p.add_argument("--out-summary", help="per-replicate summary CSV (default: <out-config stem>_replicates.csv)")
    p.add_argument("--out-initial", help="write the best run's starting configuration")
    p.add_argument("--out-path", help="write the best run's per-iteration configurations")

    p = sub.add_parser("sweep", help="best error over a log-spaced grid of scale factors")
    _add_common(p, 70)
    p.add_argument("--scale-min", type=float, default=1e-2)
    p.add_argument("--scale-max", type=float, default=1e1)
    p.add_argument("--scale-steps", type=int, default=40)
    p.add_argument("--scale-grid", help="explicit comma-separated scale factors (overrides min/max/steps)")
    p.add_argument("--out", required=True)
    p.add_argument("--svg")

    p = sub.add_parser("synth", help="synthetic dissimilarities from points on a surface")
    p.add_argument("--kind", choices=[k.value for k in data_io.SurfaceKind], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0, help="noise level e_m in [0, 1)")
    p.add_argument("--radius", type=float, default=1.0, help="sphere radius")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--out-points", help="also write the generating points (plane/disk kinds)")

    p = sub.add_parser("graph", help="edge list to dissimilarity matrix")
    p.add_argument("--edges", required=True)
    p.add_argument("--mode", choices=[m.value for m in data_io.GraphMode], default="binary")
    p.add_argument("--largest-component", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--out-mapping", help="CSV of matrix index -> node id")

    p = sub.add_parser("compare", help="disk sweep against the Euclidean baseline")
    _add_common(p, 70)
    p.add_argument("--scale-grid", help="comma-separated scale factors (default: 40 log-spaced in [0.01, 10])")
    p.add_argument("--out", required=True)
    p.add_argument("--out-sweep", help="also write the disk sweep as a,best_error")

    p = sub.add_parser("plot", help="render a configuration or a curve as SVG")
    p.add_argument("kind", choices=["disk", "curve"])
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--initial", help="(disk) starting configuration drawn hollow")
    p.add_argument("--path", help="(disk) per-iteration configurations for trajectories")
    p.add_argument("--x", help="(curve) x column name (default: first)")
    p.add_argument("--y", help="(curve) y column name (default: second)")
    p.add_argument("--logx", action="store_true")
    p.add_argument("--logy", action="store_true")
    return parser


def _seed(args) -> int:
    seed = args.seed if args.seed is not None else secrets.randbits(32)
    print(f"seed: {seed}")
    return seed


def _params(args) -> SolverParams:
    try:
        return SolverParams(eps_E=args.eps_e, eps_dE=args.eps_de, eps_g=args.eps_g, eps_r=args.eps_r,
                            T_M=args.max_iter, s_M=args.s_max,
                            linesearch=LineSearchParams(p=args.p, r0=args.r0),
                            record_path=getattr(args, "out_path", None) is not None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(args):
    try:
        return data_io.read_dissimilarity_csv(args.input, args.weights)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _model(args, scale=1.0):
    try:
        return ErrorModel(args.error, scale, args.normalize)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _grid(args):
    if getattr(args, "scale_grid", None):
        try:
            grid = sorted(float(x) for x in args.scale_grid.split(","))
        except ValueError:
            raise UsageError(f"bad --scale-grid {args.scale_grid!r}") from None
    elif hasattr(args, "scale_min"):
        if not (0 < args.scale_min <= args.scale_max) or args.scale_steps < 1:
            raise UsageError("need 0 < scale-min <= scale-max and scale-steps >= 1")
        grid = list(default_scale_grid(args.scale_min, args.scale_max, args.scale_steps)) \
            if args.scale_steps > 1 else [args.scale_min]
    else:
        grid = list(default_scale_grid())
    if not grid or min(grid) <= 0:
        raise UsageError("scale factors must be positive")
    return grid


def _write_rows(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else f"{v:.17g}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def cmd_embed(args) -> int:
    data = _load(args)
    model = _model(args, args.scale)
    params = _params(args)
    seed = _seed(args)
    if args.replicates < 1:
        raise UsageError("--replicates must be >= 1")
    ms = multi_start(data, model, params, args.replicates, seed)
    best = ms.best
    data_io.write_configuration(args.out_config, best.final_config)
    data_io.write_trace(args.out_trace, best.trace)
    summary = args.out_summary or str(Path(args.out_config).with_name(Path(args.out_config).stem + "_replicates.csv"))
    _write_rows(summary, ["replicate", "final_error", "stop_reason", "iterations"],
                [(str(r.replicate), r.final_error, r.stop_reason.value, str(r.iterations)) for r in ms.results])
    if args.out_initial:
        data_io.write_configuration(args.out_initial, best.initial_config)
    if args.out_path:
        data_io.write_path(args.out_path, best.path)
    print(f"best replicate: {best.replicate}  stop: {best.stop_reason.value}  iterations: {best.iterations}")
    print(f"best error: {best.final_error:.17g}")
    if best.stop_reason is StopReason.STATIONARY_LINESEARCH:
        print("line search found no acceptable step (numerically stationary)", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_sweep(args) -> int:
    data = _load(args)
    model = _model(args)
    params = _params(args)
    grid = _grid(args)
    seed = _seed(args)
    rows = scale_sweep(data, model, params, grid, args.replicates, seed)
    _write_rows(args.out, ["a", "best_error"], rows)
    if args.svg:
        a, e = zip(*rows)
        Path(args.svg).write_text(svg.curve_svg(a, e, logx=True, xlabel="scale factor a", ylabel="best error"))
    a_best, e_best = min(rows, key=lambda r: r[1])
    print(f"minimum best error {e_best:.17g} at a = {a_best:.6g}")
    return EXIT_OK


def cmd_synth(args) -> int:
    seed = _seed(args)
    try:
        spec = data_io.SyntheticSpec(args.kind, args.n, args.noise, seed, args.radius)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = data_io.generate_synthetic(spec)
    data_io.write_dissimilarity_csv(args.out, data)
    if args.out_points:
        pts = data_io.sample_surface(spec)
        if spec.kind is data_io.SurfaceKind.SPHERE:
            _write_rows(args.out_points, ["index", "x", "y", "z"], [(str(i), *p) for i, p in enumerate(pts)])
        else:
            data_io.write_configuration(args.out_points, pts)
    print(f"wrote {spec.n}x{spec.n} {spec.kind.value} dissimilarities to {args.out}")
    return EXIT_OK


def cmd_graph(args) -> int:
    try:
        g = data_io.read_edge_list(args.edges, args.mode)
        mapping = {i: u for i, u in enumerate(g.nodes)}
        if args.largest_component:
            sub = data_io.largest_connected_component(g)
            mapping = dict(sub.mapping)
            g = sub
        data = data_io.graph_to_dissimilarity(g)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    data_io.write_dissimilarity_csv(args.out, data)
    if args.out_mapping:
        _write_rows(args.out_mapping, ["index", "node"], [(str(i), str(u)) for i, u in mapping.items()])
    print(f"wrote {data.n}x{data.n} matrix ({data.n_known_pairs} known pairs) to {args.out}")
    return EXIT_OK


def cmd_compare(args) -> int:
    data = _load(args)
    model = _model(args)
    params = _params(args)
    grid = _grid(args)
    seed = _seed(args)
    rows = scale_sweep(data, model, params, grid, args.replicates, seed)
    a_best, pd_best = min(rows, key=lambda r: r[1])
    eu_best = euclid_multi_start(data, model, params, args.replicates, seed).best_error
    ratio = eu_best / pd_best if pd_best > 0 else float("inf")
    _write_rows(args.out, ["pd_best_error", "pd_best_scale", "euclid_best_error", "ratio_euclid_over_pd"],
                [(pd_best, a_best, eu_best, ratio)])
    if args.out_sweep:
        _write_rows(args.out_sweep, ["a", "best_error"], rows)
    print(f"disk best {pd_best:.6g} at a = {a_best:.6g}; plane best {eu_best:.6g}; ratio {ratio:.4f}")
    return EXIT_OK


def cmd_plot(args) -> int:
    try:
        if args.kind == "disk":
            final = data_io.read_configuration(args.input)
            if np.any(np.abs(final) >= 1):
                raise ValueError(f"{args.input}: points must lie inside the unit disk")
            initial = data_io.read_configuration(args.initial) if args.initial else None
            path = data_io.read_path(args.path) if args.path else None
            text = svg.disk_svg(final, initial, path)
        else:
            header, table = data_io.read_table(args.input)
            xi = header.index(args.x) if args.x else 0
            yi = header.index(args.y) if args.y else 1
            text = svg.curve_svg(table[:, xi], table[:, yi], args.logx, args.logy, header[xi], header[yi])
    except (OSError, ValueError, IndexError, StopIteration) as exc:
        raise UsageError(f"cannot plot {args.input}: {exc}") from None
    Path(args.out).write_text(text)
    return EXIT_OK


COMMANDS = {
    "embed": cmd_embed,
    "sweep": cmd_sweep,
    "synth": cmd_synth,
    "graph": cmd_graph,
    "compare": cmd_compare,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
