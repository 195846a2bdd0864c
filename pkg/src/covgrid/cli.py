"""Command-line front end: decompose, plan, compare, render.

Exit codes: 0 success, 1 unreadable/invalid input, 2 degenerate polygon,
3 instance over the exact-solve cap (rerun with --mode heuristic or a
higher --exact-cap). Results go to --output (or stdout); human-readable
summaries go to stdout when results were written to a file, to stderr
otherwise, so stdout stays machine-parseable either way.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import io_formats, planner
from .corpus import random_convex_polygon
from .decomposition import (
    Decomposition,
    NonPositiveRadius,
    UnsupportedPolygon,
    agd_decompose,
    sgd_decompose,
)
from .geometry import DegeneratePolygon, Polygon
from .io_formats import ParseError, ScenarioFile, ValidationError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEGENERATE = 2
EXIT_SIZE = 3

ENV_EXACT_CAP = "COVGRID_EXACT_CAP"


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; keep exit code 2 reserved for
    # degenerate-polygon failures
    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, output: str | None) -> None:
    """Write the result document to --output, or stdout when absent."""
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _say(message: str, to_file: bool) -> None:
    """Summary lines: stdout if the result went to a file, else stderr."""
    print(message, file=sys.stdout if to_file else sys.stderr)


def _resolve_cap(args_cap: int | None, scenario_cap: int | None) -> int | None:
    if args_cap is not None:
        return args_cap
    env = os.environ.get(ENV_EXACT_CAP)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"{ENV_EXACT_CAP} must be an integer, got {env!r}") from exc
    return scenario_cap


def _load_scenario(args) -> ScenarioFile:
    scenario = io_formats.parse_scenario(_read_text(args.input))
    updates = {}
    if getattr(args, "r", None) is not None:
        if args.r <= 0 or not math.isfinite(args.r):
            raise ValidationError(f"--r must be > 0, got {args.r}")
        updates["radius"] = args.r
    if getattr(args, "v", None) is not None:
        if args.v <= 0 or not math.isfinite(args.v):
            raise ValidationError(f"--v must be > 0, got {args.v}")
        updates["speed"] = args.v
    if getattr(args, "method", None):
        updates["method"] = args.method
    if getattr(args, "mode", None):
        updates["mode"] = args.mode
    if getattr(args, "free_endpoints", False):
        updates["free_endpoints"] = True
    if updates:
        from dataclasses import replace

        scenario = replace(scenario, **updates)
    return scenario


def _decompose(scenario: ScenarioFile, direct_nonconvex: bool) -> Decomposition:
    if scenario.method == "sgd":
        return sgd_decompose(scenario.polygon, scenario.radius)
    return agd_decompose(
        scenario.polygon, scenario.radius, allow_nonconvex=direct_nonconvex
    )


def cmd_decompose(args) -> int:
    scenario = _load_scenario(args)
    d = _decompose(scenario, args.direct_nonconvex)
    _emit(io_formats.write_decomposition(d), args.output)
    to_file = bool(args.output)
    if d.method == "agd":
        _say(f"{len(d.cells)} cells, {len(d.channels)} channels", to_file)
        for i, ch in enumerate(d.channels, start=1):
            _say(
                f"channel {i}: l={ch.span:.3f} n={ch.count} e={ch.excess:.3f} "
                f"delta={ch.delta:.3f} y_adj={ch.y_top_adj:.3f}",
                to_file,
            )
    else:
        _say(f"{len(d.cells)} cells", to_file)
    return EXIT_OK


def _plan_input(args):
    """Plan from either a scenario or a decomposition document."""
    text = _read_text(args.input)
    stripped = text.lstrip()
    if stripped[:7].upper() != "POLYGON" and '"cells"' in text:
        d = io_formats.parse_decomposition(text)
        speed = args.v if args.v is not None else io_formats.DEFAULT_SPEED
        if speed <= 0 or not math.isfinite(speed):
            raise ValidationError(f"--v must be > 0, got {speed}")
        mode = args.mode or "valid"
        free = bool(args.free_endpoints)
        cap = _resolve_cap(args.exact_cap, None)
        return d, speed, mode, free, cap
    scenario = _load_scenario(args)
    d = _decompose(scenario, getattr(args, "direct_nonconvex", False))
    cap = _resolve_cap(args.exact_cap, scenario.exact_cap)
    return d, scenario.speed, scenario.mode, scenario.free_endpoints, cap


def cmd_plan(args) -> int:
    d, speed, mode, free_endpoints, cap = _plan_input(args)
    if len(d.cells) < 2:
        plan = planner.PathPlan(
            order=tuple(range(1, len(d.cells) + 1)), t_cov=0.0, mode=mode, optimal=True
        )
    else:
        m = planner.distance_matrix(d.centers_array(), speed)
        if mode == "paper":
            plan = planner.solve_paper_mode(m, exact_cap=cap)
        elif mode == "heuristic":
            plan = planner.heuristic_path(m, free_endpoints=free_endpoints)
        else:
            plan = planner.solve_valid_path(
                m, exact_cap=cap, free_endpoints=free_endpoints
            )
    _emit(io_formats.write_plan(plan), args.output)
    _say(f"t_cov = {plan.t_cov:.2f} s ({plan.mode} mode)", bool(args.output))
    return EXIT_OK


def _compare_cases(args):
    """Yield (case_id, scenario) pairs: explicit files, then generated ones."""
    for path in args.input or []:
        yield path, io_formats.parse_scenario(_read_text(path))
    if args.cases:
        rng = np.random.default_rng(args.seed)
        for k in range(args.cases):
            poly = random_convex_polygon(rng)
            yield f"seed{args.seed}-{k + 1}", ScenarioFile(polygon=poly)


def cmd_compare(args) -> int:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["case", "area", "n_sgd", "n_agd", "cell_reduction",
         "z_sgd", "z_agd", "improvement_pct", "gap"]
    )
    failures = 0
    improvements = []
    n_rows = 0
    for case_id, scenario in _compare_cases(args):
        try:
            radius = args.r if args.r is not None else scenario.radius
            speed = args.v if args.v is not None else scenario.speed
            cap = _resolve_cap(args.exact_cap, scenario.exact_cap)
            row = planner.compare_methods(
                scenario.polygon,
                radius,
                speed,
                exact_cap=cap,
                free_endpoints=args.free_endpoints or scenario.free_endpoints,
            )
        except (ParseError, ValidationError, DegeneratePolygon, ValueError) as exc:
            print(f"case {case_id}: {exc}", file=sys.stderr)
            failures += 1
            continue
        if not row.optimal:
            print(
                f"case {case_id}: {row.n_agd} cells above the exact cap, "
                "z_agd is a heuristic upper bound",
                file=sys.stderr,
            )
        writer.writerow(
            [
                case_id,
                f"{row.area:.2f}",
                row.n_sgd,
                row.n_agd,
                row.cell_reduction,
                f"{row.z_sgd:.2f}",
                f"{row.z_agd:.2f}",
                f"{100.0 * row.relative_improvement:.2f}",
                f"{row.absolute_gap:.2f}",
            ]
        )
        improvements.append(row.relative_improvement)
        n_rows += 1
    if n_rows > 1:
        writer.writerow(
            ["mean", "", "", "", "", "", "",
             f"{100.0 * float(np.mean(improvements)):.2f}", ""]
        )
    _emit(out.getvalue(), args.output)
    if failures:
        print(f"{failures} case(s) failed", file=sys.stderr)
        return EXIT_INPUT
    if n_rows == 0:
        print("no cases given: pass --input and/or --cases", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_render(args) -> int:
    d = io_formats.parse_decomposition(_read_text(args.input))
    plan = None
    if args.plan:
        plan = io_formats.parse_plan(_read_text(args.plan))
    _emit(io_formats.render_svg(d, plan), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="covgrid", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, multi_input=False, modes=False, cap=False):
        if multi_input:
            p.add_argument("--input", action="append",
                           help="scenario path (repeatable)")
        else:
            p.add_argument("--input", help="input document path")
        p.add_argument("--output", help="output path (stdout when omitted)")
        p.add_argument("--r", type=float, help="camera footprint radius override (m)")
        p.add_argument("--v", type=float, help="airspeed override (m/s)")
        if modes:
            p.add_argument("--mode", choices=io_formats.MODES, help="planning mode")
        if modes or multi_input:
            p.add_argument("--free-endpoints", action="store_true",
                           dest="free_endpoints",
                           help="optimize start/end cells instead of fixing 1 and n")
        if cap:
            p.add_argument("--exact-cap", type=int, dest="exact_cap",
                           help=f"largest instance solved exactly "
                                f"(default {planner.DEFAULT_EXACT_CAP}; "
                                f"env {ENV_EXACT_CAP})")

    p_dec = sub.add_parser("decompose", help="build a cell grid from a scenario")
    common(p_dec)
    p_dec.add_argument("--method", choices=io_formats.METHODS,
                       help="decomposition method override")
    p_dec.add_argument("--direct-nonconvex", action="store_true",
                       dest="direct_nonconvex",
                       help="sweep a non-convex polygon directly instead of "
                            "via its convex hull")
    p_dec.set_defaults(func=cmd_decompose, needs_input=True)

    p_plan = sub.add_parser("plan", help="plan a visit order over the cells")
    common(p_plan, modes=True, cap=True)
    p_plan.add_argument("--method", choices=io_formats.METHODS,
                        help="decomposition method when planning from a scenario")
    p_plan.add_argument("--direct-nonconvex", action="store_true",
                        dest="direct_nonconvex", help=argparse.SUPPRESS)
    p_plan.set_defaults(func=cmd_plan, needs_input=True)

    p_cmp = sub.add_parser("compare", help="adaptive-vs-uniform comparison table")
    common(p_cmp, multi_input=True, cap=True)
    p_cmp.add_argument("--cases", type=int, default=0,
                       help="additionally compare N generated random polygons")
    p_cmp.add_argument("--seed", type=int, default=0,
                       help="seed for --cases generation")
    p_cmp.set_defaults(func=cmd_compare, needs_input=False)

    p_ren = sub.add_parser("render", help="draw a decomposition (and plan) as SVG")
    p_ren.add_argument("--input", required=True, help="decomposition JSON path")
    p_ren.add_argument("--plan", help="plan JSON path")
    p_ren.add_argument("--output", help="SVG path (stdout when omitted)")
    p_ren.set_defaults(func=cmd_render, needs_input=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "needs_input", False) and not args.input:
        print(f"covgrid {args.command}: --input is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ParseError, ValidationError, NonPositiveRadius,
            planner.NonPositiveSpeed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DegeneratePolygon, UnsupportedPolygon) as exc:
        print(f"degenerate polygon: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except planner.SizeLimitExceeded as exc:
        print(f"too large for exact solve: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
