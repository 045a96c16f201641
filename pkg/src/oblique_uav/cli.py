"""Command line entry point.

Exit codes: 0 success, 1 infeasible scenario or failed validation, 2 bad config.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .baselines import exhaustive_search_2d, exhaustive_search_3d, segment_offset, vertical_baseline
from .config import RunConfig, load_config
from .errors import ConfigError, Infeasible, ValidationFailed
from .experiments import (
    row_from_baseline,
    row_from_solve,
    rows_to_csv,
    sweep_distance,
    sweep_resolution,
    trace_to_csv,
    validate_geometry,
)
from .solver import SolveStatus, bcd_solve


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, newline="\n")


def cmd_solve(cfg: RunConfig, out: str | None, trace: str | None) -> int:
    s = cfg.scenario
    res = bcd_solve(s, cfg.solver)
    if res.status is SolveStatus.INFEASIBLE:
        print(
            f"infeasible: i_min={s.i_min} exceeds the best reachable resolution "
            f"{s.consts.a / s.vertical_floor() ** 2:.4f}",
            file=sys.stderr,
        )
        return 1
    p = res.placement
    print(f"status       {res.status.value}")
    print(f"iterations   {res.iterations}")
    print(f"eta          {res.point.eta:.6f}   (d_gb = {s.d_gb:.3f} m)")
    print(f"placement    x={p.q[0]:.3f} m  y={p.q[1]:.3f} m  z={p.z:.3f} m")
    print(f"resolution   {res.resolution:.6f}   (required {s.i_min})")
    print(f"rate         {res.rate:.6g} bit/s")
    print(f"delay        {res.delay:.6g} s   (at achieved resolution {res.delay_achieved:.6g} s)")
    if trace:
        _write(trace, trace_to_csv(res.trace))
    if out:
        _write(out, rows_to_csv([row_from_solve(res, s)]))
    return 0


def cmd_compare(cfg: RunConfig, out: str | None) -> int:
    s = cfg.scenario
    rows = [row_from_solve(bcd_solve(s, cfg.solver), s)]
    offset = None
    for run in (lambda: exhaustive_search_2d(s, cfg.es_step),
                lambda: exhaustive_search_3d(s, cfg.es3d_step),
                lambda: vertical_baseline(s)):
        try:
            b = run()
        except Infeasible as exc:
            print(f"infeasible: {exc}", file=sys.stderr)
            return 1
        rows.append(row_from_baseline(b, s))
        if b.scheme.value == "proposed-es3d":
            offset = segment_offset(b.placement.q, s)
    if rows[0].status == "infeasible":
        return 1
    print(f"{'scheme':<16}{'eta':>9}{'z [m]':>10}{'resolution':>12}{'rate [bit/s]':>15}{'delay [s]':>12}")
    for r in rows:
        print(f"{r.scheme:<16}{r.eta:>9.4f}{r.z:>10.2f}{r.resolution:>12.5f}{r.rate_bps:>15.6g}{r.delay_s:>12.5g}")
    print(f"3D search optimum lies {offset:.3f} m from the BS-GT segment")
    if out:
        _write(out, rows_to_csv(rows))
    return 0


def cmd_sweep(cfg: RunConfig, out: str | None, which: str) -> int:
    rows = sweep_resolution(cfg) if which == "resolution" else sweep_distance(cfg)
    _write(out or cfg.output, rows_to_csv(rows))
    return 0


def cmd_validate_geometry(cfg: RunConfig, samples: int, seed: int) -> int:
    try:
        report = validate_geometry(cfg.scenario, samples, seed, es3d_step=cfg.es3d_step)
        ok = True
    except ValidationFailed as exc:
        report, ok = exc.report, False
        print(str(exc), file=sys.stderr)
    print(f"samples                     {samples}")
    print(f"max rel. error, area        {report['area']:.3e}")
    print(f"max rel. error, d1          {report['d1']:.3e}")
    print(f"max rel. error, d2          {report['d2']:.3e}")
    print(f"max rel. error, I*S=pi r^2  {report['identity']:.3e}")
    print(f"3D search offset            {report['segment_offset_m']:.3f} m "
          f"(limit {report['segment_limit_m']:.3f} m)")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oblique-uav",
        description="UAV shooting-point placement under a resolution requirement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("solve", "run block coordinate descent on the configured scenario"),
        ("compare", "compare the solver with the exhaustive and vertical schemes"),
        ("sweep-resolution", "delay vs resolution requirement for each gamma0 (CSV)"),
        ("sweep-distance", "delay vs BS-GT distance for each requirement (CSV)"),
        ("validate-geometry", "check closed forms against corner projection"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="YAML or JSON scenario file")
        p.add_argument("--out", help="CSV output path (stdout when omitted)")
        if name == "solve":
            p.add_argument("--trace", help="write the iteration trace as CSV")
        if name == "validate-geometry":
            p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "solve":
            return cmd_solve(cfg, args.out, args.trace)
        if args.command == "compare":
            return cmd_compare(cfg, args.out)
        if args.command == "sweep-resolution":
            return cmd_sweep(cfg, args.out, "resolution")
        if args.command == "sweep-distance":
            return cmd_sweep(cfg, args.out, "distance")
        return cmd_validate_geometry(cfg, args.samples, args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
