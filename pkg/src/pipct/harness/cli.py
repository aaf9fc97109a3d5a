"""Command-line interface.

Each subcommand runs one experiment, writes a CSV (and, unless --no-plot, a
companion PNG), and exits 0 on success, 2 on configuration errors, 3 on
numerical failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from ..errors import (
    CellConstructionError,
    ConfigError,
    EvaluationError,
    NumericalError,
    PoleEvaluationError,
)
from . import plots, runners
from .config import ExperimentConfig
from .csvout import write_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _parse_n_list(text):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _add_common(parser):
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--function", help="registry function name")
    parser.add_argument("--N", type=_parse_n_list, help="comma-separated cell counts")
    parser.add_argument("--n", type=int, help="quadrature node count")
    parser.add_argument("--np", dest="n_p", type=int, help="numerator degree")
    parser.add_argument("--nq", dest="n_q", type=int, help="denominator degree")
    parser.add_argument("--m", type=int, help="badcell probe degree")
    parser.add_argument("--eps", type=float, help="badcell threshold")
    parser.add_argument("--tau", type=float, help="minimum cell width stop")
    parser.add_argument("--out", help="output CSV path")
    parser.add_argument("--no-plot", action="store_true", help="skip the companion figure")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pipct",
        description="Piecewise Pade-Chebyshev approximation experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("table1", "L1 errors/orders for the jump+kink demo function"),
        ("table2", "L1 errors/orders for x|x| at low degrees"),
        ("profile", "per-cell pointwise error peaks"),
        ("badcells", "badcell detection map over a uniform partition"),
        ("adaptive", "adaptive refinement trace and error comparison"),
        ("degrees", "vicinity error for the three numerator-degree placements"),
        ("poles", "pole/zero classification per cell"),
        ("timing", "uniform vs adaptive build timing"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name == "profile":
            p.add_argument(
                "--match-total", action="store_true",
                help="rescale n so every N uses the same total sample count",
            )
    return parser


def _config_from_args(args) -> ExperimentConfig:
    config = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    overrides = {
        "N": args.N,
        "n": args.n,
        "np": args.n_p,
        "nq": args.n_q,
        "m": args.m,
        "eps": args.eps,
        "tau": args.tau,
        "out": args.out,
    }
    if args.function:
        overrides["function"] = {"name": args.function}
    if getattr(args, "match_total", False):
        overrides["match_total_samples"] = True
    if args.no_plot:
        overrides["plot"] = False
    return config.override(**overrides)


def _out_path(config, default_name):
    return config.out if config.out else default_name


def _maybe_plot(config, render, png_path):
    if config.plot is False:
        return
    render(png_path)


def _run(args) -> int:
    config = _config_from_args(args)
    command = args.command

    if command in ("table1", "table2"):
        rows = runners.run_table1(config) if command == "table1" else runners.run_table2(config)
        out = _out_path(config, f"{command}.csv")
        write_csv(
            out,
            ["N", "cheb_l1", "cheb_order", "pipct_l1", "pipct_order"],
            [(r.N, r.cheb_error, r.cheb_order, r.pipct_error, r.pipct_order) for r in rows],
        )
        for r in rows:
            print(
                f"N={r.N:5d}  cheb={r.cheb_error:.6e}  pipct={r.pipct_error:.6e}"
                + (f"  order={r.pipct_order:.3f}" if r.pipct_order is not None else "")
            )
        _maybe_plot(config, lambda p: plots.plot_error_table(rows, p, command), _png(out))

    elif command == "profile":
        rows = runners.run_error_profile(config)
        out = _out_path(config, "profile.csv")
        write_csv(
            out,
            ["N", "n", "cell", "x_peak", "peak_error"],
            [(r.N, r.n, r.cell, r.x_peak, r.peak_error) for r in rows],
        )
        print(f"{len(rows)} peak records over N sweep")
        _maybe_plot(config, lambda p: plots.plot_profile(rows, p), _png(out))

    elif command == "badcells":
        rows = runners.run_badcells(config)
        out = _out_path(config, "badcells.csv")
        write_csv(
            out,
            ["cell", "a", "b", "midpoint", "min_q", "argmin_theta", "is_badcell", "note"],
            [
                (r.cell, r.a, r.b, r.midpoint, r.min_q, r.argmin_theta, r.is_badcell, r.note)
                for r in rows
            ],
        )
        flagged = [r for r in rows if r.is_badcell]
        print(f"{len(flagged)} badcells of {len(rows)} cells")
        for r in flagged:
            print(f"  cell {r.cell}: [{r.a:.6g}, {r.b:.6g}]  min|Q|={r.min_q:.3e}")
        eps = config.eps if config.eps is not None else 1e-2
        _maybe_plot(config, lambda p: plots.plot_badcells(rows, p, eps), _png(out))

    elif command == "adaptive":
        demo = runners.run_adaptive_demo(config)
        out = _out_path(config, "adaptive.csv")
        write_csv(
            out,
            ["cell_a", "cell_b", "is_badcell", "x", "abs_err_adaptive", "abs_err_uniform"],
            [
                (r.cell_a, r.cell_b, r.is_badcell, r.x, r.abs_err_adaptive, r.abs_err_uniform)
                for r in demo.comparison
            ],
        )
        trace_path = os.path.splitext(out)[0] + "_trace.json"
        with open(trace_path, "w", encoding="utf-8") as fh:
            json.dump(demo.trace, fh, indent=2)
        print(f"adaptive partition: {demo.cell_count} cells after {demo.rounds} rounds")
        print(f"trace written to {trace_path}")
        _maybe_plot(config, lambda p: plots.plot_adaptive(demo, p), _png(out))

    elif command == "degrees":
        rows = runners.run_degree_sweep(config)
        out = _out_path(config, "degrees.csv")
        write_csv(
            out,
            ["N", "placement", "np", "singularity", "kind", "max_vicinity_error"],
            [
                (r.N, r.placement, r.n_p, r.singularity, r.kind, r.max_vicinity_error)
                for r in rows
            ],
        )
        print(f"{len(rows)} sweep records")
        _maybe_plot(config, lambda p: plots.plot_degree_sweep(rows, p), _png(out))

    elif command == "poles":
        rows = runners.run_poles(config)
        out = _out_path(config, "poles.csv")
        write_csv(
            out,
            ["cell", "re", "im", "residue_magnitude", "nearest_zero_distance", "spurious"],
            [
                (r.cell, r.re, r.im, r.residue_magnitude, r.nearest_zero_distance, r.spurious)
                for r in rows
            ],
        )
        print(f"{len(rows)} poles, {sum(r.spurious for r in rows)} spurious")
        _maybe_plot(config, lambda p: plots.plot_poles(rows, p), _png(out))

    elif command == "timing":
        rows = runners.run_timing(config)
        out = _out_path(config, "timing.csv")
        write_csv(
            out,
            ["N", "pipct_seconds", "apipct_seconds"],
            [(r.N, r.pipct_seconds, r.apipct_seconds) for r in rows],
        )
        for r in rows:
            print(f"N={r.N:5d}  pipct={r.pipct_seconds:.4f}s  apipct={r.apipct_seconds:.4f}s")
        _maybe_plot(config, lambda p: plots.plot_timing(rows, p), _png(out))

    else:  # pragma: no cover - argparse enforces the choices
        raise ConfigError(f"unknown command {command!r}")

    return EXIT_OK


def _png(csv_path):
    return os.path.splitext(csv_path)[0] + ".png"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (
        NumericalError,
        EvaluationError,
        CellConstructionError,
        PoleEvaluationError,
        ArithmeticError,
        np.linalg.LinAlgError,
    ) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
