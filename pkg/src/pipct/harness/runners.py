"""Experiment runners: error tables, pointwise error profiles, badcell maps,
adaptive demos, degree sweeps, pole reports, and timing comparisons.

Each runner returns plain result rows; CSV emission lives in ``csvout`` so
outputs stay byte-deterministic for a fixed configuration.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..adaptive import AdaptiveParams, BadcellParams, adaptive_run, detect_badcells
from ..chebyshev import Interval, compute_coefficients, evaluate_series
from ..errors import ConfigError, NumericalError
from ..pade import build_pct, evaluate_pct_masked
from ..piecewise import (
    DegreePlan,
    _l1_error_cells,
    build_pipct,
    convergence_order,
    l1_error_report,
    uniform_partition,
)
from ..poles import classify_froissart, pole_report_rows
from .config import ExperimentConfig
from .registry import resolve_function_spec


def _resolve(config: ExperimentConfig, default_function: str = "jump_kink"):
    spec = config.function if config.function is not None else {"name": default_function}
    fn, natural, entry = resolve_function_spec(spec)
    interval = Interval(*config.interval) if config.interval else natural
    return fn, interval, entry


def _require(value, default):
    return default if value is None else value


@dataclass(frozen=True)
class TableRow:
    N: int
    cheb_error: float
    cheb_order: float | None
    pipct_error: float
    pipct_order: float | None


def _piecewise_cheb_l1(fn, partition, n, d, region, samples_per_cell) -> float:
    """L1 error of the per-cell truncated Chebyshev series (the linear baseline)."""
    series = [
        compute_coefficients(fn, partition.cell(j), n, d)
        for j in range(partition.num_cells)
    ]

    def cell_values(j, xs):
        vals = evaluate_series(series[j], xs)
        return np.asarray(vals), np.zeros(xs.shape, dtype=bool)

    return _l1_error_cells(partition, cell_values, fn, region, samples_per_cell).value


def _error_table(config: ExperimentConfig, defaults: dict) -> list[TableRow]:
    fn, interval, _ = _resolve(config, defaults["function"])
    sweep = _require(config.N, defaults["N"])
    n = _require(config.n, defaults["n"])
    n_p = _require(config.np, defaults["np"])
    n_q = _require(config.nq, defaults["nq"])
    region = Interval(*config.region) if config.region else interval
    samples = _require(config.samples_per_cell, 2048)
    d = n_p + n_q

    rows = []
    for N in sweep:
        partition = uniform_partition(interval, N)
        approx = build_pipct(fn, partition, DegreePlan.uniform(N, n_p, n_q), n)
        if approx.failures:
            raise NumericalError(f"construction failed in cells {approx.failures}")
        rows.append((N, _piecewise_cheb_l1(fn, partition, n, d, region, samples),
                     l1_error_report(approx, fn, region, samples).value))
    if len(rows) > 1:
        cheb_orders = [None] + convergence_order([(N, e) for N, e, _ in rows])
        pipct_orders = [None] + convergence_order([(N, e) for N, _, e in rows])
    else:
        cheb_orders = pipct_orders = [None]
    return [
        TableRow(N, cheb, co, pipct, po)
        for (N, cheb, pipct), co, po in zip(rows, cheb_orders, pipct_orders)
    ]


TABLE1_DEFAULTS = {
    "function": "jump_kink", "N": (2, 8, 32, 128, 256, 512), "n": 200, "np": 20, "nq": 20,
}
TABLE2_DEFAULTS = {"function": "x_abs_x", "N": (2, 4, 8, 16), "n": 200, "np": 2, "nq": 2}


def run_table1(config: ExperimentConfig) -> list[TableRow]:
    """Piecewise-Chebyshev vs piecewise-rational L1 errors and orders as N grows."""
    if config.function is None and config.region is None:
        config = config.override(region=(0.2, 1.0))
    return _error_table(config, TABLE1_DEFAULTS)


def run_table2(config: ExperimentConfig) -> list[TableRow]:
    """The same comparison for the C^1 function x|x| at low degrees."""
    return _error_table(config, TABLE2_DEFAULTS)


@dataclass(frozen=True)
class ProfileRow:
    N: int
    n: int
    cell: int
    x_peak: float
    peak_error: float


def run_error_profile(config: ExperimentConfig) -> list[ProfileRow]:
    """Per-cell peaks of |f - R| on a dense grid, one series per N.

    With ``match_total_samples`` the node count is rescaled as N varies so
    every series consumes the same number of function values (global-versus-
    piecewise comparisons at equal data budgets).
    """
    fn, interval, _ = _resolve(config)
    sweep = _require(config.N, (1, 2, 8, 32, 128, 256, 512))
    n = _require(config.n, 200)
    n_p = _require(config.np, 20)
    n_q = _require(config.nq, 20)
    points = _require(config.profile_points_per_cell, 40)
    match_total = _require(config.match_total_samples, False)
    total = n * max(sweep)

    rows = []
    for N in sweep:
        n_eff = max(total // N, n_p + n_q + 1) if match_total else n
        partition = uniform_partition(interval, N)
        approx = build_pipct(fn, partition, DegreePlan.uniform(N, n_p, n_q), n_eff)
        if approx.failures:
            raise NumericalError(f"construction failed in cells {approx.failures}")
        for j in range(partition.num_cells):
            cell = partition.cell(j)
            xs = np.linspace(cell.a, cell.b, points + 2)[1:-1]
            vals, pole = evaluate_pct_masked(approx.pieces[j], xs)
            err = np.abs(np.asarray(fn(xs)) - vals)
            err[pole] = np.inf
            peak = int(np.argmax(err))
            rows.append(ProfileRow(N, n_eff, j, float(xs[peak]), float(err[peak])))
    return rows


@dataclass(frozen=True)
class BadcellRow:
    cell: int
    a: float
    b: float
    midpoint: float
    min_q: float
    argmin_theta: float
    is_badcell: int
    note: str


def run_badcells(config: ExperimentConfig) -> list[BadcellRow]:
    """Badcell report over a uniform partition (singularity localization map)."""
    fn, interval, _ = _resolve(config)
    sweep = _require(config.N, (512,))
    N = sweep[0]
    params = BadcellParams(
        epsilon=_require(config.eps, 1e-2),
        m=_require(config.m, 20),
        n=_require(config.n, 200),
        circle_samples=_require(config.circle_samples, 512),
    )
    report = detect_badcells(fn, uniform_partition(interval, N), params)
    return [
        BadcellRow(
            cell=rec.cell,
            a=rec.interval.a,
            b=rec.interval.b,
            midpoint=rec.interval.midpoint,
            min_q=rec.min_q,
            argmin_theta=rec.argmin_theta,
            is_badcell=int(rec.is_badcell),
            note=rec.note,
        )
        for rec in report.records
    ]


@dataclass(frozen=True)
class AdaptiveComparisonRow:
    cell_a: float
    cell_b: float
    is_badcell: int
    x: float
    abs_err_adaptive: float
    abs_err_uniform: float


@dataclass(frozen=True)
class AdaptiveDemo:
    cell_count: int
    rounds: int
    trace: dict
    comparison: list[AdaptiveComparisonRow]


def _comparison_grid(cell: Interval, points: int, singularities, collar: int = 2):
    """Matched per-cell grid; drops a two-point collar around interior jumps."""
    xs = np.linspace(cell.a, cell.b, points + 2)[1:-1]
    for sing in singularities:
        if sing.kind == "jump" and cell.a < sing.x < cell.b:
            order = np.argsort(np.abs(xs - sing.x), kind="stable")
            xs = np.sort(xs[order[collar:]])
    return xs


def run_adaptive_demo(config: ExperimentConfig) -> AdaptiveDemo:
    """Adaptive refinement trace plus pointwise error comparison against the
    uniform piecewise build, on matched grids inside the final cells."""
    fn, interval, entry = _resolve(config)
    n = _require(config.n, 100)
    m = _require(config.m, 20)
    params = AdaptiveParams(
        badcell=BadcellParams(
            epsilon=_require(config.eps, 1e-2),
            m=m,
            n=n,
            circle_samples=_require(config.circle_samples, 512),
        ),
        tau=_require(config.tau, 1.0 / 256.0),
        max_rounds=_require(config.max_rounds, 40),
    )
    N_ref = _require(config.N, (512,))[0]
    run = adaptive_run(fn, interval, params, n)
    reference = build_pipct(
        fn, uniform_partition(interval, N_ref), DegreePlan.uniform(N_ref, m, m), n
    )
    singularities = entry.singularities if entry is not None else ()
    points = _require(config.profile_points_per_cell, 400)

    comparison = []
    for j in range(run.partition.num_cells):
        cell = run.partition.cell(j)
        xs = _comparison_grid(cell, points, singularities)
        fx = np.asarray(fn(xs))
        a_vals, a_pole = _eval_pw_masked(run.approximant, xs)
        u_vals, u_pole = _eval_pw_masked(reference, xs)
        a_err = np.where(a_pole, np.inf, np.abs(fx - a_vals))
        u_err = np.where(u_pole, np.inf, np.abs(fx - u_vals))
        flagged = int(run.report.records[j].is_badcell)
        for x, ea, eu in zip(xs, a_err, u_err):
            comparison.append(
                AdaptiveComparisonRow(cell.a, cell.b, flagged, float(x), float(ea), float(eu))
            )
    return AdaptiveDemo(
        cell_count=run.partition.num_cells,
        rounds=len(run.trace),
        trace=run.trace_to_dict(),
        comparison=comparison,
    )


def _eval_pw_masked(approx, xs):
    idx = approx.partition.locate(xs)
    vals = np.empty_like(xs)
    pole = np.zeros(xs.shape, dtype=bool)
    for j in np.unique(idx):
        mask = idx == j
        piece = approx.pieces[j]
        if piece is None:
            vals[mask] = np.nan
            pole[mask] = True
            continue
        v, p = evaluate_pct_masked(piece, xs[mask])
        vals[mask] = v
        pole[mask] = p
    return vals, pole


@dataclass(frozen=True)
class DegreeSweepRow:
    N: int
    placement: str
    n_p: int
    singularity: float
    kind: str
    max_vicinity_error: float


def run_degree_sweep(config: ExperimentConfig) -> list[DegreeSweepRow]:
    """Max vicinity error for numerator degrees n_p in {n_q, n, 2n - n_q - 1}.

    Windows are +-``vicinity_half_width`` around each singularity with a
    two-grid-point collar at jumps.
    """
    fn, interval, entry = _resolve(config)
    if entry is None or not entry.singularities:
        raise ConfigError("degree sweep needs a registry function with singularities")
    sweep = _require(config.N, (104, 208, 312, 416))
    n = _require(config.n, 200)
    n_q = _require(config.nq, _require(config.m, 20))
    half = _require(config.vicinity_half_width, 0.05)
    points = 801

    placements = (("np=nq", n_q), ("np=n", n), ("np=2n-nq-1", 2 * n - n_q - 1))
    rows = []
    for N in sweep:
        partition = uniform_partition(interval, N)
        for label, n_p in placements:
            with warnings.catch_warnings():
                # the two high placements probe the aliased regime on purpose
                warnings.filterwarnings("ignore", message=".*aliased.*")
                approx = build_pipct(fn, partition, DegreePlan.uniform(N, n_p, n_q), n)
            for sing in entry.singularities:
                xs = np.linspace(sing.x - half, sing.x + half, points)
                xs = xs[(xs >= interval.a) & (xs <= interval.b)]
                if sing.kind == "jump":
                    order = np.argsort(np.abs(xs - sing.x), kind="stable")
                    xs = np.sort(xs[order[2:]])
                vals, pole = _eval_pw_masked(approx, xs)
                err = np.where(pole, np.inf, np.abs(np.asarray(fn(xs)) - vals))
                rows.append(
                    DegreeSweepRow(N, label, n_p, sing.x, sing.kind, float(np.max(err)))
                )
    return rows


@dataclass(frozen=True)
class PoleRow:
    cell: int
    re: float
    im: float
    residue_magnitude: float
    nearest_zero_distance: float
    spurious: int


def run_poles(config: ExperimentConfig) -> list[PoleRow]:
    """Pole/zero classification for every cell of a uniform piecewise build."""
    fn, interval, _ = _resolve(config)
    N = _require(config.N, (32,))[0]
    n = _require(config.n, 200)
    n_p = _require(config.np, 20)
    n_q = _require(config.nq, 20)
    partition = uniform_partition(interval, N)
    rows = []
    for j in range(partition.num_cells):
        piece = build_pct(fn, partition.cell(j), n, n_p, n_q)
        report = classify_froissart(
            piece,
            residue_tol=config.residue_tol,
            pair_tol=_require(config.pair_tol, 1e-8),
            cell=j,
        )
        rows.extend(PoleRow(*row) for row in pole_report_rows(report))
    return rows


@dataclass(frozen=True)
class TimingRow:
    N: int
    pipct_seconds: float
    apipct_seconds: float


def run_timing(config: ExperimentConfig) -> list[TimingRow]:
    """Median wall-clock build times: uniform piecewise vs adaptive (tau = (b-a)/N)."""
    fn, interval, _ = _resolve(config)
    sweep = _require(config.N, (104, 208, 312, 416))
    n = _require(config.n, 100)
    m = _require(config.m, 20)
    eps = _require(config.eps, 1e-2)
    repeats = max(_require(config.repeats, 3), 3)

    rows = []
    for N in sweep:
        partition = uniform_partition(interval, N)
        plan = DegreePlan.uniform(N, m, m)
        pipct_times = []
        apipct_times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            build_pipct(fn, partition, plan, n)
            pipct_times.append(time.perf_counter() - t0)
            params = AdaptiveParams(
                badcell=BadcellParams(epsilon=eps, m=m, n=n),
                tau=interval.width / N,
                max_rounds=_require(config.max_rounds, 40),
            )
            t0 = time.perf_counter()
            adaptive_run(fn, interval, params, n)
            apipct_times.append(time.perf_counter() - t0)
        rows.append(
            TimingRow(N, float(np.median(pipct_times)), float(np.median(apipct_times)))
        )
    return rows
