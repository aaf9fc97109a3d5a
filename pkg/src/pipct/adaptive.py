"""Badcell detection from near-vanishing denominators on the unit circle,
adaptive bisection refinement, and degree-adapted piecewise construction."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chebyshev import Interval
from .pade import build_pct, denominator_magnitude, denominator_min_on_circle
from .piecewise import DegreePlan, Partition, PiecewiseApproximant, build_pipct

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BadcellParams:
    """Probe parameters: threshold epsilon, probe degree m (n_p = n_q = m),
    circle scan resolution, and quadrature node count n."""

    epsilon: float
    m: int
    n: int
    circle_samples: int = 512

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.circle_samples < 64:
            raise ValueError("circle_samples must be >= 64")
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class AdaptiveParams:
    badcell: BadcellParams
    tau: float
    max_rounds: int = 40

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be > 0")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


@dataclass(frozen=True)
class BadcellRecord:
    cell: int
    interval: Interval
    min_q: float
    argmin_theta: float
    is_badcell: bool
    note: str = ""


@dataclass(frozen=True)
class BadcellReport:
    epsilon: float
    records: tuple[BadcellRecord, ...]

    @property
    def flags(self) -> np.ndarray:
        return np.array([rec.is_badcell for rec in self.records], dtype=bool)

    def flagged_cells(self) -> list[int]:
        return [rec.cell for rec in self.records if rec.is_badcell]


def _refined_circle_min(piece, samples: int) -> tuple[float, float]:
    """Uniform scan plus one golden-section pass around the discrete minimum."""
    mag, theta = denominator_min_on_circle(piece, samples)
    step = math.pi / (samples - 1)
    lo = max(0.0, theta - step)
    hi = min(math.pi, theta + step)
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc = denominator_magnitude(piece, c)
    fd = denominator_magnitude(piece, d)
    for _ in range(40):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = denominator_magnitude(piece, c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = denominator_magnitude(piece, d)
    if fc < mag:
        mag, theta = float(fc), float(c)
    if fd < mag:
        mag, theta = float(fd), float(d)
    return mag, theta


def probe_cell(f: Callable, cell: Interval, params: BadcellParams) -> BadcellRecord:
    """Build the [m/m] probe on one cell and measure its circle minimum."""
    try:
        piece = build_pct(f, cell, params.n, params.m, params.m)
    except Exception as exc:  # noqa: BLE001 - construction failure flags the cell
        return BadcellRecord(
            cell=-1,
            interval=cell,
            min_q=0.0,
            argmin_theta=float("nan"),
            is_badcell=True,
            note=f"construction failed: {exc}",
        )
    mag, theta = _refined_circle_min(piece, params.circle_samples)
    note = ""
    if piece.kernel_dim > 1:
        note = f"degenerate probe (nullspace dim {piece.kernel_dim})"
    return BadcellRecord(
        cell=-1,
        interval=cell,
        min_q=mag,
        argmin_theta=theta,
        is_badcell=bool(mag < params.epsilon),
        note=note,
    )


def detect_badcells(f: Callable, partition: Partition, params: BadcellParams) -> BadcellReport:
    """Flag every cell whose probe denominator dips below epsilon on the circle.

    The reference-interval constraint on Re(z) covers all of [-1, 1], so the
    flag depends only on the global circle minimum.  Cells whose probe
    construction fails are conservatively flagged.
    """
    records = []
    for j in range(partition.num_cells):
        rec = probe_cell(f, partition.cell(j), params)
        records.append(
            BadcellRecord(
                cell=j,
                interval=rec.interval,
                min_q=rec.min_q,
                argmin_theta=rec.argmin_theta,
                is_badcell=rec.is_badcell,
                note=rec.note,
            )
        )
    return BadcellReport(epsilon=params.epsilon, records=tuple(records))


@dataclass(frozen=True)
class RefinementRound:
    """One round of the refinement trace."""

    round_index: int
    breakpoints_before: tuple[float, ...]
    probes: tuple[BadcellRecord, ...]
    breakpoints_after: tuple[float, ...]
    min_width: float
    stopped: str = ""

    def to_dict(self) -> dict:
        return {
            "round": self.round_index,
            "breakpoints_before": list(self.breakpoints_before),
            "probes": [
                {
                    "interval": [rec.interval.a, rec.interval.b],
                    "min_q": rec.min_q,
                    "argmin_theta": rec.argmin_theta,
                    "is_badcell": rec.is_badcell,
                    "note": rec.note,
                }
                for rec in self.probes
            ],
            "breakpoints_after": list(self.breakpoints_after),
            "min_width": self.min_width,
            "stopped": self.stopped,
        }


def refine_with_trace(
    f: Callable, interval: Interval, params: AdaptiveParams
) -> tuple[Partition, list[RefinementRound]]:
    """Adaptive bisection refinement with a per-round trace.

    Starts from the two-cell partition {a, (a+b)/2, b}; each round probes the
    cells descended from the previous round's badcells, bisects every badcell,
    and merges the new breakpoints.  Stops when no badcells remain, the
    minimum cell width falls below tau, or max_rounds is reached.
    """
    a, b = interval.a, interval.b
    breakpoints = [a, 0.5 * (a + b), b]
    active = [Interval(a, 0.5 * (a + b)), Interval(0.5 * (a + b), b)]
    trace: list[RefinementRound] = []
    for round_index in range(params.max_rounds):
        before = tuple(breakpoints)
        probes = tuple(probe_cell(f, cell, params.badcell) for cell in active)
        flagged = [cell for cell, rec in zip(active, probes) if rec.is_badcell]
        if not flagged:
            trace.append(
                RefinementRound(
                    round_index, before, probes, before,
                    min_width=float(np.min(np.diff(breakpoints))),
                    stopped="no badcells",
                )
            )
            break
        new_points = {cell.midpoint for cell in flagged}
        breakpoints = sorted(set(breakpoints) | new_points)
        min_width = float(np.min(np.diff(breakpoints)))
        stopped = ""
        if min_width < params.tau:
            stopped = "min cell width below tau"
        elif round_index == params.max_rounds - 1:
            stopped = "max rounds reached"
        trace.append(
            RefinementRound(
                round_index, before, probes, tuple(breakpoints), min_width, stopped
            )
        )
        if stopped:
            break
        active = [
            half
            for cell in flagged
            for half in (
                Interval(cell.a, cell.midpoint),
                Interval(cell.midpoint, cell.b),
            )
        ]
    return Partition(np.array(breakpoints)), trace


def refine_partition(f: Callable, interval: Interval, params: AdaptiveParams) -> Partition:
    """Adaptive partition from badcell bisection (trace discarded)."""
    partition, _ = refine_with_trace(f, interval, params)
    return partition


@dataclass(frozen=True)
class AdaptiveRun:
    """Full adaptive pipeline output: partition, final badcell report,
    degree plan, approximant, and the refinement trace."""

    approximant: PiecewiseApproximant
    partition: Partition
    report: BadcellReport
    plan: DegreePlan
    trace: tuple[RefinementRound, ...]

    def trace_to_dict(self) -> dict:
        return {
            "rounds": [r.to_dict() for r in self.trace],
            "final_breakpoints": self.partition.breakpoints.tolist(),
            "final_badcells": self.report.flagged_cells(),
        }


def adaptive_run(f: Callable, interval: Interval, params: AdaptiveParams, n: int) -> AdaptiveRun:
    """Refine, re-probe the final partition, and build the degree-adapted
    approximant: badcells get [n/m], the remaining cells [m/m]."""
    if n <= 2 * params.badcell.m:
        warnings.warn(
            f"n = {n} <= 2m = {2 * params.badcell.m}: probe degree is not small "
            "relative to the node count",
            stacklevel=2,
        )
    partition, trace = refine_with_trace(f, interval, params)
    report = detect_badcells(f, partition, params.badcell)
    m = params.badcell.m
    degrees = tuple(
        (n, m) if rec.is_badcell else (m, m) for rec in report.records
    )
    plan = DegreePlan(degrees)
    with warnings.catch_warnings():
        # badcells intentionally run at n_p = n, i.e. in the aliased regime
        warnings.filterwarnings("ignore", message=".*aliased.*")
        approximant = build_pipct(f, partition, plan, n)
    return AdaptiveRun(
        approximant=approximant,
        partition=partition,
        report=report,
        plan=plan,
        trace=tuple(trace),
    )


def build_apipct(
    f: Callable, interval: Interval, params: AdaptiveParams, n: int
) -> PiecewiseApproximant:
    """Adaptive piecewise approximant (refinement + degree adaptation)."""
    return adaptive_run(f, interval, params, n).approximant
