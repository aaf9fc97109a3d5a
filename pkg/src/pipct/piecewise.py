"""Partitions, piecewise Pade-Chebyshev assembly and evaluation, L1-error
measurement, convergence orders, and JSON round-tripping of approximants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .chebyshev import Interval, _sample
from .errors import CellConstructionError, PoleEvaluationError
from .pade import PadeChebyshevApproximant, build_pct, evaluate_pct_masked


@dataclass(frozen=True)
class Partition:
    """Strictly increasing breakpoints a_0 < ... < a_N.

    Cell j is [a_j, a_{j+1}) for j < N - 1; the last cell is closed.
    """

    breakpoints: np.ndarray

    def __post_init__(self):
        bps = np.asarray(self.breakpoints, dtype=float)
        object.__setattr__(self, "breakpoints", bps)
        if bps.ndim != 1 or bps.size < 2:
            raise ValueError("need at least two breakpoints")
        if not np.all(np.diff(bps) > 0):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def num_cells(self) -> int:
        return self.breakpoints.size - 1

    @property
    def interval(self) -> Interval:
        return Interval(float(self.breakpoints[0]), float(self.breakpoints[-1]))

    def cell(self, j: int) -> Interval:
        if not 0 <= j < self.num_cells:
            raise IndexError(f"cell index {j} out of range")
        return Interval(float(self.breakpoints[j]), float(self.breakpoints[j + 1]))

    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def locate(self, x) -> np.ndarray:
        """Cell index for each x (half-open cells, last cell closed)."""
        xs = np.asarray(x, dtype=float)
        if np.any(xs < self.breakpoints[0]) or np.any(xs > self.breakpoints[-1]):
            raise ValueError("x outside the partitioned interval")
        idx = np.searchsorted(self.breakpoints, xs, side="right") - 1
        idx = np.clip(idx, 0, self.num_cells - 1)
        return int(idx) if idx.ndim == 0 else idx


def uniform_partition(interval: Interval, n_cells: int) -> Partition:
    """N equal-width cells covering the interval."""
    if n_cells < 1:
        raise ValueError("N must be >= 1")
    return Partition(np.linspace(interval.a, interval.b, n_cells + 1))


@dataclass(frozen=True)
class DegreePlan:
    """Per-cell (n_p, n_q) degree assignments."""

    degrees: tuple[tuple[int, int], ...]

    def __post_init__(self):
        degs = tuple((int(a), int(b)) for a, b in self.degrees)
        object.__setattr__(self, "degrees", degs)
        for j, (n_p, n_q) in enumerate(degs):
            if not n_p >= n_q >= 1:
                raise ValueError(f"cell {j}: require n_p >= n_q >= 1, got [{n_p}/{n_q}]")

    @classmethod
    def uniform(cls, n_cells: int, n_p: int, n_q: int) -> "DegreePlan":
        return cls(tuple((n_p, n_q) for _ in range(n_cells)))

    def __len__(self) -> int:
        return len(self.degrees)

    def __getitem__(self, j: int) -> tuple[int, int]:
        return self.degrees[j]


@dataclass(frozen=True)
class PiecewiseApproximant:
    """One Pade-Chebyshev approximant per partition cell, evaluable on [a, b].

    Cells whose construction failed hold None; ``failures`` lists
    (cell index, message) pairs for them.
    """

    partition: Partition
    pieces: tuple
    n: int
    failures: tuple = ()

    def __post_init__(self):
        if len(self.pieces) != self.partition.num_cells:
            raise ValueError("need one piece per cell")

    @property
    def interval(self) -> Interval:
        return self.partition.interval


def build_pipct(
    f: Callable, partition: Partition, plan: DegreePlan, n: int
) -> PiecewiseApproximant:
    """Build the piecewise approximant cell by cell.

    Per-cell failures do not abort the build; they are collected with their
    cell indices so the adaptive layer can react.
    """
    if len(plan) != partition.num_cells:
        raise ValueError("degree plan length must equal the cell count")
    pieces = []
    failures = []
    for j in range(partition.num_cells):
        n_p, n_q = plan[j]
        try:
            pieces.append(build_pct(f, partition.cell(j), n, n_p, n_q))
        except Exception as exc:  # noqa: BLE001 - collected and reported per cell
            pieces.append(None)
            failures.append((j, str(exc)))
    return PiecewiseApproximant(
        partition=partition, pieces=tuple(pieces), n=n, failures=tuple(failures)
    )


def evaluate_piecewise(r: PiecewiseApproximant, x):
    """Evaluate f(x) via the cell containing x (binary search, last cell closed)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    idx = np.atleast_1d(r.partition.locate(xs))
    out = np.empty_like(xs)
    for j in np.unique(idx):
        piece = r.pieces[j]
        if piece is None:
            raise CellConstructionError(f"cell {j} has no approximant", cell=int(j))
        mask = idx == j
        vals, pole = evaluate_pct_masked(piece, xs[mask])
        if np.any(pole):
            bad = float(xs[mask][np.argmax(pole)])
            raise PoleEvaluationError(f"denominator vanishes at x={bad!r}", x=bad)
        out[mask] = vals
    return float(out[0]) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class L1ErrorReport:
    value: float
    pole_samples: int


def _l1_error_cells(
    partition: Partition,
    cell_values: Callable[[int, np.ndarray], tuple[np.ndarray, np.ndarray]],
    f: Callable,
    region: Interval,
    samples_per_cell: int,
) -> L1ErrorReport:
    """Composite midpoint quadrature of |f - approximant| over ``region``,
    cell-aligned so no panel straddles a breakpoint.

    ``cell_values(j, xs)`` returns (values, pole_mask) for cell j.  Pole
    samples contribute |f| locally and are tallied.
    """
    total = 0.0
    poles = 0
    for j in range(partition.num_cells):
        cell = partition.cell(j)
        lo = max(cell.a, region.a)
        hi = min(cell.b, region.b)
        if hi <= lo:
            continue
        h = (hi - lo) / samples_per_cell
        xm = lo + (np.arange(samples_per_cell) + 0.5) * h
        fx = _sample(f, xm)
        vals, pole = cell_values(j, xm)
        err = np.abs(fx - vals)
        if np.any(pole):
            err[pole] = np.abs(fx[pole])
            poles += int(np.sum(pole))
        total += h * float(np.sum(err))
    return L1ErrorReport(value=total, pole_samples=poles)


def l1_error_report(
    r: PiecewiseApproximant, f: Callable, region: Interval, samples_per_cell: int = 2048
) -> L1ErrorReport:
    if samples_per_cell < 16:
        raise ValueError("samples_per_cell must be >= 16")
    interval = r.interval
    if region.a < interval.a or region.b > interval.b:
        raise ValueError("region must lie within the approximated interval")

    def cell_values(j, xs):
        piece = r.pieces[j]
        if piece is None:
            raise CellConstructionError(f"cell {j} has no approximant", cell=j)
        return evaluate_pct_masked(piece, xs)

    return _l1_error_cells(r.partition, cell_values, f, region, samples_per_cell)


def l1_error(
    r: PiecewiseApproximant, f: Callable, region: Interval, samples_per_cell: int = 2048
) -> float:
    """L1 error of the approximant against f over a region (midpoint rule)."""
    return l1_error_report(r, f, region, samples_per_cell).value


def convergence_order(errors: Sequence[tuple[float, float]]) -> list[float]:
    """Orders log(e_i / e_{i+1}) / log(N_{i+1} / N_i) between consecutive rows."""
    if len(errors) < 2:
        raise ValueError("need at least two (N, error) pairs")
    ns = [float(n) for n, _ in errors]
    es = [float(e) for _, e in errors]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("N values must be strictly increasing")
    if any(e <= 0 for e in es):
        raise ValueError("errors must be positive")
    return [
        float(np.log(es[i] / es[i + 1]) / np.log(ns[i + 1] / ns[i]))
        for i in range(len(errors) - 1)
    ]


# --- JSON serialization -----------------------------------------------------
#
# Schema (informal; shipped with the package docs):
# {
#   "format": "pipct-approximant", "version": 1,
#   "interval": [a, b], "n": int, "breakpoints": [floats],
#   "pieces": [{"np": int, "nq": int, "p": [floats], "q": [floats],
#               "f_scale": float|null, "kernel_dim": int} | null, ...]
# }
# Floats round-trip exactly: json emits shortest repr, which CPython parses
# back to the identical double.

FORMAT_NAME = "pipct-approximant"
FORMAT_VERSION = 1


def approximant_to_dict(r: PiecewiseApproximant) -> dict:
    pieces = []
    for piece in r.pieces:
        if piece is None:
            pieces.append(None)
            continue
        pieces.append(
            {
                "np": piece.n_p,
                "nq": piece.n_q,
                "p": piece.p.tolist(),
                "q": piece.q.tolist(),
                "f_scale": piece.f_scale,
                "kernel_dim": piece.kernel_dim,
            }
        )
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "interval": [r.interval.a, r.interval.b],
        "n": r.n,
        "breakpoints": r.partition.breakpoints.tolist(),
        "pieces": pieces,
        "failures": [list(fail) for fail in r.failures],
    }


def approximant_from_dict(doc: dict) -> PiecewiseApproximant:
    if doc.get("format") != FORMAT_NAME:
        raise ValueError(f"not a {FORMAT_NAME} document")
    partition = Partition(np.array(doc["breakpoints"], dtype=float))
    pieces = []
    for j, rec in enumerate(doc["pieces"]):
        if rec is None:
            pieces.append(None)
            continue
        pieces.append(
            PadeChebyshevApproximant(
                interval=partition.cell(j),
                n_p=int(rec["np"]),
                n_q=int(rec["nq"]),
                p=np.array(rec["p"], dtype=float),
                q=np.array(rec["q"], dtype=float),
                n=int(doc["n"]),
                f_scale=rec.get("f_scale"),
                kernel_dim=int(rec.get("kernel_dim", 1)),
            )
        )
    failures = tuple((int(j), str(msg)) for j, msg in doc.get("failures", []))
    return PiecewiseApproximant(
        partition=partition, pieces=tuple(pieces), n=int(doc["n"]), failures=failures
    )


def save_approximant(r: PiecewiseApproximant, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(approximant_to_dict(r), fh)


def load_approximant(path) -> PiecewiseApproximant:
    with open(path, encoding="utf-8") as fh:
        return approximant_from_dict(json.load(fh))
