"""Named test functions, piecewise expression specs, and sampled-data specs.

Registry entries carry the smoothness metadata (order k whose derivative has
bounded variation, the variation norm, singularity locations) used by the
bound oracles and the vicinity-window error reports.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..chebyshev import Interval
from ..errors import ConfigError
from .expressions import Expression


@dataclass(frozen=True)
class Singularity:
    x: float
    kind: str  # "jump" or "kink"


class PiecewiseExpression:
    """Expressions on sub-intervals tiling a domain (half-open cells, last closed)."""

    def __init__(self, pieces: Sequence[tuple[Interval, str]]):
        if not pieces:
            raise ConfigError("piecewise definition needs at least one piece")
        intervals = [iv for iv, _ in pieces]
        for left, right in zip(intervals, intervals[1:]):
            if not math.isclose(left.b, right.a, rel_tol=0, abs_tol=0):
                raise ConfigError(
                    f"sub-intervals must tile without gaps or overlap: "
                    f"[{left.a}, {left.b}] then [{right.a}, {right.b}]"
                )
        self.pieces = [(iv, Expression(text)) for iv, text in pieces]
        self.domain = Interval(intervals[0].a, intervals[-1].b)
        self._edges = np.array([iv.a for iv in intervals] + [intervals[-1].b])

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        flat = np.atleast_1d(xs)
        idx = np.clip(np.searchsorted(self._edges, flat, side="right") - 1, 0, len(self.pieces) - 1)
        out = np.empty_like(flat)
        for j, (_, expr) in enumerate(self.pieces):
            mask = idx == j
            if mask.any():
                out[mask] = expr(flat[mask])
        return float(out[0]) if xs.ndim == 0 else out


class SampledFunction:
    """Piecewise-linear interpolant of (x, y) samples loaded from a CSV file."""

    def __init__(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.size < 2 or xs.shape != ys.shape:
            raise ConfigError("sampled dataset needs matching x/y columns, length >= 2")
        order = np.argsort(xs, kind="stable")
        self.xs = xs[order]
        self.ys = ys[order]
        if np.any(np.diff(self.xs) <= 0):
            raise ConfigError("sample abscissae must be distinct")
        self.domain = Interval(float(self.xs[0]), float(self.xs[-1]))

    @classmethod
    def from_csv(cls, path) -> "SampledFunction":
        data = np.genfromtxt(path, delimiter=",", comments="#", skip_header=0)
        if data.ndim != 2 or data.shape[1] < 2:
            raise ConfigError(f"{path}: expected two numeric CSV columns")
        if np.isnan(data[0]).any():  # tolerate a header row
            data = data[1:]
        if np.isnan(data).any():
            raise ConfigError(f"{path}: non-numeric entries in data rows")
        return cls(data[:, 0], data[:, 1])

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        out = np.interp(np.atleast_1d(xs), self.xs, self.ys)
        return float(out[0]) if xs.ndim == 0 else out


@dataclass(frozen=True)
class RegistryFunction:
    name: str
    fn: Callable
    interval: Interval
    description: str
    smoothness_k: int | None = None  # order whose derivative has bounded variation
    variation: float | None = None
    singularities: tuple[Singularity, ...] = ()


def _jump_kink() -> RegistryFunction:
    fn = PiecewiseExpression(
        [
            (Interval(-1.0, -0.4), "x^3"),
            (Interval(-0.4, 0.4), "x^2 + 1"),
            (Interval(0.4, 1.0), "1.16 - (x - 0.4)^(1/2)"),
        ]
    )
    # total variation: cubic rise 0.936, jump 1.224, parabola 0.32, sqrt fall
    variation = 0.936 + 1.224 + 0.32 + math.sqrt(0.6)
    return RegistryFunction(
        name="jump_kink",
        fn=fn,
        interval=Interval(-1.0, 1.0),
        description="cubic / shifted parabola / square-root branch: one jump at "
        "x = -0.4, one non-differentiable point at x = 0.4",
        smoothness_k=0,
        variation=variation,
        singularities=(Singularity(-0.4, "jump"), Singularity(0.4, "kink")),
    )


REGISTRY: dict[str, RegistryFunction] = {
    entry.name: entry
    for entry in [
        _jump_kink(),
        RegistryFunction(
            name="x_abs_x",
            fn=Expression("x * abs(x)"),
            interval=Interval(-1.0, 1.0),
            description="x|x|: C^1 with second derivative of bounded variation",
            smoothness_k=2,
            variation=4.0,
            singularities=(Singularity(0.0, "kink"),),
        ),
        RegistryFunction(
            name="abs_x",
            fn=Expression("abs(x)"),
            interval=Interval(-1.0, 1.0),
            description="|x|: first derivative of bounded variation",
            smoothness_k=1,
            variation=2.0,
            singularities=(Singularity(0.0, "kink"),),
        ),
        RegistryFunction(
            name="sign",
            fn=Expression("sign(x)"),
            interval=Interval(-1.0, 1.0),
            description="sign(x): a single unit jump scaled to variation 2",
            smoothness_k=0,
            variation=2.0,
            singularities=(Singularity(0.0, "jump"),),
        ),
        RegistryFunction(
            name="exp",
            fn=Expression("exp(x)"),
            interval=Interval(-1.0, 1.0),
            description="entire function; analytic decay bounds apply",
        ),
        RegistryFunction(
            name="runge",
            fn=Expression("1 / (1 + 25 * x^2)"),
            interval=Interval(-1.0, 1.0),
            description="1/(1+25x^2): analytic on [-1,1], poles at +-i/5",
        ),
    ]
}


def get_function(name: str) -> RegistryFunction:
    try:
        return REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise ConfigError(f"unknown registry function {name!r} (known: {known})") from None


def resolve_function_spec(spec, base_dir=None) -> tuple[Callable, Interval, RegistryFunction | None]:
    """Turn a function-spec mapping into (callable, natural interval, registry entry).

    Accepts {"name": ...}, {"pieces": [{"interval": [a,b], "expr": ...}, ...]},
    or {"csv": path}.
    """
    if isinstance(spec, str):
        spec = {"name": spec}
    if not isinstance(spec, dict):
        raise ConfigError("function spec must be a name or a mapping")
    keys = {"name", "pieces", "csv"} & set(spec)
    if len(keys) != 1:
        raise ConfigError("function spec needs exactly one of: name, pieces, csv")
    if "name" in spec:
        entry = get_function(spec["name"])
        return entry.fn, entry.interval, entry
    if "pieces" in spec:
        try:
            pieces = [
                (Interval(float(p["interval"][0]), float(p["interval"][1])), str(p["expr"]))
                for p in spec["pieces"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed pieces spec: {exc}") from exc
        fn = PiecewiseExpression(pieces)
        return fn, fn.domain, None
    path = spec["csv"]
    if base_dir is not None and not os.path.isabs(path):
        path = os.path.join(base_dir, path)
    fn = SampledFunction.from_csv(path)
    return fn, fn.domain, None
