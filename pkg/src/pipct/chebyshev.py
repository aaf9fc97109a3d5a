"""First-kind Chebyshev machinery: nodes, quadrature coefficients, series
evaluation, interval maps, and the coefficient-decay / truncation-error bounds
used as oracles by the test suite."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EvaluationError


@dataclass(frozen=True)
class Interval:
    """A bounded interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("interval endpoints must be finite")
        if not self.a < self.b:
            raise ValueError(f"require a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def contains(self, x) -> bool:
        return bool(np.all((np.asarray(x) >= self.a) & (np.asarray(x) <= self.b)))

    def to_reference(self, x):
        """Affine pullback [a,b] -> [-1,1]."""
        return 2.0 * (np.asarray(x, dtype=float) - self.a) / self.width - 1.0


@dataclass(frozen=True)
class ChebyshevSeries:
    """Quadrature-approximated Chebyshev coefficients on an interval.

    ``coeffs[k]`` holds the raw coefficient of T_k; the k = 0 entry is stored
    unhalved and the halving convention is applied by the evaluator.  ``n`` is
    the quadrature node count used to approximate the coefficients.
    """

    interval: Interval
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", coeffs)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValueError("coeffs must be a non-empty 1-d vector")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coeffs must be finite")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1


@dataclass(frozen=True)
class DecayBoundParams:
    """Inputs for the bounded-variation coefficient decay bound.

    ``k`` is the smoothness order (the k-th derivative has bounded variation)
    and ``v_k`` the corresponding variation norm, supplied by the caller.
    """

    k: int
    v_k: float
    interval: Interval

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.v_k < 0:
            raise ValueError("v_k must be >= 0")


@dataclass(frozen=True)
class AnalyticBoundParams:
    """Bernstein-ellipse parameters for the analytic decay bound."""

    rho: float
    c: float

    def __post_init__(self):
        if not self.rho > 1:
            raise ValueError("rho must be > 1")
        if not self.c > 0:
            raise ValueError("c must be > 0")


def chebyshev_points(n: int) -> np.ndarray:
    """First-kind Chebyshev points cos((l + 1/2) pi / n), l = 0..n-1.

    Computed in the equivalent form sin((n - 1 - 2l) pi / (2n)) so the
    symmetry x_l = -x_{n-1-l} holds exactly in floating point.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    l = np.arange(n)
    return np.sin((n - 1 - 2 * l) * (np.pi / (2 * n)))


def map_to_interval(interval: Interval, y):
    """Affine map [-1,1] -> [a,b]; y = -1 lands on a, y = +1 on b."""
    y = np.asarray(y, dtype=float)
    if np.any(y < -1.0) or np.any(y > 1.0):
        raise ValueError("y must lie in [-1, 1]")
    out = interval.a + interval.width * (y + 1.0) / 2.0
    return float(out) if out.ndim == 0 else out


def _sample(f: Callable, xs: np.ndarray) -> np.ndarray:
    """Evaluate f on an array of points, tolerating scalar-only callables."""
    try:
        vals = np.asarray(f(xs), dtype=float)
        if vals.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(f(x)) for x in xs])
    return vals


def compute_coefficients(f: Callable, interval: Interval, n: int, d: int) -> ChebyshevSeries:
    """Approximate Chebyshev coefficients c_{k,n} for k = 0..d by the n-point
    Gauss-Chebyshev quadrature, with f sampled at the mapped nodes.

    Raises EvaluationError (carrying the node) if f is non-finite at a node.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 0:
        raise ValueError("d must be >= 0")
    theta = (np.arange(n) + 0.5) * np.pi / n
    xs = map_to_interval(interval, chebyshev_points(n))
    fx = _sample(f, xs)
    if not np.all(np.isfinite(fx)):
        bad = int(np.argmin(np.isfinite(fx)))
        raise EvaluationError(
            f"function returned non-finite value at node x={xs[bad]!r}", x=float(xs[bad])
        )
    # T_k(cos theta) = cos(k theta); direct O(n d) summation is fine at desk scale
    k = np.arange(d + 1)
    coeffs = (2.0 / n) * np.cos(np.outer(k, theta)) @ fx
    return ChebyshevSeries(interval=interval, n=n, coeffs=coeffs)


def evaluate_series(series: ChebyshevSeries, x):
    """Evaluate the truncated series (first term halved) by Clenshaw recurrence."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < series.interval.a) or np.any(xs > series.interval.b):
        raise ValueError("x outside the series interval")
    y = series.interval.to_reference(xs)
    y = np.clip(y, -1.0, 1.0)
    c = series.coeffs
    if c.size == 1:
        out = np.full_like(y, 0.5 * c[0])
        return float(out) if out.ndim == 0 else out
    b_next = np.zeros_like(y)
    b_curr = np.full_like(y, c[-1])
    y2 = 2.0 * y
    for ck in c[-2:0:-1]:
        b_next, b_curr = b_curr, ck + y2 * b_curr - b_next
    out = 0.5 * c[0] + y * b_curr - b_next
    return float(out) if out.ndim == 0 else out


def coefficient_decay_bound(params: DecayBoundParams, index: int) -> float:
    """Decay bound on |c_index| for a function whose k-th derivative has
    bounded variation v_k; valid for index >= k + 1."""
    k, v_k = params.k, params.v_k
    if index <= k:
        raise ValueError(f"index must be >= k + 1 = {k + 1}")
    half_width = params.interval.width / 2.0
    s = k // 2
    if k % 2 == 0:
        prod = np.prod([index + 2 * j for j in range(-s, s + 1)], dtype=float)
        return half_width ** (2 * s + 1) * 2.0 * v_k / (math.pi * prod)
    prod = np.prod([index + 2 * j - 1 for j in range(-s, s + 2)], dtype=float)
    return half_width ** (2 * s + 2) * 2.0 * v_k / (math.pi * prod)


def analytic_decay_bound(params: AnalyticBoundParams, index: int) -> float:
    """Decay bound 2 C / rho^index for functions analytic in the rho-ellipse."""
    if index < 0:
        raise ValueError("index must be >= 0")
    return 2.0 * params.c / params.rho**index


def _prod(terms) -> float:
    out = 1.0
    for t in terms:
        out *= t
    return out


def truncation_error_bound(params: DecayBoundParams, n: int, d: int) -> float:
    """L1 truncation-error bound for the degree-d series with n-point
    coefficients, for n - 1 >= k >= 1.

    The two branches (d <= n and d > n) follow the printed formulas; for a
    fixed n the bound is minimal at d = n.
    """
    k, v_k = params.k, params.v_k
    if k < 1:
        raise ValueError("bound requires k >= 1")
    if not n - 1 >= k:
        raise ValueError("bound requires n - 1 >= k")
    if d < 0:
        raise ValueError("d must be >= 0")
    half_width = params.interval.width / 2.0
    s = k // 2
    el = d - n
    if el <= 0:
        if k % 2 == 0:
            p1 = _prod(n + el + 2 * i + 1 for i in range(-s, s))
            p2 = _prod(n + el + 2 * i + 1 for i in range(-s + 1, s + 1))
            return half_width ** (2 * s + 2) * 4.0 * v_k / (k * math.pi) * (1.0 / p1 + 1.0 / p2)
        p1 = _prod(n + el + 2 * i for i in range(-s, s + 1))
        p2 = _prod(n + el + 2 * i + 1 for i in range(-s, s + 1))
        return half_width ** (2 * s + 3) * 4.0 * v_k / (k * math.pi) * (1.0 / p1 + 1.0 / p2)
    if k % 2 == 0:
        p1 = _prod(n - el + 2 * i for i in range(-s, s))
        p2 = _prod(n - el + 2 * i for i in range(-s + 1, s + 1))
        return half_width ** (2 * s + 2) * 6.0 * v_k / (k * math.pi) * (1.0 / p1 + 1.0 / p2)
    p1 = _prod(n - el + 2 * i - 1 for i in range(-s, s + 1))
    p2 = _prod(n - el + 2 * i for i in range(-s, s + 1))
    return half_width ** (2 * s + 3) * 6.0 * v_k / (k * math.pi) * (1.0 / p1 + 1.0 / p2)
