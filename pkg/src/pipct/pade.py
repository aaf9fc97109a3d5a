"""Pade-Chebyshev type approximants: homogeneous Toeplitz system for the
denominator, triangular product for the numerator, and evaluation as the real
part of P(z)/Q(z) on the upper unit semicircle."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chebyshev import (
    ChebyshevSeries,
    Interval,
    _sample,
    chebyshev_points,
    compute_coefficients,
    map_to_interval,
)
from .errors import PoleEvaluationError

# Singular values at or below this are treated as part of the numerical
# nullspace of the Toeplitz system.
RANK_TOL = 1e-12


@dataclass(frozen=True)
class ToeplitzSystem:
    """The n_q x (n_q + 1) homogeneous system for the denominator coefficients.

    entry(i, k) = c_{n_p + i - k} for i = 1..n_q, k = 0..n_q, with mirrored
    indices c_{-m} := c_m (cosine-series symmetry).
    """

    n_p: int
    n_q: int
    matrix: np.ndarray

    @property
    def rows(self) -> int:
        return self.n_q

    @property
    def cols(self) -> int:
        return self.n_q + 1


@dataclass(frozen=True)
class PadeChebyshevApproximant:
    """Rational approximant on an interval: Re P(z)/Q(z) with z on the unit circle.

    ``p`` and ``q`` are real ascending-power coefficient vectors of lengths
    n_p + 1 and n_q + 1; ``q`` has unit 2-norm with its largest-magnitude entry
    positive.  ``n`` is the quadrature node count of the source series.
    ``f_scale`` records max |f| over the construction nodes (used for default
    residue tolerances downstream) and ``kernel_dim`` the numerical nullspace
    dimension met during the denominator solve.
    """

    interval: Interval
    n_p: int
    n_q: int
    p: np.ndarray
    q: np.ndarray
    n: int
    f_scale: float | None = None
    kernel_dim: int = 1

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        q = np.asarray(self.q, dtype=float)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if not self.n_p >= self.n_q >= 1:
            raise ValueError("require n_p >= n_q >= 1")
        if p.shape != (self.n_p + 1,) or q.shape != (self.n_q + 1,):
            raise ValueError("coefficient vector lengths must match the degrees")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(q))):
            raise ValueError("coefficients must be finite")
        if not np.isclose(np.linalg.norm(q), 1.0, rtol=0, atol=1e-8):
            raise ValueError("q must have unit 2-norm")


def build_toeplitz(series: ChebyshevSeries, n_p: int, n_q: int) -> ToeplitzSystem:
    """Assemble the homogeneous Toeplitz system from a coefficient series."""
    if not n_p >= n_q >= 1:
        raise ValueError("require n_p >= n_q >= 1")
    needed = n_p + n_q
    if series.degree < needed:
        raise ValueError(
            f"series holds coefficients up to index {series.degree}, "
            f"need {needed} for [{n_p}/{n_q}]"
        )
    i = np.arange(1, n_q + 1)
    k = np.arange(n_q + 1)
    idx = n_p + i[:, None] - k[None, :]
    matrix = series.coeffs[np.abs(idx)]
    return ToeplitzSystem(n_p=n_p, n_q=n_q, matrix=matrix)


def solve_denominator(system: ToeplitzSystem) -> np.ndarray:
    """Unit 2-norm vector in the numerical nullspace of the Toeplitz system.

    The rectangular system always has an exact kernel direction (one more
    column than rows).  Singular values <= RANK_TOL are treated as part of the
    nullspace; the canonical representative is the normalized projection of
    e_0 onto that subspace, which reduces to the smallest-singular-value right
    vector whenever the nullspace is one-dimensional and keeps numerically
    polynomial series at Q = 1.  The sign is fixed so the largest-magnitude
    entry is positive.
    """
    A = system.matrix
    if not np.all(np.isfinite(A)):
        raise ValueError("Toeplitz system has non-finite entries")
    _, s, vh = np.linalg.svd(A)
    null_rows = [j for j in range(system.rows) if s[j] <= RANK_TOL]
    null_rows.append(system.cols - 1)  # the exact kernel direction
    basis = vh[null_rows]
    proj = basis.T @ basis[:, 0]
    norm = np.linalg.norm(proj)
    q = proj / norm if norm > 1e-8 else vh[system.cols - 1]
    jmax = int(np.argmax(np.abs(q)))
    if q[jmax] < 0:
        q = -q
    return q


def toeplitz_singular_values(system: ToeplitzSystem) -> np.ndarray:
    """Singular values of the system matrix (descending)."""
    return np.linalg.svd(system.matrix, compute_uv=False)


def compute_numerator(series: ChebyshevSeries, q: np.ndarray, n_p: int, n_q: int) -> np.ndarray:
    """Numerator coefficients p_i = sum_k c*_{i-k} q_k with the halved head
    c*_0 = c_0 / 2 and the upper triangle zero."""
    q = np.asarray(q, dtype=float)
    if q.shape != (n_q + 1,):
        raise ValueError(f"q must have length n_q + 1 = {n_q + 1}")
    if series.degree < n_p:
        raise ValueError(f"series holds coefficients up to {series.degree}, need {n_p}")
    cs = series.coeffs.copy()
    cs[0] *= 0.5
    p = np.zeros(n_p + 1)
    for i in range(n_p + 1):
        k = np.arange(min(i, n_q) + 1)
        p[i] = cs[i - k] @ q[k]
    return p


def build_pct(
    f: Callable, interval: Interval, n: int, n_p: int, n_q: int
) -> PadeChebyshevApproximant:
    """Construct the [n_p/n_q] Pade-Chebyshev type approximant of f on an interval."""
    if not n_p >= n_q >= 1:
        raise ValueError("require n_p >= n_q >= 1")
    if n < n_p + n_q + 1:
        warnings.warn(
            f"n = {n} < n_p + n_q + 1 = {n_p + n_q + 1}: coefficients are aliased",
            stacklevel=2,
        )
    series = compute_coefficients(f, interval, n, n_p + n_q)
    system = build_toeplitz(series, n_p, n_q)
    s = toeplitz_singular_values(system)
    q = solve_denominator(system)
    p = compute_numerator(series, q, n_p, n_q)
    xs = map_to_interval(interval, chebyshev_points(n))
    f_scale = float(np.max(np.abs(_sample(f, xs))))
    kernel_dim = int(np.sum(s <= RANK_TOL)) + 1
    return PadeChebyshevApproximant(
        interval=interval,
        n_p=n_p,
        n_q=n_q,
        p=p,
        q=q,
        n=n,
        f_scale=f_scale,
        kernel_dim=kernel_dim,
    )


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def evaluate_pct_masked(r: PadeChebyshevApproximant, x) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate at an array of points, returning (values, pole_mask).

    Points where |Q(z)| underflows are masked instead of raising; masked
    entries hold NaN.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs < r.interval.a) or np.any(xs > r.interval.b):
        raise ValueError("x outside the approximant interval")
    y = np.clip(r.interval.to_reference(xs), -1.0, 1.0)
    z = np.exp(1j * np.arccos(y))
    pz = _horner(r.p.astype(complex), z)
    qz = _horner(r.q.astype(complex), z)
    pole = np.abs(qz) < 1e-300
    vals = np.empty_like(xs)
    vals[~pole] = (pz[~pole] / qz[~pole]).real
    vals[pole] = np.nan
    return vals, pole


def evaluate_pct(r: PadeChebyshevApproximant, x):
    """Evaluate Re P(z)/Q(z) at x in the host interval (scalar or array).

    Raises PoleEvaluationError if the denominator vanishes at any point.
    """
    vals, pole = evaluate_pct_masked(r, x)
    if np.any(pole):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        bad = float(xs[np.argmax(pole)])
        raise PoleEvaluationError(f"denominator vanishes at x={bad!r}", x=bad)
    return float(vals[0]) if np.ndim(x) == 0 else vals


def denominator_min_on_circle(
    r: PadeChebyshevApproximant, samples: int
) -> tuple[float, float]:
    """Minimum of |Q(e^{i theta})| over theta in [0, pi] on a uniform scan.

    Real coefficients make |Q| symmetric under conjugation, so the upper
    semicircle suffices.  Returns (min magnitude, argmin theta).
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    theta = np.linspace(0.0, np.pi, samples)
    mags = np.abs(_horner(r.q.astype(complex), np.exp(1j * theta)))
    j = int(np.argmin(mags))
    return float(mags[j]), float(theta[j])


def denominator_magnitude(r: PadeChebyshevApproximant, theta) -> np.ndarray:
    """|Q(e^{i theta})| at the given angles."""
    th = np.asarray(theta, dtype=float)
    out = np.abs(_horner(r.q.astype(complex), np.exp(1j * th)))
    return float(out) if out.ndim == 0 else out
