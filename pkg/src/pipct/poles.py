"""Pole/zero location for rational approximants and Froissart-doublet
classification by residue magnitude and pole-zero pairing distance."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .pade import PadeChebyshevApproximant


def polynomial_roots(coeffs, degree: int | None = None) -> np.ndarray:
    """Roots of a real polynomial given ascending coefficients.

    Trailing coefficients at or below 1e-14 * max|coeff| are trimmed (with a
    warning when that lowers the degree); the roots are the eigenvalues of the
    companion matrix of the monic polynomial, each polished by one Newton
    step, returned in nondecreasing |root| order.
    """
    c = np.asarray(coeffs, dtype=float)
    if degree is not None:
        c = c[: degree + 1]
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        raise ValueError("all-zero polynomial has no defined roots")
    nz = np.nonzero(np.abs(c) > 1e-14 * scale)[0]
    if nz[-1] < c.size - 1:
        warnings.warn(
            f"trailing coefficients below tolerance: degree reduced to {nz[-1]}",
            stacklevel=2,
        )
    c = c[: nz[-1] + 1]
    d = c.size - 1
    if d == 0:
        return np.array([], dtype=complex)
    monic = c / c[-1]
    companion = np.zeros((d, d))
    companion[1:, :-1] = np.eye(d - 1)
    companion[:, -1] = -monic[:-1]
    roots = np.linalg.eigvals(companion)
    deriv = np.polyder(c[::-1])
    pvals = np.polyval(c[::-1], roots)
    dvals = np.polyval(deriv, roots)
    ok = np.abs(dvals) > 1e-300
    roots[ok] = roots[ok] - pvals[ok] / dvals[ok]
    return roots[np.argsort(np.abs(roots), kind="stable")]


@dataclass(frozen=True)
class PoleRecord:
    pole: complex
    residue_magnitude: float
    nearest_zero_distance: float
    spurious: bool


@dataclass(frozen=True)
class PoleReport:
    """Poles/zeros of one approximant with per-pole spuriousness flags."""

    cell: int
    poles: tuple[PoleRecord, ...]
    zeros: tuple[complex, ...]
    residue_tol: float
    pair_tol: float

    def spurious_count(self) -> int:
        return sum(rec.spurious for rec in self.poles)

    def genuine_poles(self) -> list[complex]:
        return [rec.pole for rec in self.poles if not rec.spurious]


def classify_froissart(
    r: PadeChebyshevApproximant,
    residue_tol: float | None = None,
    pair_tol: float = 1e-8,
    cell: int = 0,
) -> PoleReport:
    """Classify the approximant's poles as genuine or spurious.

    The residue at a simple pole z0 of P/Q is P(z0)/Q'(z0).  A pole is flagged
    spurious when its residue magnitude falls below ``residue_tol`` (default
    1e-10 times the recorded |f| scale) or when it lies within ``pair_tol`` of
    a zero of P; both quantities are reported so either criterion can be
    re-applied downstream.  Poles where |Q'| vanishes (repeated roots) get an
    infinite residue sentinel and are not flagged by the residue rule.
    """
    if residue_tol is None:
        residue_tol = 1e-10 * (r.f_scale if r.f_scale else 1.0)
    if residue_tol <= 0 or pair_tol <= 0:
        raise ValueError("tolerances must be positive")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # trailing-zero trims are routine here
        if np.any(r.q[1:] != 0):
            q_roots = polynomial_roots(r.q)
        else:
            q_roots = np.array([], dtype=complex)
        try:
            p_roots = polynomial_roots(r.p)
        except ValueError:
            p_roots = np.array([], dtype=complex)
        q_deriv = np.polyder(r.q[::-1].astype(float))
        dscale = max(np.max(np.abs(r.q)), 1e-300)
        records = []
        for z0 in q_roots:
            dq = np.polyval(q_deriv, z0)
            if np.abs(dq) < 1e-12 * dscale:
                residue = float("inf")
            else:
                residue = float(np.abs(np.polyval(r.p[::-1], z0) / dq))
            dist = float(np.min(np.abs(p_roots - z0))) if p_roots.size else float("inf")
            spurious = (np.isfinite(residue) and residue < residue_tol) or dist < pair_tol
            records.append(
                PoleRecord(
                    pole=complex(z0),
                    residue_magnitude=residue,
                    nearest_zero_distance=dist,
                    spurious=bool(spurious),
                )
            )
    return PoleReport(
        cell=cell,
        poles=tuple(records),
        zeros=tuple(complex(z) for z in p_roots),
        residue_tol=float(residue_tol),
        pair_tol=float(pair_tol),
    )


def pole_report_rows(report: PoleReport) -> list[tuple]:
    """Rows (cell, Re pole, Im pole, |residue|, nearest-zero distance, spurious)
    for CSV emission."""
    return [
        (
            report.cell,
            rec.pole.real,
            rec.pole.imag,
            rec.residue_magnitude,
            rec.nearest_zero_distance,
            int(rec.spurious),
        )
        for rec in report.poles
    ]
