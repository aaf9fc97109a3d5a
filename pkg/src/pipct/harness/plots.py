"""Figure rendering for the report path: each runner's CSV gets a companion
PNG drawn from the same rows."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, png_path):
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def plot_error_table(rows, png_path, title):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ns = [r.N for r in rows]
    ax.loglog(ns, [r.cheb_error for r in rows], "o-", label="piecewise Chebyshev")
    ax.loglog(ns, [r.pipct_error for r in rows], "s-", label="piecewise Pade-Chebyshev")
    ax.set_xlabel("N (cells)")
    ax.set_ylabel("L1 error")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    _save(fig, png_path)


def plot_profile(rows, png_path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for N in sorted({r.N for r in rows}):
        series = [r for r in rows if r.N == N]
        xs = [r.x_peak for r in series]
        es = [max(r.peak_error, 1e-18) for r in series]
        ax.semilogy(xs, es, ".-", markersize=3, linewidth=0.7, label=f"N={N}")
    ax.set_xlabel("x")
    ax.set_ylabel("peak |f - R| per cell")
    ax.set_title("pointwise error peaks")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    _save(fig, png_path)


def plot_badcells(rows, png_path, epsilon):
    fig, ax = plt.subplots(figsize=(7, 4))
    mids = [r.midpoint for r in rows]
    mags = [max(r.min_q, 1e-18) for r in rows]
    flagged = np.array([bool(r.is_badcell) for r in rows])
    mids = np.array(mids)
    mags = np.array(mags)
    ax.semilogy(mids[~flagged], mags[~flagged], ".", color="tab:blue", label="clean")
    if flagged.any():
        ax.semilogy(mids[flagged], mags[flagged], "o", color="tab:red", label="badcell")
    ax.axhline(epsilon, color="k", linestyle="--", linewidth=0.8, label="epsilon")
    ax.set_xlabel("cell midpoint")
    ax.set_ylabel("min |Q| on circle")
    ax.set_title("badcell detection")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    _save(fig, png_path)


def plot_adaptive(demo, png_path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = np.array([r.x for r in demo.comparison])
    ad = np.array([max(r.abs_err_adaptive, 1e-18) for r in demo.comparison])
    un = np.array([max(r.abs_err_uniform, 1e-18) for r in demo.comparison])
    ax.semilogy(xs, un, ".", markersize=2, label="uniform piecewise")
    ax.semilogy(xs, ad, ".", markersize=2, label="adaptive")
    ax.set_xlabel("x")
    ax.set_ylabel("|f - R|")
    ax.set_title(f"adaptive vs uniform ({demo.cell_count} adaptive cells)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    _save(fig, png_path)


def plot_degree_sweep(rows, png_path):
    kinds = sorted({(r.singularity, r.kind) for r in rows})
    fig, axes = plt.subplots(1, len(kinds), figsize=(6 * len(kinds), 4.2), squeeze=False)
    for ax, (x0, kind) in zip(axes[0], kinds):
        for N in sorted({r.N for r in rows}):
            series = sorted(
                (r for r in rows if r.N == N and r.singularity == x0), key=lambda r: r.n_p
            )
            ax.semilogy(
                [r.n_p for r in series],
                [max(r.max_vicinity_error, 1e-18) for r in series],
                "o-",
                label=f"N={N}",
            )
        ax.set_xlabel("numerator degree n_p")
        ax.set_ylabel("max vicinity error")
        ax.set_title(f"{kind} at x={x0:g}")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
    _save(fig, png_path)


def plot_poles(rows, png_path):
    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    theta = np.linspace(0, 2 * np.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), "k-", linewidth=0.7)
    spurious = [r for r in rows if r.spurious]
    genuine = [r for r in rows if not r.spurious]
    if genuine:
        ax.plot([r.re for r in genuine], [r.im for r in genuine], "o",
                color="tab:blue", label="genuine")
    if spurious:
        ax.plot([r.re for r in spurious], [r.im for r in spurious], "o",
                color="tab:pink", label="spurious")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("denominator roots")
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    ax.legend()
    _save(fig, png_path)


def plot_timing(rows, png_path):
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ns = [r.N for r in rows]
    ax.plot(ns, [r.pipct_seconds for r in rows], "o-", label="uniform piecewise")
    ax.plot(ns, [r.apipct_seconds for r in rows], "s-", label="adaptive")
    ax.set_xlabel("N")
    ax.set_ylabel("build time [s]")
    ax.set_title("build time comparison")
    ax.grid(True, alpha=0.3)
    ax.legend()
    _save(fig, png_path)
