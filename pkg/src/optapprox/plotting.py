"""Figure rendering for report commands.

Each helper draws one figure from already-computed report data and
writes it straight to a file (Agg backend, no display).  The CLI wires
these behind --plot so every delimited table can ship with a picture.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGSIZE = (6.4, 4.2)
DPI = 150


def _finish(fig, ax, path, title):
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def save_distance_plot(entries, path, alpha, title="squared distance vs degree"):
    """Log-log decay of ||p*_n f - 1||^2 from a profile or cyclicity report."""
    ns = [e.n for e in entries if e.n >= 1 and e.dist_sq > 0]
    ds = [e.dist_sq for e in entries if e.n >= 1 and e.dist_sq > 0]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if ns:
        ax.loglog(ns, ds, marker=".", lw=1.0, label=f"alpha = {alpha:g}")
        ax.legend()
    ax.set_xlabel("degree n")
    ax.set_ylabel("squared distance")
    return _finish(fig, ax, path, title)


def save_zero_plot(zeros, bound, path, title="approximant zeros"):
    """Zero set in the plane with the unit circle and the modulus bound."""
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    t = np.linspace(0.0, 2.0 * np.pi, 361)
    ax.plot(np.cos(t), np.sin(t), color="gray", lw=0.8, label="unit circle")
    if bound != 1.0:
        ax.plot(bound * np.cos(t), bound * np.sin(t), color="tab:red", lw=0.8, ls="--", label="modulus bound")
    zs = np.asarray(zeros, dtype=complex)
    if zs.size:
        ax.plot(zs.real, zs.imag, "x", color="tab:blue", ms=7, label="zeros")
    ax.axhline(0.0, color="gray", lw=0.4)
    ax.axvline(0.0, color="gray", lw=0.4)
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    return _finish(fig, ax, path, title)


def save_telescope_plot(entries, target, path, title="telescoping zero-product"):
    """Running partial products against the cyclicity target level."""
    ns = [e.n for e in entries if e.partial_product is not None]
    ps = [e.partial_product for e in entries if e.partial_product is not None]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if ns:
        ax.plot(ns, ps, lw=1.2, label="partial product")
    ax.axhline(target.real, color="tab:red", ls="--", lw=1.0, label="target")
    ax.set_xlabel("max degree N")
    ax.set_ylabel("partial product")
    ax.legend()
    return _finish(fig, ax, path, title)


def save_sweep_plot(results, path, title="extremal quotient lower bounds"):
    """Quotient maximum per trial degree with its theoretical ceiling."""
    ns = [r.degree for r in results]
    vals = [r.quotient for r in results]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.semilogx(ns, vals, marker="o", lw=1.0, label="lower bound")
    ax.axhline(np.sqrt(2.0), color="tab:red", ls="--", lw=1.0, label="sqrt(2) ceiling")
    ax.axhline(1.0, color="gray", ls=":", lw=1.0, label="level 1")
    ax.set_xlabel("trial degree N")
    ax.set_ylabel("quotient")
    ax.legend()
    return _finish(fig, ax, path, title)
