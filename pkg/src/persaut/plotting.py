"""SVG figures: barcodes, symmetry curves and the stability comparison.

Figures are rendered off-screen with a fixed hash salt and no date
metadata, so the same data always produce the same SVG bytes.
"""

from __future__ import annotations

import io
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .io import atomic_write  # noqa: E402
from .persist import Barcode  # noqa: E402
from .symcurve import StepCurve  # noqa: E402

_STYLE = {"svg.hashsalt": "persaut", "svg.fonttype": "none", "font.size": 9}


def _save(fig, path):
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    atomic_write(path, buf.getvalue())


def _step_xy(c: StepCurve):
    xs, ys = [], []
    for a, b, v in c.intervals():
        y = math.nan if v is None else v
        xs += [a, b]
        ys += [y, y]
    return xs, ys


def plot_curves(order_curve: StepCurve, degree_curve: StepCurve | None, path: str | os.PathLike,
                title: str = ""):
    """Order curve on top, degree curve below, sharing the scale axis."""
    with plt.rc_context(_STYLE):
        rows = 2 if degree_curve is not None else 1
        fig, axes = plt.subplots(rows, 1, figsize=(6.4, 2.4 * rows), sharex=True, squeeze=False)
        ax = axes[0, 0]
        ax.plot(*_step_xy(order_curve), color="tab:orange", lw=1.2)
        ax.set_ylabel("log2 |Aut|")
        if title:
            ax.set_title(title)
        if degree_curve is not None:
            ax2 = axes[1, 0]
            ax2.plot(*_step_xy(degree_curve), color="tab:green", lw=1.2)
            ax2.set_ylabel("log2 degree")
        axes[-1, 0].set_xlabel("eps (Å)")
        for a in axes[:, 0]:
            a.set_xlim(order_curve.breakpoints[0], order_curve.end)
            a.grid(alpha=0.3, lw=0.5)
        fig.tight_layout()
        _save(fig, path)


def plot_barcode(bc: Barcode, path: str | os.PathLike, title: str = ""):
    """One horizontal bar per interval, stacked by birth; arrows mark bars that never die."""
    ths = list(bc.thresholds) if bc.thresholds else list(range(1 + max(
        [b.birth for b in bc] + [b.death for b in bc if b.death is not None] + [0])))
    span = (ths[-1] - ths[0]) or 1.0
    right = ths[-1] + 0.15 * span
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6.4, 0.35 * max(len(bc), 3) + 1.0))
        for y, b in enumerate(bc):
            x0 = ths[b.birth]
            x1 = right if b.death is None else ths[b.death]
            ax.plot([x0, x1], [y, y], color="tab:blue", lw=3, solid_capstyle="butt")
            if b.death is None:
                ax.annotate("", xy=(right, y), xytext=(right - 0.05 * span, y),
                            arrowprops={"arrowstyle": "->", "color": "tab:blue"})
            ax.text(x1 + 0.01 * span, y, f"×{b.multiplicity}", va="center", fontsize=7)
        ax.set_yticks([])
        ax.set_ylim(-1, max(len(bc), 1))
        ax.set_xlim(ths[0] - 0.05 * span, right + 0.1 * span)
        ax.set_xlabel("eps")
        ax.invert_yaxis()
        if title:
            ax.set_title(title)
        fig.tight_layout()
        _save(fig, path)


def plot_stability(report, path: str | os.PathLike):
    """Heat of formation and R against atom count on twin vertical axes."""
    ns = [r.n for r in report.results]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6.4, 3.6))
        ax.plot(ns, [r.energy for r in report.results], "s-", color="tab:red", label="E")
        ax.set_xlabel("atoms")
        ax.set_ylabel("heat of formation (eV/atom)", color="tab:red")
        ax2 = ax.twinx()
        ax2.plot(ns, [r.ratio for r in report.results], "o-", color="tab:green", label="R")
        ax2.set_ylabel("R = ell / n", color="tab:green")
        ax.set_title(f"C = {report.correlation:.3f}")
        fig.tight_layout()
        _save(fig, path)
