"""Figures for the CLI report path, rendered headless to image files."""

from __future__ import annotations

from typing import Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_newton(points: Sequence[Tuple[int, int]], hull: Sequence[Tuple[int, int]], path: str, title: str = ""):
    fig, ax = plt.subplots(figsize=(5, 4))
    xs, ys = zip(*points) if points else ((), ())
    ax.scatter(xs, ys, s=18, color="0.5", label="(j, v(a_j))")
    hx, hy = zip(*hull)
    ax.plot(hx, hy, "o-", color="C0", label="lower hull")
    ax.set_xlabel("j")
    ax.set_ylabel("valuation at q = 1")
    ax.grid(alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_degrees(rows: Sequence[Tuple[int, int, int, bool]], path: str, title: str = ""):
    fig, ax = plt.subplots(figsize=(5, 4))
    ns = [r[0] for r in rows]
    ax.plot(ns, [r[2] for r in rows], "-", color="C1", label="predicted")
    ax.plot(ns, [r[1] for r in rows], "o", color="C0", label="deg_q J_n")
    bad = [r for r in rows if not r[3]]
    if bad:
        ax.plot([r[0] for r in bad], [r[1] for r in bad], "x", color="red", ms=10, label="mismatch")
    ax.set_xlabel("n")
    ax.set_ylabel("top q-degree")
    ax.grid(alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
