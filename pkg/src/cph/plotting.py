"""Figures for benchmark tables."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import CLIMB_BOUND, BenchRow  # noqa: E402


def plot_bench(rows: list[BenchRow], path: str | Path) -> Path:
    """Build time against n (log-log, one line per sigma) and climb steps per character."""
    path = Path(path)
    fig, (ax_t, ax_c) = plt.subplots(1, 2, figsize=(9, 3.6))
    for sigma in sorted({r.sigma for r in rows}):
        sel = sorted((r for r in rows if r.sigma == sigma), key=lambda r: r.n)
        ns = [r.n for r in sel]
        ax_t.plot(ns, [r.build_s for r in sel], marker="o", label=f"sigma={sigma}")
        ax_c.plot(ns, [r.climb_per_n for r in sel], marker="o", label=f"sigma={sigma}")
    if rows:
        # linear reference through the smallest measurement
        first = min(rows, key=lambda r: (r.n, r.build_s))
        lo, hi = min(r.n for r in rows), max(r.n for r in rows)
        ax_t.plot([lo, hi], [first.build_s * lo / first.n, first.build_s * hi / first.n],
                  ls=":", color="grey", label="linear")
    ax_t.set_xscale("log")
    ax_t.set_yscale("log")
    ax_t.set_xlabel("n")
    ax_t.set_ylabel("build time (s)")
    ax_t.legend(fontsize=8)
    ax_c.axhline(CLIMB_BOUND, ls="--", color="red", label="bound 3")
    ax_c.set_xscale("log")
    ax_c.set_ylim(0, CLIMB_BOUND + 0.5)
    ax_c.set_xlabel("n")
    ax_c.set_ylabel("climb steps / n")
    ax_c.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
