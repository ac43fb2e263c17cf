"""Figure rendering for CLI reports.

Report-producing commands write matplotlib figures next to their delimited
output.  Everything renders through the Agg backend so it works headless.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _as_float(v) -> float:
    return float(v) if isinstance(v, (Fraction, int)) else v


def render_csum_heatmap(
    qs: Sequence[int], a_values: Sequence[int], table: Mapping[tuple[int, int], int], path: Path
) -> Path:
    """Heatmap of c_q(a) over the requested grid."""
    grid = [[table[(q, a)] for a in a_values] for q in qs]
    fig, ax = plt.subplots(figsize=(max(4, len(a_values) * 0.25), max(3, len(qs) * 0.25)))
    im = ax.imshow(grid, cmap="RdBu_r", aspect="auto", origin="lower")
    ax.set_xticks(range(len(a_values)), [str(a) for a in a_values], fontsize=7, rotation=90)
    ax.set_yticks(range(len(qs)), [str(q) for q in qs], fontsize=7)
    ax.set_xlabel("argument a")
    ax.set_ylabel("modulus q")
    ax.set_title("Ramanujan sums c_q(a)")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_traces(
    traces: Mapping[str, Sequence[tuple[int, Fraction]]],
    path: Path,
    *,
    title: str,
    ylabel: str = "partial value",
) -> Path:
    """Partial-value traces against their doubling cutoffs, log-x."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, trace in traces.items():
        cuts = [c for c, _v in trace]
        vals = [_as_float(v) for _c, v in trace]
        ax.plot(cuts, vals, marker="o", markersize=3, linewidth=1, label=label)
    ax.set_xscale("log")
    ax.set_xlabel("cutoff")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(traces) <= 12:
        ax.legend(fontsize=7)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_residuals(
    labels: Sequence[str], residuals: Sequence[Fraction], path: Path, *, title: str
) -> Path:
    """|residual| per report row, log scale (zeros shown at the axis floor)."""
    mags = [abs(_as_float(r)) for r in residuals]
    floor = min([m for m in mags if m > 0], default=1e-18) / 10
    fig, ax = plt.subplots(figsize=(max(4, len(labels) * 0.3), 4))
    ax.bar(range(len(labels)), [max(m, floor) for m in mags], color="steelblue")
    ax.set_yscale("log")
    ax.set_xticks(range(len(labels)), labels, fontsize=7, rotation=90)
    ax.set_ylabel("|residual|")
    ax.set_title(title)
    ax.axhline(floor, color="gray", linewidth=0.5, linestyle=":")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
