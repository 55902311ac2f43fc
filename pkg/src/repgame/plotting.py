"""Matplotlib rendering of run outputs, written next to the delimited files.

Figures are a convenience view; the CSV/pixmap outputs remain the canonical,
byte-deterministic artifacts. Everything renders through the Agg backend so
it works headless.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.patches import Patch

from .errors import ConfigError
from .experiments import ObservableRecord, SnapshotGrid, SweepCell, TimeseriesResult

__all__ = [
    "plot_timeseries",
    "plot_snapshot",
    "plot_sweep",
    "render_run_figures",
    "render_sweep_figures",
    "render_report",
]

_STATE_NAMES = ("HC", "HD", "LC", "LD")
_STATE_CMAP = ListedColormap(
    [(220 / 255, 50 / 255, 47 / 255), (38 / 255, 70 / 255, 140 / 255),
     (240 / 255, 150 / 255, 170 / 255), (140 / 255, 190 / 255, 230 / 255)]
)


def plot_timeseries(records: list[ObservableRecord], path: str | Path) -> Path:
    """Cooperation density and reputation threshold against the MCS index."""
    steps = [r.step for r in records]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(steps, [r.f_c for r in records], color="tab:green", label="cooperation density")
    ax.plot(steps, [r.theta / 2.0 for r in records], color="tab:purple",
            label="threshold / 2 (rescaled to [0,1])")
    ax.set_xlabel("Monte Carlo step")
    ax.set_ylabel("fraction")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="best")
    fig.tight_layout()
    return _save(fig, path)


def plot_snapshot(grid: SnapshotGrid, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(grid.cells, cmap=_STATE_CMAP, vmin=0, vmax=3, interpolation="nearest")
    ax.set_xticks([])
    ax.set_yticks([])
    if grid.step >= 0:
        ax.set_title(f"step {grid.step}")
    handles = [Patch(color=_STATE_CMAP(i), label=name) for i, name in enumerate(_STATE_NAMES)]
    ax.legend(handles=handles, loc="upper left", bbox_to_anchor=(1.02, 1.0), frameon=False)
    fig.tight_layout()
    return _save(fig, path)


def plot_sweep(cells: list[SweepCell], path: str | Path) -> Path:
    """Heatmap on the p-m plane, or curves when one axis is degenerate."""
    p_values = sorted({c.p for c in cells})
    m_values = sorted({c.m for c in cells})
    if len(p_values) > 1 and len(m_values) > 1:
        lookup = {(c.p, c.m): c.f_c_mean for c in cells}
        z = np.array([[lookup.get((p, m), np.nan) for m in m_values] for p in p_values])
        fig, ax = plt.subplots(figsize=(6, 5))
        mesh = ax.pcolormesh(m_values, p_values, z, cmap="viridis", vmin=0.0, vmax=1.0,
                             shading="nearest")
        fig.colorbar(mesh, ax=ax, label="cooperation density")
        ax.set_xlabel("m (payoff weight in fitness)")
        ax.set_ylabel("p (mixed-pair high-value probability)")
    else:
        along_m = len(m_values) > 1
        xs = m_values if along_m else p_values
        key = (lambda c: c.m) if along_m else (lambda c: c.p)
        ordered = sorted(cells, key=key)
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.errorbar(xs, [c.f_c_mean for c in ordered], yerr=[c.f_c_std for c in ordered],
                    marker="o", capsize=3, color="tab:green", label="cooperation density")
        ax.plot(xs, [c.theta_mean / 2.0 for c in ordered], marker="s", color="tab:purple",
                label="threshold / 2")
        ax.set_xlabel("m" if along_m else "p")
        ax.set_ylabel("steady-state value")
        ax.set_ylim(-0.02, 1.02)
        ax.legend(loc="best")
    fig.tight_layout()
    return _save(fig, path)


def render_run_figures(result: TimeseriesResult, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    written = [plot_timeseries(result.records, out_dir / "timeseries.png")]
    for snap in result.snapshots:
        written.append(plot_snapshot(snap, out_dir / f"snapshot_step{snap.step}.png"))
    return written


def render_sweep_figures(cells: list[SweepCell], out_dir: str | Path) -> list[Path]:
    return [plot_sweep(cells, Path(out_dir) / "sweep.png")]


def render_report(input_path: str | Path, out: str | Path | None = None) -> list[Path]:
    """Render the figure matching a produced CSV (sniffed from its header)."""
    from .io import (
        TIMESERIES_HEADER,
        SWEEP_HEADER,
        read_snapshot_csv,
        read_sweep_csv,
        read_timeseries_csv,
    )

    input_path = Path(input_path)
    if not input_path.exists():
        raise ConfigError(f"input file not found: {input_path}")
    target = Path(out) if out else input_path.with_suffix(".png")
    first = input_path.read_text(encoding="utf-8").splitlines()
    header = first[0].strip() if first else ""
    if header == TIMESERIES_HEADER:
        return [plot_timeseries(read_timeseries_csv(input_path), target)]
    if header == SWEEP_HEADER:
        return [plot_sweep(read_sweep_csv(input_path), target)]
    try:
        codes = read_snapshot_csv(input_path)
    except ValueError:
        raise ConfigError(
            f"{input_path}: not a recognized timeseries, sweep, or snapshot CSV"
        ) from None
    grid = SnapshotGrid(step=-1, side=codes.shape[0], cells=codes)
    fig_path = plot_snapshot(grid, target)
    return [fig_path]


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
