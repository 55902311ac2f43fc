"""Figure rendering smoke tests (Agg backend, files only)."""

import numpy as np

from repgame.experiments import ObservableRecord, SnapshotGrid, SweepCell, TimeseriesResult
from repgame.io import cli_main, write_sweep_csv, write_timeseries_csv
from repgame.plotting import plot_snapshot, plot_sweep, plot_timeseries, render_run_figures

PNG_MAGIC = b"\x89PNG"


def rec(step, f_c, theta):
    return ObservableRecord(step, f_c, theta, 0, 0, 0, 0, 0.0)


def cell(p, m, f_c):
    return SweepCell(p=p, m=m, b_l=1.1, topology="sl6", replicates=2,
                     f_c_mean=f_c, f_c_std=0.01, theta_mean=1.0)


def test_plot_timeseries(tmp_path):
    path = plot_timeseries([rec(i, i / 10, 1.0) for i in range(10)], tmp_path / "ts.png")
    assert path.read_bytes()[:4] == PNG_MAGIC


def test_plot_snapshot(tmp_path):
    grid = SnapshotGrid(step=5, side=6, cells=np.zeros((6, 6), dtype=np.int8))
    path = plot_snapshot(grid, tmp_path / "snap.png")
    assert path.read_bytes()[:4] == PNG_MAGIC


def test_plot_sweep_curve_and_heatmap(tmp_path):
    curve = [cell(0.9, m, 1 - m) for m in (0.0, 0.5, 1.0)]
    path = plot_sweep(curve, tmp_path / "curve.png")
    assert path.read_bytes()[:4] == PNG_MAGIC
    grid = [cell(p, m, p * m) for p in (0.1, 0.9) for m in (0.0, 0.5, 1.0)]
    path = plot_sweep(grid, tmp_path / "heat.png")
    assert path.read_bytes()[:4] == PNG_MAGIC


def test_render_run_figures_writes_all(tmp_path):
    result = TimeseriesResult(
        records=[rec(i, 0.5, 1.0) for i in range(5)],
        snapshots=[SnapshotGrid(step=0, side=4, cells=np.zeros((4, 4), dtype=np.int8))],
    )
    paths = render_run_figures(result, tmp_path)
    assert [p.name for p in paths] == ["timeseries.png", "snapshot_step0.png"]
    assert all(p.exists() for p in paths)


def test_cli_report_sniffs_file_kinds(tmp_path):
    ts = tmp_path / "timeseries.csv"
    write_timeseries_csv([rec(i, 0.4, 0.9) for i in range(4)], ts)
    assert cli_main(["report", str(ts)]) == 0
    assert (tmp_path / "timeseries.png").read_bytes()[:4] == PNG_MAGIC

    sw = tmp_path / "sweep.csv"
    write_sweep_csv([cell(0.9, m, m) for m in (0.0, 1.0)], sw)
    assert cli_main(["report", str(sw), "--out", str(tmp_path / "named.png")]) == 0
    assert (tmp_path / "named.png").exists()

    snap = tmp_path / "snapshot_step0.csv"
    snap.write_text("0,1\n2,3\n", encoding="utf-8")
    assert cli_main(["report", str(snap)]) == 0
    assert (tmp_path / "snapshot_step0.png").exists()


def test_cli_report_rejects_unknown(tmp_path, capsys):
    bad = tmp_path / "mystery.csv"
    bad.write_text("a,b\n1,x\n", encoding="utf-8")
    assert cli_main(["report", str(bad)]) == 1
    assert "not a recognized" in capsys.readouterr().err


def test_cli_run_figures_flag(tmp_path):
    cfg = tmp_path / "tiny.cfg"
    cfg.write_text(
        "[network]\nside = 4\n[run]\nhorizon = 6\nburn_in = 0\nwindow = 3\n",
        encoding="utf-8",
    )
    out = tmp_path / "figs"
    assert cli_main(["run", "--config", str(cfg), "--out", str(out), "--figures"]) == 0
    assert (out / "timeseries.png").exists()
