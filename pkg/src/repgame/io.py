"""Config files, result serialization, and the command-line interface.

File formats
------------
* Config: INI sections documented in :mod:`repgame.config`.
* Time series CSV: ``step,f_c,theta,n_HC,n_HD,n_LC,n_LD,mean_payoff``.
* Sweep CSV: ``p,m,b_l,topology,replicates,f_c_mean,f_c_std,theta_mean``.
* Snapshots: a plain-text pixmap (PPM ``P3``) using the fixed palette
  HC=(220,50,47) HD=(38,70,140) LC=(240,150,170) LD=(140,190,230), plus a
  CSV of integer codes 0=HC 1=HD 2=LC 3=LD.

Floats are written with 6 significant digits, ``.`` decimal separator and
``\\n`` newlines, so equal inputs always serialize to equal bytes.
"""
from __future__ import annotations

import argparse
import configparser
import os
import sys
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import PRESET_NOTES, PRESETS, RunConfig, preset, seed_to_int
from .dynamics import Bimodal, Gaussian, InitialReputationDist, Uniform, derive_seed
from .errors import ConfigError, RepgameError
from .experiments import (
    GridSpec,
    ObservableRecord,
    SnapshotGrid,
    SweepCell,
    run_timeseries,
    sweep_grid,
)
from .model import ModelParams
from .network import NetworkSpec, SmallWorld, SquareLattice

__all__ = [
    "load_config",
    "save_config",
    "write_timeseries_csv",
    "write_sweep_csv",
    "write_snapshot",
    "write_node_states_csv",
    "read_snapshot_csv",
    "read_snapshot_ppm",
    "cli_main",
    "main",
    "SNAPSHOT_PALETTE",
]

TIMESERIES_HEADER = "step,f_c,theta,n_HC,n_HD,n_LC,n_LD,mean_payoff"
SWEEP_HEADER = "p,m,b_l,topology,replicates,f_c_mean,f_c_std,theta_mean"

# State code -> RGB, in code order HC, HD, LC, LD.
SNAPSHOT_PALETTE = ((220, 50, 47), (38, 70, 140), (240, 150, 170), (140, 190, 230))


def fmt(x: float) -> str:
    """6 significant digits, plain decimal point."""
    return f"{x:.6g}"


# ---------------------------------------------------------------------------
# Config parsing

_KNOWN_KEYS = {
    "network": {"kind", "side", "periodic", "n", "k", "beta", "graph_seed"},
    "params": {
        "b_l",
        "c",
        "delta",
        "p",
        "m",
        "kappa",
        "r_min",
        "r_max",
        "shared_cost",
        "cumulative_payoff",
    },
    "init": {"dist", "lo", "hi", "mu", "sigma", "mu1", "sigma1", "mu2", "sigma2", "weight"},
    "run": {"horizon", "burn_in", "window", "snapshot_steps", "replicates", "master_seed"},
    "output": {"dir"},
}

_DIST_KEYS = {
    "uniform": {"lo", "hi"},
    "gaussian": {"mu", "sigma"},
    "bimodal": {"mu1", "sigma1", "mu2", "sigma2", "weight"},
}

_NETWORK_KEYS = {
    "lattice": {"side", "periodic"},
    "small_world": {"n", "k", "beta", "graph_seed"},
}

_BOOL_STRINGS = {
    "true": True,
    "false": False,
    "yes": True,
    "no": False,
    "on": True,
    "off": False,
    "1": True,
    "0": False,
}


class _KeyValues:
    """Flat (section, key) -> string map with typed, error-annotated access."""

    def __init__(self, data: dict[tuple[str, str], str]):
        self.data = dict(data)

    def take(self, section: str, key: str, conv, default):
        raw = self.data.pop((section, key), None)
        if raw is None:
            return default
        try:
            return conv(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{section}.{key}: cannot parse {raw!r}") from None

    @staticmethod
    def to_bool(raw: str) -> bool:
        try:
            return _BOOL_STRINGS[raw.strip().lower()]
        except KeyError:
            raise ValueError(raw) from None

    @staticmethod
    def to_int_list(raw: str) -> tuple[int, ...]:
        raw = raw.strip()
        if not raw:
            return ()
        return tuple(int(part) for part in raw.split(","))


def _read_ini(path: str | Path) -> dict[tuple[str, str], str]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    kv: dict[tuple[str, str], str] = {}
    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        for key, value in parser.items(section):
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown config key {section}.{key}")
            kv[(section, key)] = value
    return kv


def _build_network(kv: _KeyValues, master_seed: int) -> NetworkSpec:
    kind = kv.take("network", "kind", str, "lattice").strip().lower()
    if kind not in _NETWORK_KEYS:
        raise ConfigError(f"network.kind must be 'lattice' or 'small_world', got {kind!r}")
    stray = [k for (s, k) in kv.data if s == "network" and k not in _NETWORK_KEYS[kind]]
    if stray:
        raise ConfigError(f"network.{stray[0]}: not a key for kind={kind}")
    try:
        if kind == "lattice":
            return SquareLattice(
                side=kv.take("network", "side", int, 50),
                periodic=kv.take("network", "periodic", _KeyValues.to_bool, True),
            )
        return SmallWorld(
            n=kv.take("network", "n", int, 2500),
            k=kv.take("network", "k", int, 10),
            beta=kv.take("network", "beta", float, 0.5),
            graph_seed=kv.take(
                "network",
                "graph_seed",
                int,
                seed_to_int(derive_seed(master_seed, "graph")),
            ),
        )
    except ValueError as exc:
        raise ConfigError(f"network: {exc}") from None


def _build_params(kv: _KeyValues) -> ModelParams:
    try:
        params = ModelParams(
            b_l=kv.take("params", "b_l", float, 1.1),
            c=kv.take("params", "c", float, 1.0),
            delta=kv.take("params", "delta", float, 0.01),
            p=kv.take("params", "p", float, 0.9),
            m=kv.take("params", "m", float, 0.5),
            kappa=kv.take("params", "kappa", float, 0.1),
            r_min=kv.take("params", "r_min", float, 0.0),
            r_max=kv.take("params", "r_max", float, 2.0),
            shared_cost_variant=kv.take("params", "shared_cost", _KeyValues.to_bool, False),
            cumulative_payoff=kv.take("params", "cumulative_payoff", _KeyValues.to_bool, False),
        )
    except ValueError as exc:
        raise ConfigError(f"params.{exc}") from None
    if not params.pd_ordering_ok():
        warnings.warn(
            f"params: b_l > c > 0 violated (b_l={params.b_l}, c={params.c}); "
            "the low game is not a strict prisoner's dilemma",
            stacklevel=3,
        )
    return params


def _build_dist(kv: _KeyValues) -> InitialReputationDist:
    dist = kv.take("init", "dist", str, "uniform").strip().lower()
    if dist not in _DIST_KEYS:
        raise ConfigError(f"init.dist must be uniform, gaussian, or bimodal, got {dist!r}")
    stray = [k for (s, k) in kv.data if s == "init" and k not in _DIST_KEYS[dist]]
    if stray:
        raise ConfigError(f"init.{stray[0]}: not a key for dist={dist}")
    try:
        if dist == "uniform":
            return Uniform(kv.take("init", "lo", float, 0.0), kv.take("init", "hi", float, 2.0))
        if dist == "gaussian":
            return Gaussian(kv.take("init", "mu", float, 1.0), kv.take("init", "sigma", float, 0.3))
        return Bimodal(
            mu1=kv.take("init", "mu1", float, 0.5),
            sigma1=kv.take("init", "sigma1", float, 0.15),
            mu2=kv.take("init", "mu2", float, 1.5),
            sigma2=kv.take("init", "sigma2", float, 0.15),
            weight=kv.take("init", "weight", float, 0.5),
        )
    except ValueError as exc:
        raise ConfigError(f"init.{exc}") from None


def build_config(data: dict[tuple[str, str], str]) -> RunConfig:
    """Validate a flat key/value map into a RunConfig (all keys optional)."""
    kv = _KeyValues(data)
    master_seed = kv.take("run", "master_seed", int, 1)
    params = _build_params(kv)
    network = _build_network(kv, master_seed)
    init_dist = _build_dist(kv)
    try:
        config = RunConfig(
            network=network,
            params=params,
            init_dist=init_dist,
            horizon=kv.take("run", "horizon", int, 5000),
            burn_in=kv.take("run", "burn_in", int, 4500),
            window=kv.take("run", "window", int, 500),
            snapshot_steps=kv.take("run", "snapshot_steps", _KeyValues.to_int_list, ()),
            replicates=kv.take("run", "replicates", int, 10),
            master_seed=master_seed,
            output_dir=kv.take("output", "dir", str, "out"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    assert not kv.data, f"unconsumed config keys: {sorted(kv.data)}"
    return config


def load_config(path: str | Path) -> RunConfig:
    """Read and fully validate a config file; unknown keys are rejected."""
    return build_config(_read_ini(path))


def config_to_kv(config: RunConfig) -> dict[tuple[str, str], str]:
    """Flatten a RunConfig to the (section, key) -> string form it loads from.

    Floats are written with repr, the shortest round-tripping representation,
    so load(save(cfg)) == cfg exactly.
    """
    kv: dict[tuple[str, str], str] = {}
    net = config.network
    if isinstance(net, SquareLattice):
        kv[("network", "kind")] = "lattice"
        kv[("network", "side")] = str(net.side)
        kv[("network", "periodic")] = str(net.periodic).lower()
    else:
        kv[("network", "kind")] = "small_world"
        kv[("network", "n")] = str(net.n)
        kv[("network", "k")] = str(net.k)
        kv[("network", "beta")] = repr(net.beta)
        kv[("network", "graph_seed")] = str(net.graph_seed)
    pr = config.params
    kv[("params", "b_l")] = repr(pr.b_l)
    kv[("params", "c")] = repr(pr.c)
    kv[("params", "delta")] = repr(pr.delta)
    kv[("params", "p")] = repr(pr.p)
    kv[("params", "m")] = repr(pr.m)
    kv[("params", "kappa")] = repr(pr.kappa)
    kv[("params", "r_min")] = repr(pr.r_min)
    kv[("params", "r_max")] = repr(pr.r_max)
    kv[("params", "shared_cost")] = str(pr.shared_cost_variant).lower()
    kv[("params", "cumulative_payoff")] = str(pr.cumulative_payoff).lower()
    dist = config.init_dist
    if isinstance(dist, Uniform):
        kv[("init", "dist")] = "uniform"
        kv[("init", "lo")] = repr(dist.lo)
        kv[("init", "hi")] = repr(dist.hi)
    elif isinstance(dist, Gaussian):
        kv[("init", "dist")] = "gaussian"
        kv[("init", "mu")] = repr(dist.mu)
        kv[("init", "sigma")] = repr(dist.sigma)
    else:
        kv[("init", "dist")] = "bimodal"
        kv[("init", "mu1")] = repr(dist.mu1)
        kv[("init", "sigma1")] = repr(dist.sigma1)
        kv[("init", "mu2")] = repr(dist.mu2)
        kv[("init", "sigma2")] = repr(dist.sigma2)
        kv[("init", "weight")] = repr(dist.weight)
    kv[("run", "horizon")] = str(config.horizon)
    kv[("run", "burn_in")] = str(config.burn_in)
    kv[("run", "window")] = str(config.window)
    kv[("run", "snapshot_steps")] = ",".join(str(s) for s in config.snapshot_steps)
    kv[("run", "replicates")] = str(config.replicates)
    kv[("run", "master_seed")] = str(config.master_seed)
    kv[("output", "dir")] = config.output_dir
    return kv


def save_config(config: RunConfig, path: str | Path) -> None:
    """Write a config file that loads back to an identical RunConfig."""
    parser = configparser.ConfigParser(interpolation=None)
    sections: dict[str, dict[str, str]] = {}
    for (section, key), value in config_to_kv(config).items():
        sections.setdefault(section, {})[key] = value
    for section in ("network", "params", "init", "run", "output"):
        parser[section] = sections[section]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        parser.write(fh)


# ---------------------------------------------------------------------------
# Result writers


def write_timeseries_csv(records: list[ObservableRecord], path: str | Path) -> None:
    lines = [TIMESERIES_HEADER]
    for r in records:
        lines.append(
            f"{r.step},{fmt(r.f_c)},{fmt(r.theta)},{r.n_hc},{r.n_hd},{r.n_lc},{r.n_ld},"
            f"{fmt(r.mean_payoff)}"
        )
    _write_text(path, "\n".join(lines) + "\n")


def write_sweep_csv(cells: list[SweepCell], path: str | Path) -> None:
    lines = [SWEEP_HEADER]
    for cell in cells:
        lines.append(
            f"{fmt(cell.p)},{fmt(cell.m)},{fmt(cell.b_l)},{cell.topology},{cell.replicates},"
            f"{fmt(cell.f_c_mean)},{fmt(cell.f_c_std)},{fmt(cell.theta_mean)}"
        )
    _write_text(path, "\n".join(lines) + "\n")


def write_snapshot(grid: SnapshotGrid, base_path: str | Path) -> tuple[Path, Path]:
    """Write a snapshot twice: ``<base>.ppm`` (P3 pixmap) and ``<base>.csv``."""
    base = Path(base_path)
    ppm_path = base.with_suffix(".ppm")
    csv_path = base.with_suffix(".csv")

    rows = []
    for row in grid.cells:
        rows.append(" ".join(" ".join(str(v) for v in SNAPSHOT_PALETTE[code]) for code in row))
    _write_text(ppm_path, f"P3\n{grid.side} {grid.side}\n255\n" + "\n".join(rows) + "\n")

    csv_rows = [",".join(str(int(code)) for code in row) for row in grid.cells]
    _write_text(csv_path, "\n".join(csv_rows) + "\n")
    return ppm_path, csv_path


def read_snapshot_csv(path: str | Path) -> np.ndarray:
    rows = [
        [int(v) for v in line.split(",")]
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    return np.array(rows, dtype=np.int8)


def read_snapshot_ppm(path: str | Path) -> np.ndarray:
    """Decode a palette pixmap back to state codes (cross-check helper)."""
    tokens = Path(path).read_text(encoding="utf-8").split()
    if tokens[0] != "P3":
        raise ConfigError(f"{path}: not a P3 pixmap")
    width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    if maxval != 255:
        raise ConfigError(f"{path}: expected maxval 255, got {maxval}")
    values = [int(t) for t in tokens[4:]]
    if len(values) != width * height * 3:
        raise ConfigError(f"{path}: pixel count mismatch")
    rgb_to_code = {rgb: code for code, rgb in enumerate(SNAPSHOT_PALETTE)}
    codes = []
    for i in range(width * height):
        rgb = tuple(values[3 * i : 3 * i + 3])
        if rgb not in rgb_to_code:
            raise ConfigError(f"{path}: unknown palette color {rgb}")
        codes.append(rgb_to_code[rgb])
    return np.array(codes, dtype=np.int8).reshape(height, width)


def write_node_states_csv(codes: np.ndarray, path: str | Path) -> None:
    """Per-node state export for topologies without a 2-D embedding."""
    lines = ["node,state"] + [f"{i},{int(code)}" for i, code in enumerate(codes)]
    _write_text(path, "\n".join(lines) + "\n")


def read_timeseries_csv(path: str | Path) -> list[ObservableRecord]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != TIMESERIES_HEADER:
        raise ConfigError(f"{path}: not a timeseries CSV")
    records = []
    for line in lines[1:]:
        if not line.strip():
            continue
        step, f_c, theta, n_hc, n_hd, n_lc, n_ld, mean_payoff = line.split(",")
        records.append(
            ObservableRecord(
                step=int(step),
                f_c=float(f_c),
                theta=float(theta),
                n_hc=int(n_hc),
                n_hd=int(n_hd),
                n_lc=int(n_lc),
                n_ld=int(n_ld),
                mean_payoff=float(mean_payoff),
            )
        )
    return records


def read_sweep_csv(path: str | Path) -> list[SweepCell]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != SWEEP_HEADER:
        raise ConfigError(f"{path}: not a sweep CSV")
    cells = []
    for line in lines[1:]:
        if not line.strip():
            continue
        p, m, b_l, topology, replicates, f_c_mean, f_c_std, theta_mean = line.split(",")
        cells.append(
            SweepCell(
                p=float(p),
                m=float(m),
                b_l=float(b_l),
                topology=topology,
                replicates=int(replicates),
                f_c_mean=float(f_c_mean),
                f_c_std=float(f_c_std),
                theta_mean=float(theta_mean),
            )
        )
    return cells


def _write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# CLI


def _parse_range(spec: str) -> tuple[float, ...]:
    """'lo:hi:steps' -> inclusive linspace with `steps` points."""
    try:
        lo_s, hi_s, steps_s = spec.split(":")
        lo, hi, steps = float(lo_s), float(hi_s), int(steps_s)
    except ValueError:
        raise ConfigError(f"range must look like lo:hi:steps, got {spec!r}") from None
    if steps < 1:
        raise ConfigError(f"range needs at least one step, got {spec!r}")
    if steps == 1:
        return (lo,)
    return tuple(float(v) for v in np.linspace(lo, hi, steps))


def _apply_set_overrides(data: dict[tuple[str, str], str], assignments: list[str]) -> None:
    for item in assignments:
        try:
            dotted, value = item.split("=", 1)
            section, key = dotted.strip().split(".", 1)
        except ValueError:
            raise ConfigError(f"--set expects section.key=value, got {item!r}") from None
        if section not in _KNOWN_KEYS or key not in _KNOWN_KEYS[section]:
            raise ConfigError(f"unknown config key {section}.{key}")
        data[(section, key)] = value.strip()


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    """Assemble the run config honoring precedence: --seed > REPGAME_SEED > config."""
    if args.config and args.preset:
        raise ConfigError("give either --config or --preset, not both")
    if args.preset:
        data = config_to_kv(preset(args.preset))
    elif args.config:
        data = _read_ini(args.config)
    else:
        raise ConfigError("one of --config or --preset is required")

    env_seed = os.environ.get("REPGAME_SEED")
    if args.seed is not None:
        data[("run", "master_seed")] = str(args.seed)
    elif env_seed is not None:
        try:
            int(env_seed)
        except ValueError:
            raise ConfigError(f"REPGAME_SEED must be an integer, got {env_seed!r}") from None
        data[("run", "master_seed")] = env_seed
    _apply_set_overrides(data, args.set or [])

    config = build_config(data)
    if args.out:
        config = replace(config, output_dir=args.out)
    return config


def _run_and_write(config: RunConfig, args: argparse.Namespace) -> int:
    result = run_timeseries(config)
    out = Path(config.output_dir)
    write_timeseries_csv(result.records, out / "timeseries.csv")
    save_config(config, out / "config.cfg")
    for snap in result.snapshots:
        write_snapshot(snap, out / f"snapshot_step{snap.step}")
    print(f"wrote {out / 'timeseries.csv'} ({len(result.records)} records, "
          f"{len(result.snapshots)} snapshots)")
    if args.figures:
        from . import plotting

        for fig_path in plotting.render_run_figures(result, out):
            print(f"wrote {fig_path}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    return _run_and_write(_resolve_config(args), args)


def _cmd_snapshot(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    if args.steps:
        try:
            steps = _KeyValues.to_int_list(args.steps)
        except ValueError:
            raise ConfigError(f"--steps expects comma-separated integers, got {args.steps!r}") from None
        config = replace(config, snapshot_steps=steps)
    if not config.snapshot_steps:
        raise ConfigError("snapshot requires snapshot steps (run.snapshot_steps or --steps)")
    if isinstance(config.network, SquareLattice):
        return _run_and_write(config, args)
    # No 2-D embedding: export per-node state codes instead of grid files.
    from .experiments import run_node_states

    records, states = run_node_states(config)
    out = Path(config.output_dir)
    write_timeseries_csv(records, out / "timeseries.csv")
    save_config(config, out / "config.cfg")
    for step, codes in states:
        write_node_states_csv(codes, out / f"states_step{step}.csv")
    print(f"wrote {out / 'timeseries.csv'} ({len(records)} records, "
          f"{len(states)} per-node state files)")
    if args.figures:
        from . import plotting

        print(f"wrote {plotting.plot_timeseries(records, out / 'timeseries.png')}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    p_values = _parse_range(args.p_range) if args.p_range else (config.params.p,)
    m_values = _parse_range(args.m_range) if args.m_range else (config.params.m,)
    grid = GridSpec(
        base=config,
        p_values=p_values,
        m_values=m_values,
        replicates=args.replicates,
        jobs=args.jobs,
    )
    cells = sweep_grid(grid)
    out = Path(config.output_dir)
    write_sweep_csv(cells, out / "sweep.csv")
    save_config(config, out / "config.cfg")
    print(f"wrote {out / 'sweep.csv'} ({len(cells)} cells)")
    if args.figures:
        from . import plotting

        for fig_path in plotting.render_sweep_figures(cells, out):
            print(f"wrote {fig_path}")
    return 0


def _cmd_presets(args: argparse.Namespace) -> int:
    for name in PRESETS:
        print(f"{name:10s} {PRESET_NOTES[name]}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    from . import plotting

    for fig_path in plotting.render_report(args.input, args.out):
        print(f"wrote {fig_path}")
    return 0


def _add_common(sub: argparse.ArgumentParser, with_figures: bool = True) -> None:
    sub.add_argument("--config", help="path to an INI run config")
    sub.add_argument("--preset", help="named experiment preset (see 'repgame presets')")
    sub.add_argument("--seed", type=int, help="master seed override (beats REPGAME_SEED)")
    sub.add_argument("--out", help="output directory (default: config output.dir)")
    sub.add_argument(
        "--set",
        action="append",
        metavar="SECTION.KEY=VALUE",
        help="override a single config key (repeatable)",
    )
    if with_figures:
        sub.add_argument(
            "--figures", action="store_true", help="also render matplotlib figures"
        )


def cli_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="repgame",
        description="Reputation-driven game transitions on networks: seeded simulations.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_run = subparsers.add_parser("run", help="single seeded time series")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = subparsers.add_parser("sweep", help="(p, m) grid sweep with replicates")
    _add_common(p_sweep)
    p_sweep.add_argument("--p-range", metavar="LO:HI:STEPS", help="grid values for p")
    p_sweep.add_argument("--m-range", metavar="LO:HI:STEPS", help="grid values for m")
    p_sweep.add_argument("--replicates", type=int, help="replicates per cell")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel workers (results identical)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_snap = subparsers.add_parser("snapshot", help="time series with spatial snapshots")
    _add_common(p_snap)
    p_snap.add_argument("--steps", metavar="S1,S2,...", help="snapshot schedule override")
    p_snap.set_defaults(func=_cmd_snapshot)

    p_presets = subparsers.add_parser("presets", help="list the named experiment presets")
    p_presets.set_defaults(func=_cmd_presets)

    p_report = subparsers.add_parser("report", help="render figures from produced CSV files")
    p_report.add_argument("input", help="timeseries/sweep/snapshot CSV to render")
    p_report.add_argument("--out", help="output image path (default: alongside the input)")
    p_report.set_defaults(func=_cmd_report)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RepgameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))
