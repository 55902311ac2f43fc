"""Experiment harness: time series, steady-state windows, grid sweeps, snapshots.

Replicates and sweep cells are embarrassingly parallel: every (cell,
replicate) pair gets a dynamics stream derived from (master_seed, p, m,
replicate), so results are identical whatever the worker count or execution
order. Within one sweep all replicates share the graph and the initial
population; only their dynamics streams differ.
"""
from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, replace

import numpy as np

from .config import RunConfig
from .dynamics import (
    Bimodal,
    Gaussian,
    InitialReputationDist,
    PopulationState,
    RngStream,
    Uniform,
    derive_seed,
    init_population,
    mcs_step,
)
from .errors import ConfigError
from .model import Strategy
from .network import Adjacency, SquareLattice, build_network

__all__ = [
    "Uniform",
    "Gaussian",
    "Bimodal",
    "InitialReputationDist",
    "ObservableRecord",
    "SnapshotGrid",
    "SweepCell",
    "GridSpec",
    "TimeseriesResult",
    "observe",
    "classify_states",
    "classify_snapshot",
    "run_timeseries",
    "run_node_states",
    "steady_state_estimate",
    "sweep_grid",
    "STATE_HC",
    "STATE_HD",
    "STATE_LC",
    "STATE_LD",
]

# Integer codes for the four strategy x reputation-class states.
STATE_HC, STATE_HD, STATE_LC, STATE_LD = 0, 1, 2, 3


@dataclass(frozen=True)
class ObservableRecord:
    """One measurement row per Monte Carlo step."""

    step: int
    f_c: float
    theta: float
    n_hc: int
    n_hd: int
    n_lc: int
    n_ld: int
    mean_payoff: float


@dataclass(eq=False)
class SnapshotGrid:
    """side x side array of state codes (HC/HD/LC/LD) at one step."""

    step: int
    side: int
    cells: np.ndarray


@dataclass(frozen=True)
class SweepCell:
    """Steady-state statistics of one (p, m) parameter cell.

    ``f_c_reps``/``theta_reps`` keep the per-replicate estimates so the
    summary statistics can always be recomputed from their inputs.
    """

    p: float
    m: float
    b_l: float
    topology: str
    replicates: int
    f_c_mean: float
    f_c_std: float
    theta_mean: float
    f_c_reps: tuple[float, ...] = ()
    theta_reps: tuple[float, ...] = ()


@dataclass
class TimeseriesResult:
    records: list[ObservableRecord]
    snapshots: list[SnapshotGrid]


def observe(pop: PopulationState) -> ObservableRecord:
    high = pop.reputations > pop.theta
    n_hc = int(np.count_nonzero(pop.coop & high))
    n_hd = int(np.count_nonzero(~pop.coop & high))
    n_lc = int(np.count_nonzero(pop.coop & ~high))
    n_ld = pop.node_count - n_hc - n_hd - n_lc
    return ObservableRecord(
        step=pop.step,
        f_c=pop.f_c,
        theta=pop.theta,
        n_hc=n_hc,
        n_hd=n_hd,
        n_lc=n_lc,
        n_ld=n_ld,
        mean_payoff=float(np.mean(pop.round_payoffs)),
    )


def classify_states(pop: PopulationState) -> np.ndarray:
    """Per-node strategy/reputation-class codes (works on any topology)."""
    high = pop.reputations > pop.theta
    return np.where(
        pop.coop & high,
        STATE_HC,
        np.where(~pop.coop & high, STATE_HD, np.where(pop.coop, STATE_LC, STATE_LD)),
    ).astype(np.int8)


def classify_snapshot(pop: PopulationState) -> SnapshotGrid:
    """Label every lattice cell with its strategy/reputation-class state."""
    spec = pop.adjacency.spec
    if not isinstance(spec, SquareLattice):
        raise ConfigError("snapshots are only defined on square-lattice topologies")
    codes = classify_states(pop)
    return SnapshotGrid(step=pop.step, side=spec.side, cells=codes.reshape(spec.side, spec.side))


def dynamics_stream(config: RunConfig, replicate: int) -> RngStream:
    """The per-replicate dynamics stream; keyed by (seed, p, m, replicate)."""
    return RngStream(
        derive_seed(config.master_seed, "dynamics", config.params.p, config.params.m, replicate)
    )


def initial_population(config: RunConfig, adjacency: Adjacency | None = None) -> PopulationState:
    """Build the (replicate-shared) initial state for a config."""
    adj = adjacency if adjacency is not None else build_network(config.network)
    init_rng = RngStream(derive_seed(config.master_seed, "init"))
    return init_population(
        adj, config.init_dist, init_rng, config.params.r_min, config.params.r_max
    )


def run_timeseries(
    config: RunConfig,
    replicate: int = 0,
    force_strategy: Strategy | None = None,
    adjacency: Adjacency | None = None,
) -> TimeseriesResult:
    """One full trajectory: a record per MCS from step 0 to the horizon.

    Snapshots are captured at exactly the configured steps (step 0 is the
    pre-dynamics state). ``force_strategy`` overrides the random 50/50
    strategy assignment with a homogeneous population, which is useful for
    absorbing-state checks. ``adjacency`` lets callers reuse a prebuilt
    graph; it must match ``config.network``.
    """
    snapshot_steps = set(config.snapshot_steps)
    if snapshot_steps and not isinstance(config.network, SquareLattice):
        raise ConfigError("snapshot_steps requested on a non-lattice topology")

    pop = initial_population(config, adjacency)
    if force_strategy is not None:
        pop.coop = np.full(pop.node_count, force_strategy is Strategy.C, dtype=bool)

    rng = dynamics_stream(config, replicate)
    records = [observe(pop)]
    snapshots: list[SnapshotGrid] = []
    if 0 in snapshot_steps:
        snapshots.append(classify_snapshot(pop))
    for step in range(1, config.horizon + 1):
        mcs_step(pop, config.params, rng)
        records.append(observe(pop))
        if step in snapshot_steps:
            snapshots.append(classify_snapshot(pop))
    return TimeseriesResult(records=records, snapshots=snapshots)


def run_node_states(
    config: RunConfig, replicate: int = 0
) -> tuple[list[ObservableRecord], list[tuple[int, np.ndarray]]]:
    """Like :func:`run_timeseries`, but captures per-node state codes at the
    configured snapshot steps. Valid on any topology; this is the export
    path for graphs with no 2-D embedding."""
    wanted = set(config.snapshot_steps)
    pop = initial_population(config)
    rng = dynamics_stream(config, replicate)
    records = [observe(pop)]
    states = [(0, classify_states(pop))] if 0 in wanted else []
    for step in range(1, config.horizon + 1):
        mcs_step(pop, config.params, rng)
        records.append(observe(pop))
        if step in wanted:
            states.append((step, classify_states(pop)))
    return records, states


def steady_state_estimate(
    records: list[ObservableRecord], burn_in: int, window: int
) -> tuple[float, float]:
    """Time averages of f_c and theta over the final ``window`` records."""
    if window < 1:
        raise ConfigError(f"run.window must be >= 1, got {window}")
    if burn_in + window > len(records):
        raise ConfigError(
            f"run.burn_in + run.window exceed the series length "
            f"({burn_in} + {window} > {len(records)})"
        )
    tail = records[-window:]
    f_c_bar = float(np.mean([r.f_c for r in tail]))
    theta_bar = float(np.mean([r.theta for r in tail]))
    return f_c_bar, theta_bar


@dataclass(frozen=True)
class GridSpec:
    """A (p, m) product grid swept at fixed b_l and topology."""

    base: RunConfig
    p_values: tuple[float, ...]
    m_values: tuple[float, ...]
    replicates: int | None = None  # default: base.replicates
    jobs: int = 1

    def cell_configs(self) -> list[RunConfig]:
        out = []
        for p in self.p_values:
            for m in self.m_values:
                out.append(
                    replace(self.base, params=replace(self.base.params, p=p, m=m))
                )
        return out


def _run_cell(args: tuple[RunConfig, int]) -> SweepCell:
    config, n_reps = args
    adj = build_network(config.network)
    f_cs, thetas = [], []
    for rep in range(n_reps):
        result = run_timeseries(config, replicate=rep, adjacency=adj)
        f_c_bar, theta_bar = steady_state_estimate(
            result.records, config.burn_in, config.window
        )
        f_cs.append(f_c_bar)
        thetas.append(theta_bar)
    return SweepCell(
        p=config.params.p,
        m=config.params.m,
        b_l=config.params.b_l,
        topology=config.network.label,
        replicates=n_reps,
        f_c_mean=float(np.mean(f_cs)),
        f_c_std=float(np.std(f_cs)),
        theta_mean=float(np.mean(thetas)),
        f_c_reps=tuple(f_cs),
        theta_reps=tuple(thetas),
    )


def sweep_grid(grid: GridSpec) -> list[SweepCell]:
    """Run every (p, m) cell with its replicates; cells in row-major order.

    ``jobs`` > 1 distributes cells over worker processes; outputs are
    identical for any job count because every piece of randomness is keyed
    by coordinates, not by execution order.
    """
    n_reps = grid.replicates if grid.replicates is not None else grid.base.replicates
    tasks = [(cfg, n_reps) for cfg in grid.cell_configs()]
    if grid.jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=grid.jobs) as pool:
            return pool.map(_run_cell, tasks, chunksize=1)
    return [_run_cell(t) for t in tasks]
