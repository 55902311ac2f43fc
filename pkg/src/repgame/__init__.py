"""Reputation-driven game transitions on networks: model, engine, experiments."""

from .dynamics import (
    Bimodal,
    Gaussian,
    PopulationState,
    RngStream,
    Uniform,
    derive_seed,
    init_population,
    interaction_round,
    mcs_step,
    strategy_update_async,
)
from .model import (
    GameKind,
    ModelParams,
    ReputationClass,
    Strategy,
    classify,
    clamp_reputation,
    compute_threshold,
    fermi_adopt_prob,
    fitness,
    payoff_pair,
    reputation_delta,
    select_game_kind,
)
from .config import PRESETS, RunConfig, preset
from .experiments import (
    GridSpec,
    ObservableRecord,
    SnapshotGrid,
    SweepCell,
    TimeseriesResult,
    classify_snapshot,
    observe,
    run_timeseries,
    steady_state_estimate,
    sweep_grid,
)
from .io import load_config, save_config
from .network import Adjacency, SmallWorld, SquareLattice, build_lattice, build_small_world

__version__ = "0.1.0"
