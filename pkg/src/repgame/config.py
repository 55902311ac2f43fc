"""Run configuration: the single object describing a complete experiment.

The on-disk format is INI-style (flat sections of key=value pairs, parsed by
``configparser``); every key is optional and falls back to the documented
default. Unknown sections or keys are rejected so typos fail loudly. See
:mod:`repgame.io` for loading/saving.

Sections and defaults::

    [network]  kind=lattice   side=50  periodic=true
               # kind=small_world   n=2500  k=10  beta=0.5  graph_seed=<derived>
    [params]   b_l=1.1  c=1.0  delta=0.01  p=0.9  m=0.5  kappa=0.1
               r_min=0.0  r_max=2.0  shared_cost=false  cumulative_payoff=false
    [init]     dist=uniform  lo=0.0  hi=2.0
               # dist=gaussian  mu=1.0  sigma=0.3
               # dist=bimodal   mu1=0.5 sigma1=0.15 mu2=1.5 sigma2=0.15 weight=0.5
    [run]      horizon=5000  burn_in=4500  window=500  snapshot_steps=
               replicates=10  master_seed=1
    [output]   dir=out

When ``graph_seed`` is omitted for a small-world network it is derived from
``master_seed``, so a config file pins the whole experiment with one number.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .dynamics import InitialReputationDist, Uniform, derive_seed
from .errors import ConfigError
from .model import ModelParams
from .network import NetworkSpec, SmallWorld, SquareLattice

__all__ = ["RunConfig", "PRESETS", "preset", "fig4_text_variant", "seed_to_int"]


def seed_to_int(entropy: tuple[int, ...]) -> int:
    """Collapse a derived entropy tuple to a single reproducible integer."""
    return int(np.random.SeedSequence(list(entropy)).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs: topology, model knobs, init, schedule, seed."""

    network: NetworkSpec = field(default_factory=lambda: SquareLattice(50, True))
    params: ModelParams = field(default_factory=ModelParams)
    init_dist: InitialReputationDist = field(default_factory=Uniform)
    horizon: int = 5000
    burn_in: int = 4500
    window: int = 500
    snapshot_steps: tuple[int, ...] = ()
    replicates: int = 10
    master_seed: int = 1
    output_dir: str = "out"

    def __post_init__(self):
        if self.horizon < 1:
            raise ConfigError(f"run.horizon must be >= 1, got {self.horizon}")
        if self.window < 1:
            raise ConfigError(f"run.window must be >= 1, got {self.window}")
        if self.burn_in < 0:
            raise ConfigError(f"run.burn_in must be >= 0, got {self.burn_in}")
        if self.burn_in + self.window > self.horizon:
            raise ConfigError(
                "run.burn_in + run.window must not exceed run.horizon "
                f"({self.burn_in} + {self.window} > {self.horizon})"
            )
        if any(s < 0 or s > self.horizon for s in self.snapshot_steps):
            raise ConfigError(
                f"run.snapshot_steps must lie in [0, {self.horizon}], got {self.snapshot_steps}"
            )
        if self.replicates < 1:
            raise ConfigError(f"run.replicates must be >= 1, got {self.replicates}")
        if self.master_seed < 0:
            raise ConfigError(f"run.master_seed must be >= 0, got {self.master_seed}")


def _ws(master_seed: int = 1) -> SmallWorld:
    return SmallWorld(2500, 10, 0.5, graph_seed=seed_to_int(derive_seed(master_seed, "graph")))


_FIG4_SNAPSHOTS = (0, 500, 2000, 3000)


def _fig4(b_l: float) -> RunConfig:
    return RunConfig(
        network=SquareLattice(50, True),
        params=ModelParams(b_l=b_l, c=1.0, p=0.9, m=0.6),
        horizon=3000,
        burn_in=2500,
        window=500,
        snapshot_steps=_FIG4_SNAPSHOTS,
        replicates=5,
    )


# Named experiment presets. fig2-*/fig5-* are sweep bases (the m grid is
# supplied at sweep time); fig4-* capture snapshots at four representative
# steps; fig6 is the robustness base whose topology, m, and init
# distribution get varied by the caller.
PRESETS: dict[str, RunConfig] = {
    "fig2-sl": RunConfig(),
    "fig2-ws": replace(RunConfig(), network=_ws()),
    "fig4-b11": _fig4(1.1),
    "fig4-b15": _fig4(1.5),
    "fig4-b20": _fig4(2.0),
    "fig5-sl": RunConfig(),
    "fig5-ws": replace(RunConfig(), network=_ws()),
    "fig6": replace(RunConfig(), params=ModelParams(b_l=1.5, c=1.0, p=0.9, m=0.5)),
}

PRESET_NOTES: dict[str, str] = {
    "fig2-sl": "lattice 50x50, b_l=1.1, p=0.9; sweep m for the cooperation transition",
    "fig2-ws": "small-world N=2500 k=10 beta=0.5, b_l=1.1, p=0.9; sweep m",
    "fig4-b11": "lattice, p=0.9, m=0.6, b_l=1.1; snapshots at 0/500/2000/3000",
    "fig4-b15": "lattice, p=0.9, m=0.6, b_l=1.5; snapshots at 0/500/2000/3000",
    "fig4-b20": "lattice, p=0.9, m=0.6, b_l=2.0; snapshots at 0/500/2000/3000",
    "fig5-sl": "lattice, p=0.9; sweep m per b_l for steady-state thresholds",
    "fig5-ws": "small-world, p=0.9; sweep m per b_l for steady-state thresholds",
    "fig6": "b_l=1.5, p=0.9; vary topology, m, and init distribution",
}


def preset(name: str) -> RunConfig:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset {name!r}; available: {known}") from None


def fig4_text_variant(name: str) -> RunConfig:
    """The fig4 settings with m=0.5 instead of the registered 0.6 (both
    readings of the snapshot experiment are kept available)."""
    cfg = preset(name)
    return replace(cfg, params=replace(cfg.params, m=0.5))
