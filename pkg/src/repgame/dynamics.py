"""The Monte Carlo engine.

One Monte Carlo step (MCS) is an interaction round over every edge followed
by N asynchronous Fermi strategy updates. The engine mutates a single
:class:`PopulationState` sequentially; parallelism only ever happens across
independent replicates, each with its own state and RNG stream.

Determinism contract
--------------------
Streams are numpy PCG64 generators keyed by a seed (or an entropy tuple from
:func:`derive_seed`), so identical seeds give identical trajectories on any
platform. Draw order is fixed:

* ``init_population``: N uniforms (strategies), then the distribution's
  draws (N uniforms for Uniform; N standard normals for Gaussian; N uniforms
  then N standard normals for Bimodal).
* ``interaction_round``: one uniform per edge (lexicographic edge order),
  consumed whether or not the pair is mixed-class.
* ``strategy_update_async``: three blocks of N draws -- focal indices,
  neighbor-pick uniforms, adoption uniforms.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

from .model import _P_HI, _P_LO, ModelParams, Strategy
from .network import Adjacency

__all__ = [
    "Uniform",
    "Gaussian",
    "Bimodal",
    "InitialReputationDist",
    "RngStream",
    "derive_seed",
    "AgentState",
    "EncounterTally",
    "PopulationState",
    "init_population",
    "interaction_round",
    "strategy_update_async",
    "mcs_step",
]


# ---------------------------------------------------------------------------
# Initial reputation distributions


@dataclass(frozen=True)
class Uniform:
    lo: float = 0.0
    hi: float = 2.0

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"lo must be below hi, got [{self.lo}, {self.hi}]")

    def sample(self, n: int, rng: RngStream) -> np.ndarray:
        return self.lo + (self.hi - self.lo) * rng.random(n)


@dataclass(frozen=True)
class Gaussian:
    mu: float = 1.0
    sigma: float = 0.3

    def __post_init__(self):
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")

    def sample(self, n: int, rng: RngStream) -> np.ndarray:
        return self.mu + self.sigma * rng.standard_normal(n)


@dataclass(frozen=True)
class Bimodal:
    """Two-component Gaussian mixture; ``weight`` is the first component's share."""

    mu1: float = 0.5
    sigma1: float = 0.15
    mu2: float = 1.5
    sigma2: float = 0.15
    weight: float = 0.5

    def __post_init__(self):
        if self.sigma1 < 0.0:
            raise ValueError(f"sigma1 must be >= 0, got {self.sigma1}")
        if self.sigma2 < 0.0:
            raise ValueError(f"sigma2 must be >= 0, got {self.sigma2}")
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"weight must be in [0, 1], got {self.weight}")

    def sample(self, n: int, rng: RngStream) -> np.ndarray:
        first = rng.random(n) < self.weight
        z = rng.standard_normal(n)
        return np.where(first, self.mu1 + self.sigma1 * z, self.mu2 + self.sigma2 * z)

    def mixture_mean(self) -> float:
        return self.weight * self.mu1 + (1.0 - self.weight) * self.mu2


InitialReputationDist = Uniform | Gaussian | Bimodal


# ---------------------------------------------------------------------------
# Seeded randomness


def derive_seed(master: int, *tags) -> tuple[int, ...]:
    """Entropy tuple for a named sub-stream of ``master``.

    Tags may be ints, floats (hashed by their IEEE-754 bit pattern) or short
    strings (hashed by crc32), so derivation depends only on the coordinates
    of the stream -- never on draw order or scheduling.
    """
    parts: list[int] = [int(master)]
    for tag in tags:
        if isinstance(tag, bool):
            parts.append(int(tag))
        elif isinstance(tag, int):
            parts.append(tag)
        elif isinstance(tag, float):
            parts.append(int(np.float64(tag).view(np.uint64)))
        elif isinstance(tag, str):
            parts.append(zlib.crc32(tag.encode("utf-8")))
        else:
            raise TypeError(f"cannot derive a seed from tag {tag!r}")
    return tuple(parts)


class RngStream:
    """A seeded PCG64 stream; identical seeds yield identical sequences."""

    def __init__(self, seed: int | tuple[int, ...]):
        self.seed = seed
        entropy = list(seed) if isinstance(seed, tuple) else seed
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))

    def random(self, n: int | None = None):
        return self._gen.random(n)

    def integers(self, low: int, high: int, n: int | None = None):
        return self._gen.integers(low, high, size=n)

    def standard_normal(self, n: int | None = None):
        return self._gen.standard_normal(n)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed!r})"


# ---------------------------------------------------------------------------
# Population state


@dataclass(frozen=True)
class AgentState:
    strategy: Strategy
    reputation: float
    round_payoff: float


@dataclass(frozen=True)
class EncounterTally:
    """Per-round encounter bookkeeping (one encounter per undirected edge)."""

    n_cc: int
    n_cd: int
    n_dd: int
    n_high: int
    n_low: int

    @property
    def total(self) -> int:
        return self.n_cc + self.n_cd + self.n_dd


@dataclass
class PopulationState:
    """Full simulation state: strategies, reputations, payoffs, threshold.

    Stored as arrays indexed by node (``coop[i]`` is True when agent i
    cooperates). ``theta`` always equals the mean of ``reputations``;
    ``last_tally`` records the most recent interaction round.
    """

    adjacency: Adjacency
    coop: np.ndarray
    reputations: np.ndarray
    round_payoffs: np.ndarray
    theta: float
    step: int = 0
    last_tally: EncounterTally | None = field(default=None, compare=False)

    @property
    def node_count(self) -> int:
        return self.adjacency.node_count

    @property
    def f_c(self) -> float:
        return float(np.mean(self.coop))

    def agent(self, i: int) -> AgentState:
        return AgentState(
            strategy=Strategy.C if self.coop[i] else Strategy.D,
            reputation=float(self.reputations[i]),
            round_payoff=float(self.round_payoffs[i]),
        )

    def copy(self) -> PopulationState:
        return PopulationState(
            adjacency=self.adjacency,
            coop=self.coop.copy(),
            reputations=self.reputations.copy(),
            round_payoffs=self.round_payoffs.copy(),
            theta=self.theta,
            step=self.step,
            last_tally=self.last_tally,
        )


def init_population(
    adjacency: Adjacency,
    dist: InitialReputationDist,
    rng: RngStream,
    r_min: float = 0.0,
    r_max: float = 2.0,
) -> PopulationState:
    """Fresh population: strategies C/D with equal probability, reputations
    sampled from ``dist`` and clamped to [r_min, r_max], zero payoffs."""
    n = adjacency.node_count
    coop = rng.random(n) < 0.5
    reputations = np.clip(dist.sample(n, rng).astype(np.float64), r_min, r_max)
    return PopulationState(
        adjacency=adjacency,
        coop=coop,
        reputations=reputations,
        round_payoffs=np.zeros(n, dtype=np.float64),
        theta=float(np.mean(reputations)),
        step=0,
    )


def interaction_round(
    pop: PopulationState, params: ModelParams, rng: RngStream
) -> PopulationState:
    """Play every undirected edge exactly once, then apply reputations in batch.

    Classification and all payoff math use the pre-round threshold and
    reputations uniformly, so the outcome does not depend on edge order.
    Reputation deltas accumulate in a buffer and are clamped into place only
    after the whole round; the threshold is then recomputed. Mutates ``pop``
    in place and returns it.
    """
    adj = pop.adjacency
    n = adj.node_count
    ei, ej = adj.edge_arrays
    reps = pop.reputations
    coop = pop.coop

    high = reps > pop.theta
    hi, hj = high[ei], high[ej]
    draws = rng.random(len(ei))
    high_game = (hi & hj) | ((hi ^ hj) & (draws < params.p))

    ci, cj = coop[ei], coop[ej]
    cc = ci & cj
    dd = ~ci & ~cj
    i_only = ci & ~cj
    j_only = cj & ~ci

    ri, rj = reps[ei], reps[ej]
    coop_cost = 0.5 * params.c if params.shared_cost_variant else params.c
    cc_pay = np.where(high_game, 0.5 * (ri + rj) - coop_cost, params.b_l - params.c)
    defect_pay_i = np.where(high_game, 0.5 * ri, params.b_l)
    defect_pay_j = np.where(high_game, 0.5 * rj, params.b_l)

    pay_i = np.where(cc, cc_pay, np.where(i_only, -params.c, np.where(j_only, defect_pay_i, 0.0)))
    pay_j = np.where(cc, cc_pay, np.where(j_only, -params.c, np.where(i_only, defect_pay_j, 0.0)))

    d = params.delta
    d_i = np.where(cc, d, np.where(dd, -d, np.where(i_only, 2.0 * d, -2.0 * d)))
    d_j = np.where(cc, d, np.where(dd, -d, np.where(j_only, 2.0 * d, -2.0 * d)))

    round_pay = np.bincount(ei, weights=pay_i, minlength=n) + np.bincount(
        ej, weights=pay_j, minlength=n
    )
    if params.cumulative_payoff:
        pop.round_payoffs = pop.round_payoffs + round_pay
    else:
        pop.round_payoffs = round_pay

    buffer = np.bincount(ei, weights=d_i, minlength=n) + np.bincount(
        ej, weights=d_j, minlength=n
    )
    pop.reputations = np.clip(reps + buffer, params.r_min, params.r_max)
    pop.theta = float(np.mean(pop.reputations))

    n_cc = int(np.count_nonzero(cc))
    n_dd = int(np.count_nonzero(dd))
    n_high = int(np.count_nonzero(high_game))
    pop.last_tally = EncounterTally(
        n_cc=n_cc,
        n_cd=len(ei) - n_cc - n_dd,
        n_dd=n_dd,
        n_high=n_high,
        n_low=len(ei) - n_high,
    )
    return pop


def strategy_update_async(
    pop: PopulationState, params: ModelParams, rng: RngStream
) -> PopulationState:
    """N elementary Fermi updates with immediate (asynchronous) adoption.

    Each update picks a focal agent i uniformly, a neighbor j uniformly from
    its neighborhood, and copies j's current strategy with the Fermi
    probability. Fitness uses the round just played and is NOT recomputed
    after adoptions, so the probabilities are frozen for the whole phase;
    only the strategy labels being copied evolve within it. Mutates only
    strategies.
    """
    n = pop.node_count
    indptr, flat, degs = pop.adjacency.csr

    i_idx = rng.integers(0, n, n)
    u_nbr = rng.random(n)
    u_adopt = rng.random(n)
    j_idx = flat[indptr[i_idx] + (u_nbr * degs[i_idx]).astype(np.int64)]

    f = params.m * pop.round_payoffs + (1.0 - params.m) * pop.reputations
    x = (f[i_idx] - f[j_idx]) / params.kappa
    e = np.exp(-np.abs(x))
    prob = np.clip(np.where(x >= 0.0, e / (1.0 + e), 1.0 / (1.0 + e)), _P_LO, _P_HI)
    adopted = u_adopt < prob

    strategies = pop.coop.tolist()
    for a, b in zip(i_idx[adopted].tolist(), j_idx[adopted].tolist()):
        strategies[a] = strategies[b]
    pop.coop = np.array(strategies, dtype=bool)
    return pop


def mcs_step(pop: PopulationState, params: ModelParams, rng: RngStream) -> PopulationState:
    """One Monte Carlo step: interaction round, then N strategy updates."""
    interaction_round(pop, params, rng)
    strategy_update_async(pop, params, rng)
    pop.step += 1
    return pop
