"""Stateless model mathematics.

Everything here is a pure function of its arguments: payoffs for the two game
kinds, the adaptive threshold and the high/low classification it induces,
reputation increments and clamping, fitness, and the Fermi adoption
probability. The Monte Carlo engine in :mod:`repgame.dynamics` applies
vectorized equivalents of these functions; the scalar forms are the contract
and the reference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Strategy",
    "GameKind",
    "ReputationClass",
    "ModelParams",
    "PayoffPair",
    "compute_threshold",
    "classify",
    "select_game_kind",
    "payoff_pair",
    "reputation_delta",
    "clamp_reputation",
    "fitness",
    "fermi_adopt_prob",
]


class Strategy(Enum):
    C = "C"
    D = "D"


class GameKind(Enum):
    HIGH_VALUE = "high"
    LOW_VALUE = "low"


class ReputationClass(Enum):
    HIGH = "H"
    LOW = "L"


@dataclass(frozen=True)
class ModelParams:
    """All scalar knobs of the model.

    ``b_l``/``c`` parameterize the fixed low-value dilemma, ``delta`` the
    per-encounter reputation step, ``p`` the chance that a mixed-class pair
    plays the high-value game, ``m`` the payoff-vs-reputation weight in
    fitness, and ``kappa`` the Fermi noise. Reputations live in
    [r_min, r_max]. ``shared_cost_variant`` switches the mutual-cooperation
    entry of the high-value game from rbar - c to rbar - c/2;
    ``cumulative_payoff`` makes fitness use lifetime instead of per-round
    accumulated payoffs. Both flags default off.
    """

    b_l: float = 1.1
    c: float = 1.0
    delta: float = 0.01
    p: float = 0.9
    m: float = 0.5
    kappa: float = 0.1
    r_min: float = 0.0
    r_max: float = 2.0
    shared_cost_variant: bool = False
    cumulative_payoff: bool = False

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.m <= 1.0:
            raise ValueError(f"m must be in [0, 1], got {self.m}")
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if not self.delta > 0.0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not self.r_min < self.r_max:
            raise ValueError(f"r_min must be below r_max, got [{self.r_min}, {self.r_max}]")

    def pd_ordering_ok(self) -> bool:
        """Whether the low game is a strict prisoner's dilemma (b_l > c > 0).

        A violation leaves the model well-defined, so it is reported rather
        than raised; config loading turns it into a warning.
        """
        return self.b_l > self.c > 0.0


@dataclass(frozen=True)
class PayoffPair:
    pi_i: float
    pi_j: float


def compute_threshold(reputations) -> float:
    """Adaptive threshold: the arithmetic mean of the current reputations."""
    n = len(reputations)
    if n == 0:
        raise ValueError("cannot compute a threshold for an empty population")
    return float(sum(reputations) / n)


def classify(r: float, theta: float) -> ReputationClass:
    """High-reputation strictly above the threshold; the boundary is Low."""
    return ReputationClass.HIGH if r > theta else ReputationClass.LOW


def select_game_kind(
    class_i: ReputationClass,
    class_j: ReputationClass,
    p: float,
    draw: float,
) -> GameKind:
    """Game kind for a pair: HH plays high, LL plays low, mixed pairs play
    high with probability p (``draw`` is the pair's uniform sample)."""
    if class_i is ReputationClass.HIGH and class_j is ReputationClass.HIGH:
        return GameKind.HIGH_VALUE
    if class_i is ReputationClass.LOW and class_j is ReputationClass.LOW:
        return GameKind.LOW_VALUE
    return GameKind.HIGH_VALUE if draw < p else GameKind.LOW_VALUE


def payoff_pair(
    kind: GameKind,
    s_i: Strategy,
    s_j: Strategy,
    r_i: float,
    r_j: float,
    params: ModelParams,
) -> PayoffPair:
    """Payoffs realized by one encounter.

    Low-value game: the fixed dilemma with temptation b_l and cost c.
    High-value game: mutual cooperation pays rbar - c each (rbar the pair's
    mean reputation; rbar - c/2 under the shared-cost variant), a defector
    facing a cooperator pockets half its own reputation, the exploited
    cooperator pays -c, and mutual defection pays nothing.
    """
    ci = s_i is Strategy.C
    cj = s_j is Strategy.C
    if kind is GameKind.LOW_VALUE:
        if ci and cj:
            v = params.b_l - params.c
            return PayoffPair(v, v)
        if ci and not cj:
            return PayoffPair(-params.c, params.b_l)
        if not ci and cj:
            return PayoffPair(params.b_l, -params.c)
        return PayoffPair(0.0, 0.0)
    if ci and cj:
        rbar = 0.5 * (r_i + r_j)
        v = rbar - (0.5 * params.c if params.shared_cost_variant else params.c)
        return PayoffPair(v, v)
    if ci and not cj:
        return PayoffPair(-params.c, 0.5 * r_j)
    if not ci and cj:
        return PayoffPair(0.5 * r_i, -params.c)
    return PayoffPair(0.0, 0.0)


def reputation_delta(s_i: Strategy, s_j: Strategy, delta: float) -> float:
    """Reputation change of agent i from one encounter with j.

    Mutual cooperation earns +delta, mutual defection costs -delta;
    asymmetric encounters move twice as far (+2*delta for the cooperator,
    -2*delta for the defector), so they are pairwise zero-sum.
    """
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if s_i is s_j:
        return delta if s_i is Strategy.C else -delta
    return 2.0 * delta if s_i is Strategy.C else -2.0 * delta


def clamp_reputation(raw: float, params: ModelParams) -> float:
    """Confine a raw reputation to [r_min, r_max]."""
    if not math.isfinite(raw):
        raise ValueError(f"reputation must be finite, got {raw}")
    return min(max(raw, params.r_min), params.r_max)


def fitness(payoff: float, r: float, m: float) -> float:
    """Weighted mix of accumulated payoff and current reputation."""
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"m must be in [0, 1], got {m}")
    return m * payoff + (1.0 - m) * r


# Probabilities are kept strictly inside (0, 1): adoption must stay possible
# in principle however large the fitness gap.
_P_LO = math.nextafter(0.0, 1.0)
_P_HI = math.nextafter(1.0, 0.0)


def fermi_adopt_prob(f_i: float, f_j: float, kappa: float) -> float:
    """Probability that i adopts j's strategy: 1 / (1 + exp((f_i - f_j) / kappa)).

    Overflow-safe: large |f_i - f_j| saturates toward 0 or 1 without any
    non-finite intermediate, and the result is clamped to the open (0, 1).
    """
    if kappa <= 0.0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    x = (f_i - f_j) / kappa
    if x >= 0.0:
        e = math.exp(-x)
        prob = e / (1.0 + e)
    else:
        prob = 1.0 / (1.0 + math.exp(x))
    return min(max(prob, _P_LO), _P_HI)
