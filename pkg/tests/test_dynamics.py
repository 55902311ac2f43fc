"""Engine tests: initialization, hand-traced rounds, determinism, invariants."""

import math

import numpy as np
import pytest

from repgame.dynamics import (
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
from repgame.model import ModelParams, Strategy
from repgame.network import Adjacency, build_lattice, build_small_world

from _reference import mcs_step_reference

C, D = Strategy.C, Strategy.D


def two_node_path() -> Adjacency:
    return Adjacency(node_count=2, neighbors=((1,), (0,)))


def make_pop(adj, coop, reps):
    reps = np.asarray(reps, dtype=np.float64)
    return PopulationState(
        adjacency=adj,
        coop=np.asarray(coop, dtype=bool),
        reputations=reps,
        round_payoffs=np.zeros(adj.node_count),
        theta=float(np.mean(reps)),
    )


# --- initialization ----------------------------------------------------------

def test_init_strategy_split_is_binomial():
    adj = build_lattice(50, True)
    pop = init_population(adj, Uniform(0, 2), RngStream(derive_seed(1, "init")))
    n_coop = int(np.count_nonzero(pop.coop))
    assert abs(n_coop - 1250) <= 75  # 3 sigma of Binomial(2500, 1/2)
    assert np.all(pop.round_payoffs == 0.0)
    assert np.all((pop.reputations >= 0.0) & (pop.reputations <= 2.0))
    assert pop.theta == pytest.approx(float(np.mean(pop.reputations)))
    assert pop.step == 0


def test_init_degenerate_gaussian():
    adj = build_lattice(4, True)
    pop = init_population(adj, Gaussian(mu=1.0, sigma=0.0), RngStream(3))
    assert np.all(pop.reputations == 1.0)
    assert pop.theta == 1.0
    assert not np.any(pop.reputations > pop.theta)  # everyone Low


def test_init_clamps_wide_gaussian():
    adj = build_lattice(10, True)
    pop = init_population(adj, Gaussian(mu=1.0, sigma=5.0), RngStream(4))
    assert np.all((pop.reputations >= 0.0) & (pop.reputations <= 2.0))
    assert np.any(pop.reputations == 0.0)
    assert np.any(pop.reputations == 2.0)


def test_init_bimodal_mixture_mean():
    dist = Bimodal()
    n = 10_000
    draws = np.clip(dist.sample(n, RngStream(11)), 0.0, 2.0)
    mean = dist.mixture_mean()
    var = (
        dist.weight * (dist.sigma1**2 + dist.mu1**2)
        + (1 - dist.weight) * (dist.sigma2**2 + dist.mu2**2)
        - mean**2
    )
    se = math.sqrt(var / n)
    assert abs(float(np.mean(draws)) - mean) < 3 * se
    assert mean == 1.0


def test_distribution_validation():
    with pytest.raises(ValueError):
        Uniform(2.0, 1.0)
    with pytest.raises(ValueError):
        Gaussian(1.0, -0.1)
    with pytest.raises(ValueError):
        Bimodal(weight=1.5)


# --- hand-traced interaction rounds -------------------------------------------

def test_round_all_cooperators_3x3():
    # 4 neighbors, all (C,C): every agent gains 4*delta; all pairs are Low
    # class (r = theta), so every encounter pays b_l - c.
    adj = build_lattice(3, True)
    pop = make_pop(adj, [True] * 9, [1.0] * 9)
    params = ModelParams(b_l=1.1, c=1.0, delta=0.1)
    interaction_round(pop, params, RngStream(0))
    assert np.all(pop.reputations == pytest.approx(1.0 + 4 * 0.1))
    assert pop.theta == pytest.approx(1.4)
    expected_pay = 4 * (params.b_l - params.c)
    assert np.all(np.isclose(pop.round_payoffs, expected_pay))
    assert pop.last_tally.n_cc == 18
    assert pop.last_tally.n_low == 18


def test_round_two_node_asymmetric_pair():
    pop = make_pop(two_node_path(), [True, False], [1.0, 1.0])
    params = ModelParams(b_l=1.1, c=1.0, delta=0.01)
    interaction_round(pop, params, RngStream(0))
    assert pop.reputations[0] == 1.0 + 2 * 0.01
    assert pop.reputations[1] == 1.0 - 2 * 0.01
    assert pop.theta == pytest.approx(1.0)  # zero-sum pair preserves the mean
    # both Low at theta=1 -> low game: cooperator pays -c, defector takes b_l
    assert pop.round_payoffs[0] == -1.0
    assert pop.round_payoffs[1] == pytest.approx(1.1)


def test_round_all_defectors_at_floor():
    adj = build_lattice(3, True)
    pop = make_pop(adj, [False] * 9, [0.0] * 9)
    params = ModelParams(delta=0.05)
    interaction_round(pop, params, RngStream(0))
    assert np.all(pop.reputations == 0.0)
    assert np.all(pop.round_payoffs == 0.0)
    assert pop.theta == 0.0


def test_round_uses_preround_threshold_and_reputations():
    # With r = (2, 0) and theta = 1 the pair is mixed; p=0 forces the low
    # game regardless of the draw.
    pop = make_pop(two_node_path(), [False, True], [2.0, 0.0])
    params = ModelParams(b_l=1.5, c=1.0, delta=0.01, p=0.0)
    interaction_round(pop, params, RngStream(5))
    assert pop.round_payoffs[0] == 1.5  # defector takes b_l in the low game
    assert pop.round_payoffs[1] == -1.0


def test_round_mixed_pair_high_game_uses_defector_reputation():
    pop = make_pop(two_node_path(), [False, True], [2.0, 0.0])
    params = ModelParams(b_l=1.5, c=1.0, delta=0.01, p=1.0)
    interaction_round(pop, params, RngStream(5))
    assert pop.round_payoffs[0] == 1.0  # r_self / 2 with r_i = 2.0
    assert pop.round_payoffs[1] == -1.0


def test_mean_reputation_change_matches_tally():
    adj = build_small_world(30, 4, 0.3, graph_seed=2)
    rng = RngStream(9)
    pop = init_population(adj, Uniform(0.6, 1.4), rng)
    params = ModelParams(delta=1e-4)  # small enough that no clamp triggers
    before = float(np.mean(pop.reputations))
    interaction_round(pop, params, rng)
    tally = pop.last_tally
    assert tally.total == adj.edge_count
    expected = before + 2 * params.delta * (tally.n_cc - tally.n_dd) / adj.node_count
    assert float(np.mean(pop.reputations)) == pytest.approx(expected, abs=1e-12)


def test_reputation_bounds_hold_over_many_steps():
    adj = build_small_world(40, 6, 0.5, graph_seed=8)
    rng = RngStream(10)
    pop = init_population(adj, Uniform(0, 2), rng)
    params = ModelParams(delta=0.2, m=0.7)
    for _ in range(60):
        mcs_step(pop, params, rng)
        assert np.all((pop.reputations >= 0.0) & (pop.reputations <= 2.0))
        assert pop.theta == pytest.approx(float(np.mean(pop.reputations)))


# --- strategy updates ----------------------------------------------------------

def test_homogeneous_populations_are_absorbing():
    adj = build_lattice(4, True)
    params = ModelParams()
    for strat in (True, False):
        pop = make_pop(adj, [strat] * 16, list(np.linspace(0, 2, 16)))
        rng = RngStream(12)
        for _ in range(20):
            mcs_step(pop, params, rng)
        assert np.all(pop.coop == strat)


def test_strategy_update_mutates_only_strategies():
    adj = build_lattice(4, True)
    rng = RngStream(13)
    pop = init_population(adj, Uniform(0, 2), rng)
    params = ModelParams()
    interaction_round(pop, params, rng)
    reps = pop.reputations.copy()
    pays = pop.round_payoffs.copy()
    theta = pop.theta
    strategy_update_async(pop, params, rng)
    assert np.array_equal(pop.reputations, reps)
    assert np.array_equal(pop.round_payoffs, pays)
    assert pop.theta == theta


def test_equal_fitness_adoption_statistics():
    # Two nodes, equal fitness: each of the 2 elementary updates adopts with
    # probability 1/2, so the run ends homogeneous unless both decline:
    # P(homogeneous) = 1/2 + 1/4 = 3/4.
    adj = two_node_path()
    params = ModelParams(m=0.0, kappa=0.1)
    rng = RngStream(99)
    n_trials = 10_000
    homogeneous = 0
    for _ in range(n_trials):
        pop = make_pop(adj, [True, False], [1.0, 1.0])
        strategy_update_async(pop, params, rng)
        homogeneous += int(pop.coop[0] == pop.coop[1])
    frac = homogeneous / n_trials
    sigma = math.sqrt(0.75 * 0.25 / n_trials)
    assert abs(frac - 0.75) < 3 * sigma


def test_two_node_mcs_fermi_trace():
    # After the round: reps (1.02, 0.98); with m=0 fitness equals reputation,
    # so the defector adopts C with probability 1/(1 + exp(-0.4)).
    pop = make_pop(two_node_path(), [True, False], [1.0, 1.0])
    params = ModelParams(b_l=1.1, c=1.0, delta=0.01, m=0.0, kappa=0.1)
    interaction_round(pop, params, RngStream(3))
    f_c = params.m * pop.round_payoffs[0] + (1 - params.m) * pop.reputations[0]
    f_d = params.m * pop.round_payoffs[1] + (1 - params.m) * pop.reputations[1]
    assert (f_c, f_d) == (1.02, 0.98)
    from repgame.model import fermi_adopt_prob

    expected = 1.0 / (1.0 + math.exp(-0.4))
    assert fermi_adopt_prob(f_d, f_c, params.kappa) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.598687660112452, abs=1e-12)


# --- determinism and engine equivalence ----------------------------------------

def test_fixed_seed_reproduces_trajectory():
    adj = build_small_world(36, 4, 0.4, graph_seed=5)
    params = ModelParams(delta=0.05, m=0.4)

    def run(seed):
        rng = RngStream(derive_seed(seed, "dynamics", params.p, params.m, 0))
        pop = init_population(adj, Uniform(0, 2), RngStream(derive_seed(seed, "init")))
        series = []
        for _ in range(30):
            mcs_step(pop, params, rng)
            series.append((pop.f_c, pop.theta))
        return pop, series

    pop_a, series_a = run(42)
    pop_b, series_b = run(42)
    assert series_a == series_b
    assert np.array_equal(pop_a.coop, pop_b.coop)
    assert np.array_equal(pop_a.reputations, pop_b.reputations)
    _, series_c = run(43)
    assert series_a != series_c


@pytest.mark.parametrize(
    "adj_factory,params",
    [
        (lambda: build_lattice(4, True), ModelParams()),
        (lambda: build_lattice(3, False), ModelParams(b_l=1.8, delta=0.07, m=0.9, p=0.2)),
        (
            lambda: build_small_world(14, 4, 0.6, graph_seed=21),
            ModelParams(b_l=1.3, delta=0.02, m=0.1, kappa=0.3, p=0.6),
        ),
        (
            lambda: build_small_world(11, 4, 1.0, graph_seed=2),
            ModelParams(shared_cost_variant=True, cumulative_payoff=True),
        ),
    ],
)
def test_engine_matches_scalar_reference(adj_factory, params):
    adj = adj_factory()
    pop_fast = init_population(adj, Uniform(0, 2), RngStream(7))
    pop_ref = pop_fast.copy()
    rng_fast = RngStream((1, 2, 3))
    rng_ref = RngStream((1, 2, 3))
    for _ in range(3):
        mcs_step(pop_fast, params, rng_fast)
        mcs_step_reference(pop_ref, params, rng_ref)
        assert np.array_equal(pop_fast.coop, pop_ref.coop)
        assert np.array_equal(pop_fast.reputations, pop_ref.reputations)
        assert np.allclose(pop_fast.round_payoffs, pop_ref.round_payoffs, atol=1e-12)
        assert pop_fast.theta == pytest.approx(pop_ref.theta, abs=1e-12)


def test_agent_accessor_and_copy():
    pop = make_pop(two_node_path(), [True, False], [1.5, 0.5])
    agent = pop.agent(1)
    assert agent.strategy is D
    assert agent.reputation == 0.5
    clone = pop.copy()
    clone.coop[0] = False
    clone.reputations[0] = 0.0
    assert pop.coop[0] and pop.reputations[0] == 1.5


def test_mcs_step_increments_counter():
    adj = build_lattice(3, True)
    rng = RngStream(1)
    pop = init_population(adj, Uniform(0, 2), rng)
    mcs_step(pop, ModelParams(), rng)
    mcs_step(pop, ModelParams(), rng)
    assert pop.step == 2
