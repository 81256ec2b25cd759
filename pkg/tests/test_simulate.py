import math

import numpy as np
import pytest

from gameprice import (
    Game,
    InvariantViolation,
    Rate,
    SimConfig,
    expected_log_growth,
    fair_coin,
    price_general,
    simulate_growth,
    sweep_proportion,
)
from gameprice.simulate import sweep_rows_csv

COIN = fair_coin()
G = math.exp(0.05)
GAME_A = Game([19, 1])
GAME_B = Game([10, 10])


class TestSimConfig:
    def test_validates_fields(self):
        with pytest.raises(InvariantViolation):
            SimConfig(attempts=0, paths=1, seed=0, price=1.0, proportion=0.5)
        with pytest.raises(InvariantViolation):
            SimConfig(attempts=1, paths=1, seed=0, price=0.0, proportion=0.5)
        with pytest.raises(InvariantViolation):
            SimConfig(attempts=1, paths=1, seed=0, price=1.0, proportion=1.5)


class TestSimulateGrowth:
    def test_deterministic_for_fixed_seed(self):
        cfg = SimConfig(attempts=500, paths=64, seed=1234, price=7.224, proportion=0.274)
        a = simulate_growth(GAME_A, COIN, cfg)
        b = simulate_growth(GAME_A, COIN, cfg)
        assert a == b

    def test_seed_changes_draws(self):
        cfg = SimConfig(attempts=500, paths=64, seed=1, price=7.224, proportion=0.274)
        cfg2 = SimConfig(attempts=500, paths=64, seed=2, price=7.224, proportion=0.274)
        assert simulate_growth(GAME_A, COIN, cfg) != simulate_growth(GAME_A, COIN, cfg2)

    def test_game_b_growth_is_exactly_riskfree(self):
        u = price_general(GAME_B, COIN, Rate(0.05)).price
        cfg = SimConfig(attempts=100, paths=5, seed=0, price=u, proportion=1.0)
        rep = simulate_growth(GAME_B, COIN, cfg)
        assert rep.mean_growth == pytest.approx(G, rel=1e-12)
        assert rep.var_growth == 0.0

    def test_zero_stake_growth_is_one(self):
        cfg = SimConfig(attempts=100, paths=7, seed=0, price=5.0, proportion=0.0)
        rep = simulate_growth(GAME_A, COIN, cfg)
        assert rep.mean_growth == 1.0
        assert rep.var_growth == 0.0

    def test_game_a_converges_to_riskfree_growth(self):
        cfg = SimConfig(
            attempts=10_000, paths=1_000, seed=7, price=7.224, proportion=0.274
        )
        rep = simulate_growth(GAME_A, COIN, cfg)
        assert abs(rep.mean_growth - G) <= 3 * rep.ci_halfwidth
        assert rep.var_growth < 1e-4

    def test_ruin_at_the_stake_cap_counts_failures(self):
        # payoff 0 with t = 1 zeroes capital on the first tail
        cfg = SimConfig(attempts=10, paths=50, seed=3, price=0.5, proportion=1.0)
        rep = simulate_growth(Game([0, 2]), COIN, cfg)
        assert rep.failed_paths > 0

    def test_variance_decays_with_attempts(self):
        small = SimConfig(attempts=100, paths=400, seed=11, price=7.224, proportion=0.274)
        large = SimConfig(
            attempts=10_000, paths=400, seed=11, price=7.224, proportion=0.274
        )
        v_small = simulate_growth(GAME_A, COIN, small).var_growth
        v_large = simulate_growth(GAME_A, COIN, large).var_growth
        assert v_large <= 0.1 * v_small

    def test_mean_matches_analytic_limit(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            pay = rng.uniform(0.5, 30.0, 2)
            game = Game(pay)
            res = price_general(game, COIN, Rate(0.05))
            cfg = SimConfig(
                attempts=4_000, paths=400, seed=int(rng.integers(1, 2**31)),
                price=res.price, proportion=min(res.proportion, 1.0),
            )
            rep = simulate_growth(game, COIN, cfg)
            limit = math.exp(
                expected_log_growth(game, COIN, cfg.price, cfg.proportion)
            )
            assert abs(rep.mean_growth - limit) <= 3 * rep.ci_halfwidth + 1e-12


class TestSweep:
    def test_argmax_near_optimal_proportion(self):
        u = 7.224
        cfg = SimConfig(attempts=20_000, paths=200, seed=5, price=u, proportion=0.0)
        rows = sweep_proportion(GAME_A, COIN, u, 21, cfg)
        best = max(rows, key=lambda r: r.mean_growth)
        step = rows[1].proportion - rows[0].proportion
        assert abs(best.proportion - 0.2736) <= 2 * step

    def test_constant_game_below_fair_price_wants_full_stake(self):
        u = 9.0  # below 10/e^r
        cfg = SimConfig(attempts=500, paths=50, seed=5, price=u, proportion=0.0)
        rows = sweep_proportion(GAME_B, COIN, u, 11, cfg)
        best = max(rows, key=lambda r: r.mean_growth)
        assert best.proportion == 1.0
        growths = [r.mean_growth for r in rows]
        assert growths == sorted(growths)

    def test_at_expectation_zero_stake_is_best(self):
        u = 10.0
        cfg = SimConfig(attempts=20_000, paths=300, seed=9, price=u, proportion=0.0)
        rows = sweep_proportion(GAME_A, COIN, u, 11, cfg)
        best = max(rows, key=lambda r: r.mean_growth)
        step = rows[1].proportion - rows[0].proportion
        assert best.proportion <= 2 * step

    def test_grid_too_small_rejected(self):
        cfg = SimConfig(attempts=10, paths=2, seed=0, price=7.0, proportion=0.0)
        with pytest.raises(InvariantViolation):
            sweep_proportion(GAME_A, COIN, 7.0, 2, cfg)

    def test_csv_columns(self):
        cfg = SimConfig(attempts=50, paths=10, seed=0, price=7.0, proportion=0.0)
        rows = sweep_proportion(GAME_A, COIN, 7.0, 3, cfg)
        text = sweep_rows_csv(rows)
        assert text.splitlines()[0] == "t,mean_growth,var_growth,ci"
        assert len(text.splitlines()) == 4
