import math

import pytest

from gameprice import (
    Game,
    InvariantViolation,
    OutcomeSpace,
    Rate,
    compare_mean_variance,
    fair_coin,
    joint_space,
    one_fund_weight,
    put_call_parity,
    variance,
)

R02S = Rate(0.02, "simple")
R05 = Rate(0.05)
COIN = fair_coin()
X = Game([50, 1])
Y = Game([30.6191, 14])

W_ONEFUND = 0.29322211318455194


class TestJointSpace:
    def test_uniform_four_outcomes(self):
        space, x4, y4 = joint_space(X, Y)
        assert space.probs.tolist() == [0.25] * 4
        assert x4.payoffs.tolist() == [50.0, 50.0, 1.0, 1.0]
        assert y4.payoffs.tolist() == [30.6191, 14.0, 30.6191, 14.0]

    def test_published_blend_vectors(self):
        _, x4, y4 = joint_space(X, Y)
        fund = 0.2932 * x4.payoffs + (1 - 0.2932) * y4.payoffs
        assert fund.tolist() == pytest.approx(
            [36.3016, 24.5552, 21.9348, 10.1884], abs=2e-4
        )
        best = 0.3514 * x4.payoffs + (1 - 0.3514) * y4.payoffs
        assert best.tolist() == pytest.approx(
            [37.4295, 26.6504, 20.2109, 9.4318], abs=2e-4
        )

    def test_needs_two_outcome_games(self):
        with pytest.raises(InvariantViolation):
            joint_space(Game([1, 2, 3]), Y)


class TestOneFundWeight:
    def test_published_weight(self):
        w = one_fund_weight(X, Y, R02S)
        assert w == pytest.approx(W_ONEFUND, rel=1e-10)
        assert w == pytest.approx(0.2932, abs=1e-3)

    def test_payoff_variances(self):
        assert variance(X, COIN) == 600.25
        assert variance(Y, COIN) == pytest.approx(69.0486, abs=1e-4)

    def test_symmetric_inputs_split_evenly(self):
        assert one_fund_weight(X, X, R02S) == pytest.approx(0.5, rel=1e-12)

    def test_constant_game_is_undefined(self):
        with pytest.raises(InvariantViolation, match="undefined"):
            one_fund_weight(Game([10, 10]), Y, R02S)

    def test_mean_return_exceeds_rate_even_near_constant(self):
        # u <= E/g with equality only for constants, so E/u - 1 > r always;
        # the weight stays well defined arbitrarily close to degeneracy
        w = one_fund_weight(Game([10.0, 9.99]), Y, R02S)
        assert 0.0 < w < 1.0


class TestCompareMeanVariance:
    def test_published_comparison(self):
        comp = compare_mean_variance(X, Y, R02S)
        assert comp.u_x == pytest.approx(20.6721, abs=1e-3)
        assert comp.u_y == pytest.approx(20.6721, abs=1e-3)
        assert comp.r_x == pytest.approx(0.233546, abs=1e-5)
        assert comp.r_y == pytest.approx(0.079211, abs=1e-5)
        assert comp.w_onefund == pytest.approx(0.2932, abs=1e-3)
        assert comp.price_onefund == pytest.approx(21.3995, abs=1e-3)
        assert comp.w_star == pytest.approx(0.3514, abs=1e-3)
        assert comp.price_star == pytest.approx(21.4134, abs=1e-3)
        assert comp.t_star == pytest.approx(0.4222, abs=1e-3)
        assert comp.allocation == pytest.approx((0.1484, 0.2738, 0.5778), abs=1e-3)

    def test_blend_beats_onefund(self):
        comp = compare_mean_variance(X, Y, R02S)
        assert comp.price_star >= comp.price_onefund
        assert comp.price_onefund < comp.price_star  # strictly, for these inputs

    def test_allocation_reconstructs_from_parts(self):
        comp = compare_mean_variance(X, Y, R02S)
        t, w = comp.t_star, comp.w_star
        assert comp.allocation == (t * w, t * (1 - w), 1 - t)
        assert sum(comp.allocation) == pytest.approx(1.0, abs=1e-12)

    def test_identical_inputs_flat_objective_midpoint(self):
        comp = compare_mean_variance(X, X, R02S)
        assert comp.w_star == 0.5

    def test_json_payload_has_all_intermediates(self):
        doc = compare_mean_variance(X, Y, R02S).to_json_dict()
        for key in ("u_x", "u_y", "r_x", "r_y", "v_x", "v_y", "w_onefund",
                    "price_onefund", "w_star", "price_star", "t_star", "allocation"):
            assert key in doc


class TestPutCallParity:
    def test_published_example(self):
        rep = put_call_parity(Game([12, 8]), COIN, 10.0, R05)
        assert not rep.degenerate
        g = math.exp(0.05)
        # put + covered = strike pins both prices to their ceilings
        assert rep.put_price == pytest.approx(1.0 / g, rel=1e-9)
        assert rep.covered_price == pytest.approx(9.0 / g, rel=1e-9)
        assert rep.stock_price == pytest.approx(10.0 / g, rel=1e-9)
        assert abs(rep.residual) < 1e-7 * rep.strike

    def test_three_outcome_stock(self):
        space = OutcomeSpace([0.5, 0.3, 0.2])
        rep = put_call_parity(Game([14, 10, 6]), space, 9.0, R05)
        assert not rep.degenerate
        assert abs(rep.residual) < 1e-7 * rep.strike

    def test_strike_below_every_payoff_degenerates(self):
        rep = put_call_parity(Game([12, 8]), COIN, 5.0, R05)
        assert rep.degenerate
        assert "put pays nothing" in rep.reason

    def test_strike_above_every_payoff_degenerates(self):
        rep = put_call_parity(Game([12, 8]), COIN, 15.0, R05)
        assert rep.degenerate
        assert "call pays nothing" in rep.reason

    def test_nonpositive_strike_rejected(self):
        with pytest.raises(InvariantViolation):
            put_call_parity(Game([12, 8]), COIN, 0.0, R05)

    def test_stock_with_zero_payoff(self):
        rep = put_call_parity(Game([9, 0]), COIN, 4.0, R05)
        assert not rep.degenerate
        assert abs(rep.residual) < 1e-7 * rep.strike
