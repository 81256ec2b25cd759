"""Two-asset portfolio comparisons and the put-call parity check.

The mean-variance one-fund weight is computed from payoff variances and
rates of mean return (E/u - 1 at the growth-rate price), then compared with
the weight that actually maximizes the growth-rate price of the blended
fund. Put-call parity is verified through least-squares prices of the
basis {put, call, stock-minus-call}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    BasisError,
    ConeBasis,
    Game,
    InvariantViolation,
    OutcomeSpace,
    PricingError,
    Rate,
    expectation,
    fair_coin,
    variance,
)
from .lsq import (
    LsSolution,
    _golden_max,
    check_constant_mix,
    cone_coordinates,
    in_cone,
    least_squares_prices,
    price_in_cone,
)
from .pricer import price_general


@dataclass(frozen=True)
class FundComparison:
    """One-fund weight vs the price-maximizing weight for two coin games."""

    w_onefund: float
    fund_onefund: Game
    price_onefund: float
    w_star: float
    fund_star: Game
    price_star: float
    t_star: float
    allocation: tuple[float, float, float]
    u_x: float
    u_y: float
    r_x: float
    r_y: float
    var_x: float
    var_y: float

    def __post_init__(self):
        if self.price_star < self.price_onefund - 1e-9 * self.price_onefund:
            raise InvariantViolation("maximized price below the one-fund price")
        if min(self.allocation) < -1e-15 or abs(sum(self.allocation) - 1.0) > 1e-12:
            raise InvariantViolation("allocation must be nonnegative and sum to 1")

    def to_json_dict(self) -> dict:
        return {
            "u_x": self.u_x,
            "u_y": self.u_y,
            "r_x": self.r_x,
            "r_y": self.r_y,
            "v_x": self.var_x,
            "v_y": self.var_y,
            "w_onefund": self.w_onefund,
            "price_onefund": self.price_onefund,
            "w_star": self.w_star,
            "price_star": self.price_star,
            "t_star": self.t_star,
            "fund_onefund": [float(v) for v in self.fund_onefund.payoffs],
            "fund_star": [float(v) for v in self.fund_star.payoffs],
            "allocation": list(self.allocation),
        }


def joint_space(x: Game, y: Game) -> tuple[OutcomeSpace, Game, Game]:
    """Product space of two independent fair-coin games, with lifted payoffs."""
    if x.size != 2 or y.size != 2:
        raise InvariantViolation("joint space needs two two-outcome games")
    space = OutcomeSpace([0.25, 0.25, 0.25, 0.25])
    x4 = Game([x.payoffs[0], x.payoffs[0], x.payoffs[1], x.payoffs[1]])
    y4 = Game([y.payoffs[0], y.payoffs[1], y.payoffs[0], y.payoffs[1]])
    return space, x4, y4


def _coin_stats(g: Game, rate: Rate) -> tuple[float, float, float, float]:
    """(price, expectation, variance, rate of mean return) on the fair coin."""
    coin = fair_coin()
    u = price_general(g, coin, rate).price
    mean = expectation(g, coin)
    var = variance(g, coin)
    return u, mean, var, mean / u - 1.0


def one_fund_weight(x: Game, y: Game, rate: Rate) -> float:
    """Mean-variance one-fund weight on x, from Sharpe-style ratios (r_i - r)/v_i."""
    u_x, _, v_x, r_x = _coin_stats(x, rate)
    u_y, _, v_y, r_y = _coin_stats(y, rate)
    del u_x, u_y
    scale = max(float(np.max(x.payoffs)), float(np.max(y.payoffs)))
    if v_x <= 1e-12 * scale * scale or v_y <= 1e-12 * scale * scale:
        raise InvariantViolation("one-fund formula undefined for a constant game")
    r = rate.value
    if r_x <= r or r_y <= r:
        raise InvariantViolation("mean returns must exceed the risk-free rate")
    s_x = (r_x - r) / v_x
    s_y = (r_y - r) / v_y
    return s_x / (s_x + s_y)


def compare_mean_variance(x: Game, y: Game, rate: Rate) -> FundComparison:
    """Price the one-fund blend and the best blend of two independent coin games.

    The blend price is concave in the weight, so a golden-section search
    finds the maximizer; ties (flat objective) resolve to the midpoint 0.5.
    """
    u_x, _, v_x, r_x = _coin_stats(x, rate)
    u_y, _, v_y, r_y = _coin_stats(y, rate)
    w_of = one_fund_weight(x, y, rate)
    space, x4, y4 = joint_space(x, y)

    def blend(w: float) -> Game:
        return Game(w * x4.payoffs + (1.0 - w) * y4.payoffs)

    def price_of(w: float) -> float:
        return price_general(blend(w), space, rate).price

    price_onefund = price_of(w_of)
    w_star, price_star = _golden_max(price_of, 0.0, 1.0)
    mid = price_of(0.5)
    if mid >= price_star - 1e-12 * max(1.0, price_star):
        w_star, price_star = 0.5, mid
    if price_onefund > price_star:
        w_star, price_star = w_of, price_onefund
    star = price_general(blend(w_star), space, rate)
    t_star = star.proportion
    allocation = (t_star * w_star, t_star * (1.0 - w_star), 1.0 - t_star)
    return FundComparison(
        w_onefund=w_of,
        fund_onefund=blend(w_of),
        price_onefund=price_onefund,
        w_star=w_star,
        fund_star=blend(w_star),
        price_star=star.price,
        t_star=t_star,
        allocation=allocation,
        u_x=u_x,
        u_y=u_y,
        r_x=r_x,
        r_y=r_y,
        var_x=v_x,
        var_y=v_y,
    )


@dataclass(frozen=True)
class ParityReport:
    """Least-squares prices of {put, call, stock-minus-call} and the parity gap."""

    strike: float
    degenerate: bool
    reason: Optional[str] = None
    put_price: Optional[float] = None
    call_price: Optional[float] = None
    covered_price: Optional[float] = None
    stock_price: Optional[float] = None
    residual: Optional[float] = None
    solution: Optional[LsSolution] = None

    def to_json_dict(self) -> dict:
        doc: dict = {"strike": self.strike, "degenerate": self.degenerate}
        if self.degenerate:
            doc["reason"] = self.reason
            return doc
        doc.update(
            put=self.put_price,
            call=self.call_price,
            covered=self.covered_price,
            stock=self.stock_price,
            residual=self.residual,
        )
        return doc


def put_call_parity(
    stock: Game,
    space: OutcomeSpace,
    strike: float,
    rate: Rate,
    *,
    tol_L: float = 1e-9,
) -> ParityReport:
    """Check call - put + K/g = stock under least-squares prices.

    The basis is {put, call, stock-minus-call}; put + (stock-minus-call) = K
    is the constant mix that pins both of those prices to their ceilings.
    Linearly dependent members (always the case on two outcomes) are dropped
    and priced by linearity instead.
    """
    if strike <= 0:
        raise InvariantViolation("strike must be > 0")
    if stock.size != space.size:
        raise InvariantViolation("stock and space dimensions differ")
    s = stock.payoffs
    put = np.maximum(strike - s, 0.0)
    call = np.maximum(s - strike, 0.0)
    covered = np.minimum(s, strike)
    if not np.any(put > 0.0):
        return ParityReport(
            strike=strike,
            degenerate=True,
            reason="put pays nothing: strike at or below every stock payoff",
        )
    if not np.any(call > 0.0):
        return ParityReport(
            strike=strike,
            degenerate=True,
            reason="call pays nothing: strike at or above every stock payoff",
        )
    members: list[tuple[str, Game]] = [
        ("put", Game(put)),
        ("call", Game(call)),
        ("covered", Game(covered)),
    ]
    # drop any member that is a nonnegative combination of the others
    # (checked covered-first so the canonical basis keeps put and call)
    kept = members[:]
    for name in ("covered", "call", "put"):
        if len(kept) <= 2:
            break
        idx = next(i for i, (n, _) in enumerate(kept) if n == name)
        others = [g for i, (_, g) in enumerate(kept) if i != idx]
        try:
            droppable = in_cone(ConeBasis(space, others), kept[idx][1])
        except BasisError:
            continue  # the remaining pair would degenerate; keep this member
        if droppable:
            kept.pop(idx)
    basis = ConeBasis(space, [g for _, g in kept])
    constant = check_constant_mix(basis)
    if constant is None:
        raise PricingError(
            "internal error: put + covered = strike mix not detected"
        )
    sol = least_squares_prices(basis, rate, tol_L=tol_L)
    prices = {
        name: price_in_cone(sol, cone_coordinates(basis, game))
        for name, game in members
    }
    stock_price = price_in_cone(sol, cone_coordinates(basis, stock))
    residual = (
        prices["call"] - prices["put"] + strike / rate.growth_factor() - stock_price
    )
    return ParityReport(
        strike=strike,
        degenerate=False,
        put_price=prices["put"],
        call_price=prices["call"],
        covered_price=prices["covered"],
        stock_price=stock_price,
        residual=residual,
        solution=sol,
    )
