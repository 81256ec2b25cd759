"""Single-game pricing by growth rate.

The price u of a game is the stake at which repeated proportional investment,
at the best proportion t, grows capital at exactly the risk-free growth
factor g (e^r continuous, 1+r simple). Fair two-outcome games have a closed
form; general finite games are solved from the simultaneous equations

    E[log(a_j * t/u - t + 1)] = log g        (growth at the optimum)
    E[(a_j - u) / (a_j t - u t + u)] = 0     (first-order condition in t)

by nested bisection: the inner derivative is strictly decreasing in t, and
the outer map u -> max-growth is strictly decreasing in u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import (
    Game,
    InvariantViolation,
    LogDomainViolation,
    OutcomeSpace,
    PricingError,
    Rate,
    SeriesGame,
    TruncationError,
    is_fair_coin,
)

REGIME_FULL = "full_investment"
REGIME_INTERIOR = "interior"

Regime = Literal["full_investment", "interior"]

# inner bisection on the proportion t
T_TOL = 1e-12
# outer bisection on the price u, relative
U_REL_TOL = 1e-10
MAX_PRICE_ITER = 200


@dataclass(frozen=True)
class PriceResult:
    """Price, optimal proportion, regime flag and the growth attained there.

    regime is full_investment exactly when proportion == 1; achieved_growth
    equals the risk-free growth factor up to solver tolerance.
    """

    price: float
    proportion: float
    regime: Regime
    achieved_growth: float


@dataclass(frozen=True)
class KappaContext:
    """Interior-regime mixing coefficient kappa = (1 - sqrt(1 - 1/g^2)) / 2."""

    kappa: float

    def __post_init__(self):
        if not (0.0 < self.kappa < 0.5):
            raise InvariantViolation("kappa must lie strictly between 0 and 1/2")

    @classmethod
    def from_rate(cls, rate: Rate) -> "KappaContext":
        g = rate.growth_factor()
        return cls((1.0 - math.sqrt(1.0 - 1.0 / (g * g))) / 2.0)


def max_proportion(game: Game, u: float) -> float:
    """Largest t keeping every log argument positive (may be +inf)."""
    if u <= 0:
        raise InvariantViolation("price must be > 0")
    a_min = float(np.min(game.payoffs))
    if a_min >= u:
        return math.inf
    return u / (u - a_min)


# -- raw helpers on plain lists (hot loops; numpy overhead dominates at m <= 8)


def _elg(pay: Sequence[float], pr: Sequence[float], u: float, t: float) -> float:
    total = 0.0
    for a, p in zip(pay, pr):
        x = t * (a - u) / u
        if x <= -1.0:
            raise LogDomainViolation(
                f"log domain violation: t={t!r} at or beyond t_max for u={u!r}"
            )
        total += p * math.log1p(x)
    return total


def _dgrowth(pay, pr, u, t):
    # d/dt E[log(...)] = sum p*(a-u)/(u + t*(a-u)); no cancellation near a ~ u
    total = 0.0
    for a, p in zip(pay, pr):
        d = a - u
        total += p * d / (u + t * d)
    return total


def _tmax_raw(pay, u):
    a_min = min(pay)
    if a_min >= u:
        return math.inf
    return u / (u - a_min)


def _opt_t(pay, pr, u, t_tol=T_TOL):
    """Maximize expected log growth over feasible t; returns (t*, value)."""
    if _dgrowth(pay, pr, u, 0.0) <= 0.0:
        return 0.0, 0.0
    tmax = _tmax_raw(pay, u)
    if tmax > 1.0:
        if _dgrowth(pay, pr, u, 1.0) >= 0.0:
            return 1.0, _elg(pay, pr, u, 1.0)
        hi = 1.0
    else:
        hi = tmax * (1.0 - 1e-12)
    lo = 0.0
    while hi - lo > t_tol:
        mid = 0.5 * (lo + hi)
        if _dgrowth(pay, pr, u, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    return t, _elg(pay, pr, u, t)


def expected_log_growth(
    game: Game, space: OutcomeSpace, u: float, t: float
) -> float:
    """E[log(a_j * t/u - t + 1)] for stake proportion t at price u."""
    if u <= 0:
        raise InvariantViolation("price must be > 0")
    if t < 0:
        raise InvariantViolation("proportion must be >= 0")
    if game.size != space.size:
        raise InvariantViolation("game and space dimensions differ")
    return _elg(game.payoffs.tolist(), space.probs.tolist(), u, t)


def optimal_proportion(
    game: Game, space: OutcomeSpace, u: float
) -> tuple[float, float]:
    """Maximizer t* of expected log growth over [0, min(1, t_max)) and its value.

    Returns (0.0, 0.0) when the game is worthless at price u (u >= expectation):
    the derivative at t = 0 is (E - u)/u <= 0 and the optimum sits at zero stake.
    """
    if u <= 0:
        raise InvariantViolation("price must be > 0")
    if game.size != space.size:
        raise InvariantViolation("game and space dimensions differ")
    return _opt_t(game.payoffs.tolist(), space.probs.tolist(), u)


def price_two_outcome_fair(a: float, b: float, rate: Rate) -> PriceResult:
    """Closed-form price of a fair-coin game paying a or b (both > 0).

    Full-investment regime when E/sqrt(ab) <= g: u = sqrt(ab)/g and t = 1.
    Otherwise u = kappa*max(a,b) + (1-kappa)*min(a,b) and
    t = u(E-u)/((a-u)(u-b)).
    """
    if not (a > 0 and b > 0):
        raise InvariantViolation("closed form needs strictly positive payoffs")
    g = rate.growth_factor()
    mean = 0.5 * (a + b)
    gm = math.sqrt(a * b)
    if mean / gm <= g:
        u = gm / g
        return PriceResult(u, 1.0, REGIME_FULL, gm / u)
    k = KappaContext.from_rate(rate).kappa
    u = k * max(a, b) + (1.0 - k) * min(a, b)
    t = u * (mean - u) / ((a - u) * (u - b))
    achieved = math.exp(_elg([a, b], [0.5, 0.5], u, t))
    return PriceResult(u, t, REGIME_INTERIOR, achieved)


def _price_numeric(pay, pr, rate: Rate, rel_tol):
    g = rate.growth_factor()
    log_g = rate.log_growth_factor()
    mean = sum(p * a for a, p in zip(pay, pr))
    if min(pay) > 0.0:
        gm = math.exp(sum(p * math.log(a) for a, p in zip(pay, pr)))
        hm = 1.0 / sum(p / a for a, p in zip(pay, pr))
    else:
        gm, hm = 0.0, 0.0  # zero payoff: harmonic condition cannot hold
    if gm > 0.0 and gm / g <= hm * (1.0 + 1e-14):
        u = gm / g
        return u, 1.0, REGIME_FULL, gm / u
    lo = gm / g if gm > 0.0 else mean * 1e-9
    hi = mean / g
    g_lo = _opt_t(pay, pr, lo)[1]
    g_hi = _opt_t(pay, pr, hi)[1]
    if not (g_lo >= log_g - 1e-12 and g_hi <= log_g + 1e-9):
        raise PricingError(
            "internal error: price bracket invalid "
            f"(growth at {lo!r} is {g_lo!r}, at {hi!r} is {g_hi!r}, target {log_g!r})"
        )
    for _ in range(MAX_PRICE_ITER):
        if hi - lo <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if _opt_t(pay, pr, mid)[1] > log_g:
            lo = mid
        else:
            hi = mid
    u = 0.5 * (lo + hi)
    t, logv = _opt_t(pay, pr, u)
    return u, t, REGIME_INTERIOR, math.exp(logv)


def price_general(
    game: Game,
    space: OutcomeSpace,
    rate: Rate,
    *,
    rel_tol: float = U_REL_TOL,
    force_numeric: bool = False,
) -> PriceResult:
    """Price a finite game with nonnegative payoffs and positive expectation.

    Dispatches to the closed form for fair-coin games with positive payoffs;
    otherwise solves numerically. force_numeric routes the solver path even
    when the closed form applies (used to cross-check the two).
    """
    if game.size != space.size:
        raise InvariantViolation("game and space dimensions differ")
    if not force_numeric and is_fair_coin(space) and np.all(game.payoffs > 0.0):
        return price_two_outcome_fair(
            float(game.payoffs[0]), float(game.payoffs[1]), rate
        )
    u, t, regime, achieved = _price_numeric(
        game.payoffs.tolist(), space.probs.tolist(), rate, rel_tol
    )
    return PriceResult(u, t, regime, achieved)


def truncate_series(
    sgame: SeriesGame, *, tol: float = 1e-12, max_terms: int = 60
) -> tuple[OutcomeSpace, Game]:
    """Finite approximation of a countable-support game.

    Stops at the first index J where the remaining probability mass,
    multiplied by the declared-moment bound on the tail log payoff,
    drops below tol. Raises TruncationError when max_terms binds first.
    """
    nu = sgame.tail_exponent
    log_bound = math.log(sgame.moment_bound)
    pays: list[float] = []
    probs: list[float] = []
    cum_p = 0.0
    cum_moment = 0.0
    converged = False
    for j in range(1, max_terms + 1):
        a, p = sgame.term(j)
        if not (math.isfinite(a) and a >= 0.0 and math.isfinite(p) and p >= 0.0):
            raise InvariantViolation(f"series term {j} is invalid: ({a!r}, {p!r})")
        if p > 0.0:
            pays.append(float(a))
            probs.append(float(p))
            cum_p += p
            cum_moment += p * max(a, 1.0) ** nu
        if cum_p > 1.0 + 1e-12:
            raise InvariantViolation("series probabilities exceed 1")
        if cum_moment > sgame.moment_bound * (1.0 + 1e-9):
            raise InvariantViolation(
                "declared moment bound violated by the partial sums"
            )
        tail_p = 1.0 - cum_p
        if tail_p <= 0.0:
            converged = True
            break
        if p > 0.0:
            # p_j * a_j^nu <= bound, so log a_j <= (log bound - log p_j)/nu
            log_pay_est = max(0.0, (log_bound - math.log(p)) / nu)
            if tail_p * (log_pay_est + 60.0) < tol:
                converged = True
                break
    if not converged:
        raise TruncationError(
            f"tail bound insufficient after {max_terms} terms "
            f"(remaining probability {1.0 - cum_p:.3e})"
        )
    if not pays:
        raise InvariantViolation("series produced no positive-probability terms")
    return OutcomeSpace(probs), Game(pays)


def price_series(
    sgame: SeriesGame,
    rate: Rate,
    *,
    rel_tol: float = U_REL_TOL,
    trunc_tol: float = 1e-12,
    max_terms: int = 60,
) -> PriceResult:
    """Price a countable-support game via adaptive truncation."""
    space, game = truncate_series(sgame, tol=trunc_tol, max_terms=max_terms)
    return price_general(game, space, rate, rel_tol=rel_tol, force_numeric=True)
