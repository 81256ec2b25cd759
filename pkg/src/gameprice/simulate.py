"""Monte Carlo verification of the growth-rate semantics.

Each path starts with capital 1 and plays N attempts, staking proportion t
of current capital at price u; the per-path growth rate is c_N^(1/N). Paths
draw from per-path child streams of one seed, so runs are deterministic and
order-insensitive (log-space accumulation, exact fsum aggregation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core import Game, InvariantViolation, OutcomeSpace
from .pricer import max_proportion


@dataclass(frozen=True)
class SimConfig:
    attempts: int
    paths: int
    seed: int
    price: float
    proportion: float

    def __post_init__(self):
        if self.attempts < 1 or self.paths < 1:
            raise InvariantViolation("attempts and paths must be >= 1")
        if not (self.price > 0.0):
            raise InvariantViolation("price must be > 0")
        if not (0.0 <= self.proportion <= 1.0):
            raise InvariantViolation("proportion must lie in [0, 1]")
        if self.seed < 0:
            raise InvariantViolation("seed must be a nonnegative integer")


@dataclass(frozen=True)
class SimReport:
    mean_growth: float
    var_growth: float
    ci_halfwidth: float
    failed_paths: int = 0

    def to_json_dict(self) -> dict:
        return {
            "mean_growth": self.mean_growth,
            "var_growth": self.var_growth,
            "ci_halfwidth": self.ci_halfwidth,
            "failed_paths": self.failed_paths,
        }


@dataclass(frozen=True)
class SweepPoint:
    proportion: float
    mean_growth: float
    var_growth: float
    ci_halfwidth: float
    failed_paths: int = 0


def _path_growths(game: Game, space: OutcomeSpace, cfg: SimConfig):
    """Per-path c_N^(1/N); a path whose capital hits 0 reports growth 0."""
    factors = game.payoffs * (cfg.proportion / cfg.price) - cfg.proportion + 1.0
    alive = factors > 0.0
    log_f = np.where(alive, np.log(np.where(alive, factors, 1.0)), 0.0)
    growths = np.empty(cfg.paths)
    failures = 0
    inv_n = 1.0 / cfg.attempts
    for i in range(cfg.paths):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(i,)))
        counts = rng.multinomial(cfg.attempts, space.probs)
        if np.any(counts[~alive] > 0):
            growths[i] = 0.0
            failures += 1
            continue
        growths[i] = math.exp(float(counts @ log_f) * inv_n)
    return growths, failures


def simulate_growth(game: Game, space: OutcomeSpace, cfg: SimConfig) -> SimReport:
    """Mean and variance of the per-path growth rate, with a 95% CI half-width."""
    if game.size != space.size:
        raise InvariantViolation("game and space dimensions differ")
    growths, failures = _path_growths(game, space, cfg)
    n = cfg.paths
    mean = math.fsum(growths) / n
    var = math.fsum((g - mean) ** 2 for g in growths) / n
    ci = 1.96 * math.sqrt(var / n)
    return SimReport(mean, var, ci, failures)


def sweep_proportion(
    game: Game,
    space: OutcomeSpace,
    u: float,
    grid: int,
    cfg: SimConfig,
) -> list[SweepPoint]:
    """Empirical growth curve over stake proportions at price u.

    All grid points share the same seed family, so the curve is smooth in t
    (common random numbers) and its argmax lands near the optimal proportion
    once attempts are large.
    """
    if grid < 3:
        raise InvariantViolation("grid needs at least 3 points")
    t_cap = max_proportion(game, u)
    t_hi = 1.0 if math.isinf(t_cap) else min(1.0, t_cap * (1.0 - 1e-9))
    rows = []
    for t in np.linspace(0.0, t_hi, grid):
        rep = simulate_growth(
            game, space, replace(cfg, price=u, proportion=float(t))
        )
        rows.append(
            SweepPoint(
                proportion=float(t),
                mean_growth=rep.mean_growth,
                var_growth=rep.var_growth,
                ci_halfwidth=rep.ci_halfwidth,
                failed_paths=rep.failed_paths,
            )
        )
    return rows


def sweep_rows_csv(rows: Sequence[SweepPoint]) -> str:
    """CSV rendering with the documented columns."""
    lines = ["t,mean_growth,var_growth,ci"]
    for r in rows:
        lines.append(
            f"{r.proportion!r},{r.mean_growth!r},{r.var_growth!r},{r.ci_halfwidth!r}"
        )
    return "\n".join(lines) + "\n"
