"""Domain types shared by every solver: outcome spaces, games, mixes, rates.

All types are immutable value objects (frozen dataclasses holding read-only
numpy arrays), so they can be shared freely across threads. Probability
vectors are validated to 1e-12 and then renormalized exactly, so downstream
sums are exact simplex elements.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

PROB_TOL = 1e-12


class PricingError(Exception):
    """Base error for this package."""


class InvariantViolation(PricingError, ValueError):
    """A domain-type invariant does not hold for the given inputs."""


class DimensionMismatch(InvariantViolation):
    """Game and outcome space have different lengths."""


class LogDomainViolation(PricingError, ValueError):
    """A proportion t at or beyond t_max makes a log argument nonpositive."""


class BasisError(PricingError, ValueError):
    """A game set does not form (or reduce to) a valid cone basis."""


class TruncationError(PricingError, RuntimeError):
    """Declared tail bound is insufficient to reach the requested tolerance."""


class GameFileError(PricingError, ValueError):
    """A game-spec file failed to parse or violates the documented schema."""


def _frozen(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise InvariantViolation(f"{name} must be a nonempty 1-d vector")
    if not np.all(np.isfinite(arr)):
        raise InvariantViolation(f"{name} must be finite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class OutcomeSpace:
    """Finite probability vector over the joint outcomes shared by all games."""

    probs: np.ndarray

    def __init__(self, probs: Sequence[float]):
        arr = _frozen(probs, "probs")
        if np.any(arr <= 0.0):
            raise InvariantViolation("every outcome probability must be > 0")
        total = float(arr.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise InvariantViolation(
                f"probabilities must sum to 1 within {PROB_TOL}, got {total!r}"
            )
        arr = arr / total
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    @property
    def size(self) -> int:
        return int(self.probs.size)


def fair_coin() -> OutcomeSpace:
    """The two-outcome space with probability 1/2 each."""
    return OutcomeSpace([0.5, 0.5])


def is_fair_coin(space: OutcomeSpace) -> bool:
    return space.size == 2 and abs(float(space.probs[0]) - 0.5) <= PROB_TOL


@dataclass(frozen=True)
class Game:
    """Nonnegative payoff vector aligned to an OutcomeSpace.

    Payoffs must be >= 0 with at least one strictly positive entry, which is
    equivalent to a positive expectation under any valid outcome space.
    """

    payoffs: np.ndarray

    def __init__(self, payoffs: Sequence[float]):
        arr = _frozen(payoffs, "payoffs")
        if np.any(arr < 0.0):
            raise InvariantViolation("payoffs must be nonnegative")
        if not np.any(arr > 0.0):
            raise InvariantViolation("a game must pay something: expectation is 0")
        object.__setattr__(self, "payoffs", arr)

    @property
    def size(self) -> int:
        return int(self.payoffs.size)

    def scaled(self, k: float) -> "Game":
        if k <= 0:
            raise InvariantViolation("scale factor must be > 0")
        return Game(self.payoffs * k)


Convention = Literal["continuous", "simple"]


@dataclass(frozen=True)
class Rate:
    """Per-period interest rate with its compounding convention.

    growth_factor() is e^r for the continuous convention and 1+r for the
    simple convention; r > 0 keeps it above 1.
    """

    value: float
    convention: Convention = "continuous"

    def __post_init__(self):
        if not (self.value > 0.0 and math.isfinite(self.value)):
            raise InvariantViolation("interest rate must be > 0")
        if self.convention not in ("continuous", "simple"):
            raise InvariantViolation(f"unknown convention {self.convention!r}")

    def growth_factor(self) -> float:
        if self.convention == "continuous":
            return math.exp(self.value)
        return 1.0 + self.value

    def log_growth_factor(self) -> float:
        if self.convention == "continuous":
            return self.value
        return math.log1p(self.value)


@dataclass(frozen=True)
class Mix:
    """A point of the probability simplex: one weight per basis game."""

    weights: np.ndarray

    def __init__(self, weights: Sequence[float]):
        arr = _frozen(weights, "weights")
        if np.any(arr < 0.0):
            raise InvariantViolation("mix weights must be nonnegative")
        total = float(arr.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise InvariantViolation(
                f"mix weights must sum to 1 within {PROB_TOL}, got {total!r}"
            )
        arr = arr / total
        arr.flags.writeable = False
        object.__setattr__(self, "weights", arr)

    @property
    def size(self) -> int:
        return int(self.weights.size)


@dataclass(frozen=True)
class ConeBasis:
    """Ordered basis games over one shared outcome space.

    For n = 2 the basis property (neither game a nonnegative multiple of the
    other) is checked exactly via payoff ratios; for n > 2 it is declared by
    the caller.
    """

    space: OutcomeSpace
    games: tuple[Game, ...]

    def __init__(self, space: OutcomeSpace, games: Sequence[Game]):
        games = tuple(games)
        if len(games) < 1:
            raise BasisError("a basis needs at least one game")
        for g in games:
            if g.size != space.size:
                raise DimensionMismatch(
                    f"game of length {g.size} on a space of {space.size} outcomes"
                )
        if len(games) == 2:
            a, b = games[0].payoffs, games[1].payoffs
            # proportional payoffs <=> a_i*b_j - a_j*b_i = 0 for all i, j
            cross = np.outer(a, b)
            scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
            if np.max(np.abs(cross - cross.T)) <= 1e-12 * scale * scale:
                raise BasisError("the two games are proportional: not a basis")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "games", games)

    @property
    def n(self) -> int:
        return len(self.games)

    def payoff_matrix(self) -> np.ndarray:
        """m x n matrix, one column per basis game."""
        return np.column_stack([g.payoffs for g in self.games])


@dataclass(frozen=True)
class SeriesGame:
    """Countable-support game given by a term rule j -> (payoff_j, prob_j).

    tail_exponent is the nu > 0 for which sum prob_j * max(payoff_j,1)^nu is
    finite; moment_bound is a user-declared upper bound on that sum. The
    declaration is what makes adaptive truncation of unbounded games sound,
    and it is re-checked against partial sums during truncation.
    """

    term: Callable[[int], tuple[float, float]]
    tail_exponent: float
    moment_bound: float

    def __post_init__(self):
        if not (self.tail_exponent > 0.0):
            raise InvariantViolation("tail exponent must be > 0")
        if not (self.moment_bound > 0.0 and math.isfinite(self.moment_bound)):
            raise InvariantViolation("moment bound must be positive and finite")


def st_petersburg() -> SeriesGame:
    """Payoff 2^j with probability 2^-j, j = 1, 2, ..."""
    return SeriesGame(
        term=lambda j: (2.0**j, 2.0**-j),
        tail_exponent=0.5,
        # sum 2^-j * 2^(j/2) = 1/(sqrt(2)-1)
        moment_bound=1.0 / (math.sqrt(2.0) - 1.0) + 1e-9,
    )


def constant_series(c: float) -> SeriesGame:
    """Degenerate series paying c with probability 1."""
    if c <= 0:
        raise InvariantViolation("constant payoff must be > 0")
    return SeriesGame(
        term=lambda j: (c, 1.0 if j == 1 else 0.0),
        tail_exponent=1.0,
        moment_bound=max(c, 1.0) + 1.0,
    )


def _check_aligned(game: Game, space: OutcomeSpace) -> None:
    if game.size != space.size:
        raise DimensionMismatch(
            f"game of length {game.size} on a space of {space.size} outcomes"
        )


def expectation(game: Game, space: OutcomeSpace) -> float:
    """Probability-weighted mean payoff."""
    _check_aligned(game, space)
    return float(np.dot(space.probs, game.payoffs))


def geometric_mean(game: Game, space: OutcomeSpace) -> float:
    """exp of the probability-weighted mean log payoff; needs payoffs > 0."""
    _check_aligned(game, space)
    if np.any(game.payoffs <= 0.0):
        raise InvariantViolation(
            "geometric mean is zero (a payoff is 0): price regime forced interior"
        )
    return float(math.exp(np.dot(space.probs, np.log(game.payoffs))))


def harmonic_mean(game: Game, space: OutcomeSpace) -> float:
    """1 / E[1/payoff]; defined as 0 when any payoff is 0."""
    _check_aligned(game, space)
    if np.any(game.payoffs <= 0.0):
        return 0.0
    return float(1.0 / np.dot(space.probs, 1.0 / game.payoffs))


def variance(game: Game, space: OutcomeSpace) -> float:
    """Probability-weighted payoff variance."""
    mean = expectation(game, space)
    return float(np.dot(space.probs, (game.payoffs - mean) ** 2))


def mix_game(basis: ConeBasis, p: Mix | Sequence[float]) -> Game:
    """Componentwise convex combination of the basis games."""
    weights = p.weights if isinstance(p, Mix) else Mix(p).weights
    if weights.size != basis.n:
        raise DimensionMismatch(
            f"mix of length {weights.size} over a basis of {basis.n} games"
        )
    return Game(basis.payoff_matrix() @ weights)


def combine(basis: ConeBasis, k: Sequence[float]) -> Game:
    """Nonnegative linear combination (a point of the cone, not of the simplex)."""
    arr = np.asarray(k, dtype=float)
    if arr.size != basis.n:
        raise DimensionMismatch(
            f"coefficients of length {arr.size} over a basis of {basis.n} games"
        )
    if np.any(arr < 0.0):
        raise InvariantViolation("cone coefficients must be nonnegative")
    if not np.any(arr > 0.0):
        raise InvariantViolation("cone coefficients must not all be zero")
    return Game(basis.payoff_matrix() @ arr)


# ---------------------------------------------------------------------------
# Game-spec JSON files
#
# {
#   "probabilities": [0.5, 0.5],
#   "games": { "A": [19, 1], "B": [10, 10] },
#   "rate": { "value": 0.05, "convention": "continuous" }
# }
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GameFile:
    space: OutcomeSpace
    games: dict[str, Game]
    rate: Rate | None


def parse_game_file(text: str) -> GameFile:
    """Parse the documented game-spec JSON schema from a string."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFileError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise GameFileError("top level must be a JSON object")
    try:
        probs = doc["probabilities"]
        games_doc = doc["games"]
    except KeyError as exc:
        raise GameFileError(f"missing required key {exc.args[0]!r}") from exc
    if not isinstance(games_doc, dict) or not games_doc:
        raise GameFileError('"games" must be a nonempty object of name -> payoffs')
    space = OutcomeSpace(probs)
    games: dict[str, Game] = {}
    for name, payoffs in games_doc.items():
        if not isinstance(payoffs, list):
            raise GameFileError(f'game "{name}" must be a list of payoffs')
        game = Game(payoffs)
        if game.size != space.size:
            raise GameFileError(
                f'game "{name}" has {game.size} payoffs for {space.size} outcomes'
            )
        games[name] = game
    rate = None
    if "rate" in doc and doc["rate"] is not None:
        rdoc = doc["rate"]
        if not isinstance(rdoc, dict) or "value" not in rdoc:
            raise GameFileError('"rate" must be an object with a "value"')
        rate = Rate(float(rdoc["value"]), rdoc.get("convention", "continuous"))
    return GameFile(space=space, games=games, rate=rate)


def load_game_file(path: str) -> GameFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GameFileError(f"cannot read {path}: {exc}") from exc
    return parse_game_file(text)
