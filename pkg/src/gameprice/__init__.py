"""Growth-rate prices of games, least-squares prices over cones, and tooling."""

from .core import (
    BasisError,
    ConeBasis,
    DimensionMismatch,
    Game,
    GameFile,
    GameFileError,
    InvariantViolation,
    LogDomainViolation,
    Mix,
    OutcomeSpace,
    PricingError,
    Rate,
    SeriesGame,
    TruncationError,
    combine,
    constant_series,
    expectation,
    fair_coin,
    geometric_mean,
    harmonic_mean,
    load_game_file,
    mix_game,
    parse_game_file,
    st_petersburg,
    variance,
)
from .lsq import (
    AdjustedPriceLine,
    LsSolution,
    big_L,
    check_constant_mix,
    check_linear_pricing,
    cone_coordinates,
    in_cone,
    least_squares_prices,
    ls_ratio,
    price_in_cone,
    reduce_to_basis,
)
from .portfolio import (
    FundComparison,
    ParityReport,
    compare_mean_variance,
    joint_space,
    one_fund_weight,
    put_call_parity,
)
from .pricer import (
    KappaContext,
    PriceResult,
    REGIME_FULL,
    REGIME_INTERIOR,
    expected_log_growth,
    max_proportion,
    optimal_proportion,
    price_general,
    price_series,
    price_two_outcome_fair,
    truncate_series,
)
from .simulate import SimConfig, SimReport, SweepPoint, simulate_growth, sweep_proportion

__version__ = "0.1.0"

__all__ = [
    "AdjustedPriceLine",
    "BasisError",
    "ConeBasis",
    "DimensionMismatch",
    "FundComparison",
    "Game",
    "GameFile",
    "GameFileError",
    "InvariantViolation",
    "KappaContext",
    "LogDomainViolation",
    "LsSolution",
    "Mix",
    "OutcomeSpace",
    "ParityReport",
    "PriceResult",
    "PricingError",
    "Rate",
    "REGIME_FULL",
    "REGIME_INTERIOR",
    "SeriesGame",
    "SimConfig",
    "SimReport",
    "SweepPoint",
    "TruncationError",
    "big_L",
    "check_constant_mix",
    "check_linear_pricing",
    "combine",
    "compare_mean_variance",
    "cone_coordinates",
    "constant_series",
    "expectation",
    "expected_log_growth",
    "fair_coin",
    "geometric_mean",
    "harmonic_mean",
    "in_cone",
    "joint_space",
    "least_squares_prices",
    "load_game_file",
    "ls_ratio",
    "max_proportion",
    "mix_game",
    "one_fund_weight",
    "optimal_proportion",
    "parse_game_file",
    "price_general",
    "price_in_cone",
    "price_series",
    "price_two_outcome_fair",
    "put_call_parity",
    "reduce_to_basis",
    "simulate_growth",
    "st_petersburg",
    "sweep_proportion",
    "truncate_series",
    "variance",
]
