"""Hereditarily finite pure sets: encoding, chain counts, exact moments and sampling."""

from ._core import (
    CapacityError,
    DegenerateVariance,
    DepthError,
    DomainError,
    Error,
    InvalidExcursion,
    InvalidIndex,
    NonConvergence,
    OverflowGuard,
    ParseError,
    PureSet,
    Z,
    binom_rate,
    chain_profile,
    correlation_squared,
    covariance,
    decode,
    diff_extremes,
    dkh_distribution,
    encode,
    expectation,
    from_dyck,
    games_second_fraction,
    gamma_eta,
    gaussian_logcosh_rate,
    identity_tree_counts,
    matryoshka,
    parse,
    run_experiment,
    transitive_total,
    universe,
    verify_all,
    von_neumann,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
