"""Monte Carlo incentives for offensive play in the two Champions League designs.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public surface.
"""

from ._core import (
    GoalModelParams,
    GridCell,
    IncentiveResult,
    ProbTriple,
    UpliftCell,
    UpliftSummary,
    aggregate_uplift,
    figure2,
    focal_fixture,
    group_fixtures,
    lambda_away,
    lambda_home,
    league_fixtures,
    oracle_check,
    read_csv,
    run_scenario,
    score_pmf,
    to_csv,
    write_csv,
)

__all__ = [
    "GoalModelParams",
    "GridCell",
    "IncentiveResult",
    "ProbTriple",
    "UpliftCell",
    "UpliftSummary",
    "aggregate_uplift",
    "figure2",
    "focal_fixture",
    "group_fixtures",
    "lambda_away",
    "lambda_home",
    "league_fixtures",
    "oracle_check",
    "read_csv",
    "run_scenario",
    "score_pmf",
    "to_csv",
    "write_csv",
]

__version__ = "0.1.0"
