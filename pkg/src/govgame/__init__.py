"""Exact bimatrix Nash solver and fork predictor for protocol-upgrade voting.

The package models a blockchain upgrade decision as a two-player game
between the voters and the surrounding community, enumerates all Nash
equilibria with exact rational arithmetic, and predicts the majority's
destination chain and the chain-split risk under no governance,
off-chain governance, and on-chain governance.
"""

from .errors import ValidationError
from .game_core import (
    BimatrixGame,
    EquilibriumKind,
    EquilibriumResult,
    MixedStrategy,
    StrategyProfile,
    best_response_payoff,
    dump_game,
    enumerate_mixed_equilibria,
    enumerate_pure_equilibria,
    expected_payoff,
    game_to_dict,
    is_equilibrium,
    is_strong_nash,
    load_game,
    pareto_optimal_pure_profiles,
    pure_profile,
)
from .governance import (
    Chain,
    ForkRisk,
    GovernanceParams,
    Mode,
    PredictionResult,
    Regime,
    SurplusReport,
    build_governance_game,
    classify_regime,
    community_surplus,
    cumulative_payoffs,
    no_governance_split,
    predict_outcome,
    prediction_to_dict,
    total_surplus,
    voter_surplus,
)
from .rationals import format_rational, parse_rational
from .scenario_runner import (
    CheckStatus,
    ExpectationCheck,
    ExpectedEquilibrium,
    ExpectedOutcome,
    Scenario,
    ScenarioResult,
    builtin_table1_scenarios,
    load_scenarios,
    result_to_dict,
    results_to_csv,
    results_to_json,
    run_ethereum_case_study,
    run_scenario,
    run_table1_suite,
    serialize_scenarios,
)

__version__ = "0.1.0"

__all__ = [
    "BimatrixGame",
    "Chain",
    "CheckStatus",
    "EquilibriumKind",
    "EquilibriumResult",
    "ExpectationCheck",
    "ExpectedEquilibrium",
    "ExpectedOutcome",
    "ForkRisk",
    "GovernanceParams",
    "MixedStrategy",
    "Mode",
    "PredictionResult",
    "Regime",
    "Scenario",
    "ScenarioResult",
    "StrategyProfile",
    "SurplusReport",
    "ValidationError",
    "best_response_payoff",
    "build_governance_game",
    "builtin_table1_scenarios",
    "classify_regime",
    "community_surplus",
    "cumulative_payoffs",
    "dump_game",
    "enumerate_mixed_equilibria",
    "enumerate_pure_equilibria",
    "expected_payoff",
    "format_rational",
    "game_to_dict",
    "is_equilibrium",
    "is_strong_nash",
    "load_game",
    "load_scenarios",
    "no_governance_split",
    "pareto_optimal_pure_profiles",
    "parse_rational",
    "predict_outcome",
    "prediction_to_dict",
    "pure_profile",
    "result_to_dict",
    "results_to_csv",
    "results_to_json",
    "run_ethereum_case_study",
    "run_scenario",
    "run_table1_suite",
    "serialize_scenarios",
    "total_surplus",
    "voter_surplus",
    "__version__",
]
