"""Tests for the built-in suites, scenario files, and result serialization."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from govgame.errors import ValidationError
from govgame.governance import Chain, ForkRisk, GovernanceParams, Mode, Regime
from govgame.scenario_runner import (
    ASSUMED_GAMMA,
    ETHEREUM_BETA,
    RESULT_CSV_COLUMNS,
    CheckStatus,
    ExpectedEquilibrium,
    ExpectedOutcome,
    Scenario,
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

F = Fraction

EXPECTED_PAYOFFS = {
    "1": (F(1), F(1)),
    "2": (F(1), F(1)),
    "3": (F(1), F(1)),
    "4": (F(1), F(1)),
    "5": (F(1, 2), F(1, 2)),
    "6": (F(3, 5), F(7, 10)),
    "7": (F(4, 5), F(3, 5)),
    "8": (F(7, 10), F(4, 5)),
    "9": (F(13, 20), F(18, 25)),
}


class TestBuiltinSuite:
    def test_all_nine_match(self):
        results = run_table1_suite()
        assert [r.name for r in results] == [str(i) for i in range(1, 10)]
        assert all(r.expectation_check.status is CheckStatus.MATCH for r in results)

    def test_equilibrium_counts(self):
        counts = [len(r.equilibria) for r in run_table1_suite()]
        assert counts == [1, 1, 1, 1, 4, 1, 1, 1, 1]

    def test_payoffs_exact(self):
        for result in run_table1_suite():
            want = EXPECTED_PAYOFFS[result.name]
            for eq in result.equilibria:
                assert eq.payoffs == want

    def test_simulation_5_vertices_row_major(self):
        five = run_table1_suite()[4]
        cells = [
            (eq.profile.sigma1.support[0], eq.profile.sigma2.support[0])
            for eq in five.equilibria
        ]
        assert cells == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert all(eq.degenerate_game for eq in five.equilibria)

    def test_only_simulation_5_is_degenerate(self):
        for result in run_table1_suite():
            flagged = any(eq.degenerate_game for eq in result.equilibria)
            assert flagged == (result.name == "5")

    def test_strategy_indicators(self):
        results = run_table1_suite()
        nine = results[8]
        only = nine.equilibria[0]
        assert only.profile.sigma1.probs == (F(0), F(1))
        assert only.profile.sigma2.probs == (F(1), F(0))

    def test_predictions_follow_equilibrium_column(self):
        # In no-governance mode the predicted destination matches the
        # community's equilibrium column for every row.
        for result in run_table1_suite():
            if result.params.gamma == F(1, 2):
                assert result.prediction.majority_chain is Chain.SPLIT_50_50
                continue
            column = result.equilibria[0].profile.sigma2.support[0]
            want = Chain.UPGRADED if column == 0 else Chain.ORIGINAL
            assert result.prediction.majority_chain is want

    def test_builtin_scenarios_use_no_governance_mode(self):
        assert all(
            s.params.mode is Mode.NO_GOVERNANCE for s in builtin_table1_scenarios()
        )


class TestRunScenario:
    def test_unanimous_scenario_matches(self):
        scenario = Scenario(
            name="unanimous",
            params=GovernanceParams(beta=F(1), gamma=F(1)),
            expected=ExpectedOutcome(
                equilibria=(ExpectedEquilibrium("yes", "upgraded", F(1), F(1)),)
            ),
        )
        result = run_scenario(scenario)
        assert result.expectation_check.status is CheckStatus.MATCH
        assert len(result.equilibria) == 1

    def test_vote_ignored_scenario(self):
        scenario = Scenario(
            name="ignored-vote",
            params=GovernanceParams(beta=F(0), gamma=F(1)),
            expected=ExpectedOutcome(
                equilibria=(ExpectedEquilibrium("no", "upgraded", F(1), F(1)),)
            ),
        )
        result = run_scenario(scenario)
        assert result.expectation_check.status is CheckStatus.MATCH

    def test_degenerate_scenario_count_match(self):
        rows = (
            ExpectedEquilibrium("yes", "upgraded", F(1, 2), F(1, 2)),
            ExpectedEquilibrium("yes", "original", F(1, 2), F(1, 2)),
            ExpectedEquilibrium("no", "upgraded", F(1, 2), F(1, 2)),
            ExpectedEquilibrium("no", "original", F(1, 2), F(1, 2)),
        )
        scenario = Scenario(
            name="level",
            params=GovernanceParams(beta=F(1, 2), gamma=F(1, 2)),
            expected=ExpectedOutcome(equilibria=rows),
        )
        result = run_scenario(scenario)
        assert result.expectation_check.status is CheckStatus.MATCH
        assert all(eq.degenerate_game for eq in result.equilibria)

    def test_no_expectation_reports_not_checked(self):
        scenario = Scenario(name="open", params=GovernanceParams(beta=F(1), gamma=F(1)))
        result = run_scenario(scenario)
        assert result.expectation_check.status is CheckStatus.NOT_CHECKED
        assert result.expectation_check.details == ()

    def test_count_mismatch_detail(self):
        scenario = Scenario(
            name="short",
            params=GovernanceParams(beta=F(1, 2), gamma=F(1, 2)),
            expected=ExpectedOutcome(
                equilibria=(ExpectedEquilibrium("yes", "upgraded", F(1, 2), F(1, 2)),)
            ),
        )
        result = run_scenario(scenario)
        assert result.expectation_check.status is CheckStatus.MISMATCH
        assert "expected 1 equilibria, computed 4" in result.expectation_check.details

    def test_payoff_mismatch_detail(self):
        scenario = Scenario(
            name="wrong-payoff",
            params=GovernanceParams(beta=F(1), gamma=F(1)),
            expected=ExpectedOutcome(
                equilibria=(ExpectedEquilibrium("yes", "upgraded", F(1, 2), F(1)),)
            ),
        )
        result = run_scenario(scenario)
        assert result.expectation_check.status is CheckStatus.MISMATCH
        assert any("expected payoff_v 1/2, computed 1" in d for d in result.expectation_check.details)

    def test_majority_chain_mismatch_detail(self):
        scenario = Scenario(
            name="wrong-chain",
            params=GovernanceParams(beta=F(7, 20), gamma=F(18, 25)),
            expected=ExpectedOutcome(majority_chain=Chain.UPGRADED),
        )
        result = run_scenario(scenario)
        assert result.expectation_check.status is CheckStatus.MISMATCH
        assert "expected majority_chain upgraded, predicted original" in result.expectation_check.details

    def test_error_carries_scenario_name(self):
        scenario = Scenario(
            name="needs-prime",
            params=GovernanceParams(beta=F(1, 5), gamma=F(2, 5), mode=Mode.ON_CHAIN),
        )
        with pytest.raises(ValidationError, match="scenario 'needs-prime': gamma_prime is required"):
            run_scenario(scenario)


class TestCaseStudy:
    def test_default_run_matches_history(self):
        result = run_ethereum_case_study()
        assert result.params.beta == ETHEREUM_BETA == F(27, 50)
        assert result.params.gamma == ASSUMED_GAMMA == F(7, 10)
        assert result.prediction.regime is Regime.MAJORITY_ACCEPT
        assert result.prediction.majority_chain is Chain.UPGRADED
        assert result.prediction.fork_risk is ForkRisk.PRESENT
        assert result.prediction.surplus.surplus_v == F(2, 25)
        assert result.expectation_check.status is CheckStatus.MATCH

    def test_gamma_is_labeled_as_assumed(self):
        result = run_ethereum_case_study()
        assert any("assumed; no measured value exists" in n for n in result.notes)

    def test_explicit_beta_equals_default(self):
        explicit = run_ethereum_case_study(beta="27/50")
        default = run_ethereum_case_study()
        assert explicit.prediction == default.prediction

    def test_unanimous_override_mismatches_on_risk(self):
        result = run_ethereum_case_study(beta=F(1))
        assert result.prediction.majority_chain is Chain.UPGRADED
        assert result.prediction.fork_risk is ForkRisk.NONE
        assert result.expectation_check.status is CheckStatus.MISMATCH
        assert any("fork_risk" in d for d in result.expectation_check.details)

    def test_other_majority_gamma_same_prediction(self):
        result = run_ethereum_case_study(gamma="3/5")
        assert result.prediction.majority_chain is Chain.UPGRADED
        assert result.prediction.fork_risk is ForkRisk.PRESENT
        assert result.expectation_check.status is CheckStatus.MATCH

    def test_minority_beta_mismatches_on_chain(self):
        result = run_ethereum_case_study(beta="1/5")
        assert result.prediction.majority_chain is Chain.ORIGINAL
        assert result.expectation_check.status is CheckStatus.MISMATCH
        assert any("majority_chain" in d for d in result.expectation_check.details)


class TestLoadScenarios:
    def test_exact_rationals(self):
        text = '{"scenarios": [{"name": "nine", "beta": "7/20", "gamma": "18/25"}]}'
        scenarios = load_scenarios(text)
        assert len(scenarios) == 1
        assert scenarios[0].params.beta == F(7, 20)
        assert scenarios[0].params.gamma == F(18, 25)

    def test_json_decimals_parse_exactly(self):
        text = '{"scenarios": [{"name": "d", "beta": 0.54, "gamma": 0.7}]}'
        params = load_scenarios(text)[0].params
        assert params.beta == F(27, 50)
        assert params.gamma == F(7, 10)

    def test_defaults(self):
        text = '{"scenarios": [{"name": "d", "beta": "1/2", "gamma": "1/2"}]}'
        params = load_scenarios(text)[0].params
        assert params.mode is Mode.OFF_CHAIN
        assert params.k == 1
        assert params.n == 1
        assert params.s_v == F(1)
        assert params.s_c == F(1)

    def test_beta_out_of_range(self):
        text = '{"scenarios": [{"name": "x", "beta": "3/2", "gamma": "1/2"}]}'
        with pytest.raises(ValidationError, match=r"beta out of \[0,1\]"):
            load_scenarios(text)

    def test_k_exceeding_n(self):
        text = '{"scenarios": [{"name": "x", "beta": "1/2", "gamma": "1/2", "k": 10, "n": 5}]}'
        with pytest.raises(ValidationError, match="k must not exceed n"):
            load_scenarios(text)

    def test_unknown_field_rejected(self):
        text = '{"scenarios": [{"name": "x", "beta": "1/2", "gamma": "1/2", "betta": 1}]}'
        with pytest.raises(ValidationError, match="unknown field 'betta'"):
            load_scenarios(text)

    def test_unknown_expected_field_rejected(self):
        text = (
            '{"scenarios": [{"name": "x", "beta": "1", "gamma": "1",'
            ' "expected": {"equilibriums": []}}]}'
        )
        with pytest.raises(ValidationError, match="unknown field"):
            load_scenarios(text)

    def test_top_level_shape(self):
        with pytest.raises(ValidationError):
            load_scenarios('{"scenario": []}')
        with pytest.raises(ValidationError):
            load_scenarios('[]')

    def test_missing_required_field(self):
        with pytest.raises(ValidationError, match="beta"):
            load_scenarios('{"scenarios": [{"name": "x", "gamma": "1/2"}]}')

    def test_error_names_scenario(self):
        text = '{"scenarios": [{"name": "bad-one", "beta": "3/2", "gamma": "1/2"}]}'
        with pytest.raises(ValidationError, match="scenario 'bad-one'"):
            load_scenarios(text)

    def test_k_must_be_json_integer(self):
        text = '{"scenarios": [{"name": "x", "beta": "1/2", "gamma": "1/2", "k": "3", "n": 5}]}'
        with pytest.raises(ValidationError, match="k"):
            load_scenarios(text)

    def test_expected_row_token_validated(self):
        text = (
            '{"scenarios": [{"name": "x", "beta": "1", "gamma": "1",'
            ' "expected": {"equilibria": [{"row": "maybe", "col": "upgraded",'
            ' "payoff_v": "1", "payoff_c": "1"}]}}]}'
        )
        with pytest.raises(ValidationError, match="expected row must be 'yes' or 'no'"):
            load_scenarios(text)

    def test_round_trip(self):
        text = json.dumps(
            {
                "scenarios": [
                    {
                        "name": "nine",
                        "mode": "on_chain",
                        "beta": "7/20",
                        "gamma": "18/25",
                        "gamma_prime": "4/5",
                        "k": 3,
                        "n": 7,
                        "s_v": "2",
                        "s_c": "1/3",
                        "expected": {
                            "equilibria": [
                                {
                                    "row": "no",
                                    "col": "upgraded",
                                    "payoff_v": "39/10",
                                    "payoff_c": "42/25",
                                }
                            ],
                            "majority_chain": "upgraded",
                        },
                    }
                ]
            }
        )
        first = load_scenarios(text)
        second = load_scenarios(serialize_scenarios(first))
        assert second == first

    def test_serialized_form_is_stable(self):
        text = '{"scenarios": [{"name": "a", "beta": "1/2", "gamma": "1/2"}]}'
        once = serialize_scenarios(load_scenarios(text))
        twice = serialize_scenarios(load_scenarios(once))
        assert once == twice


class TestSerialization:
    def test_csv_columns(self):
        assert RESULT_CSV_COLUMNS == (
            "simulation",
            "beta",
            "gamma",
            "equilibrium_index",
            "yes",
            "no",
            "upgraded",
            "original",
            "v_payoff",
            "c_payoff",
        )

    def test_table1_csv_has_12_equilibrium_rows(self):
        lines = results_to_csv(run_table1_suite()).splitlines()
        assert lines[0] == ",".join(RESULT_CSV_COLUMNS)
        assert len(lines) == 13

    def test_csv_rows_exact(self):
        lines = results_to_csv(run_table1_suite()).splitlines()
        assert lines[1] == "1,1,1,1,1,0,1,0,1,1"
        assert lines[5] == "5,1/2,1/2,1,1,0,1,0,1/2,1/2"
        assert lines[8] == "5,1/2,1/2,4,0,1,0,1,1/2,1/2"
        assert lines[12] == "9,7/20,18/25,1,0,1,1,0,13/20,18/25"

    def test_json_is_list_of_nine(self):
        data = json.loads(results_to_json(run_table1_suite()))
        assert isinstance(data, list)
        assert len(data) == 9
        assert [d["name"] for d in data] == [str(i) for i in range(1, 10)]

    def test_json_rationals_are_strings(self):
        data = json.loads(results_to_json(run_table1_suite()))
        six = data[5]
        assert six["params"]["beta"] == "3/5"
        assert six["equilibria"][0]["payoff_v"] == "3/5"
        assert six["prediction"]["surplus"]["total"] == "3/5"

    def test_result_dict_keys(self):
        result = run_table1_suite()[0]
        data = result_to_dict(result)
        assert set(data) == {
            "name",
            "params",
            "equilibria",
            "prediction",
            "expectation_check",
            "notes",
        }

    def test_byte_determinism(self):
        a = run_table1_suite()
        b = run_table1_suite()
        assert results_to_json(a) == results_to_json(b)
        assert results_to_csv(a) == results_to_csv(b)


@given(
    st.fractions(min_value=F(0), max_value=F(1), max_denominator=20).filter(
        lambda b: b != F(1, 2)
    ),
    st.fractions(min_value=F(0), max_value=F(1), max_denominator=20).filter(
        lambda g: g != F(1, 2)
    ),
)
def test_independent_majority_note_iff_disagreement(beta, gamma):
    scenario = Scenario(
        name="prop", params=GovernanceParams(beta=beta, gamma=gamma)
    )
    result = run_scenario(scenario)
    note = "community majority decided independently of the voter majority"
    disagrees = (beta > F(1, 2)) != (gamma > F(1, 2))
    assert (note in result.prediction.notes) == disagrees
