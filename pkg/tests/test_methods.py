import dataclasses
import json

import numpy as np
import pytest

from mc4d.canonical import canonical_dumps
from mc4d.errors import InvalidScenario
from mc4d.methods import (
    available_methods,
    evaluate,
    get_method,
    rank,
    required_judgment_matrices,
    saw_scores,
)
from mc4d.model import (
    Alternative,
    Criterion,
    Judgment,
    MethodConfig,
    RatioScale,
    Requirement,
    Scenario,
    measured,
)
from mc4d.priorities import PriorityVector
from tests.conftest import direct_scenario

# SAW composition oracle, fixed by hand with exact fractions before the
# build: weights (.5, .3, .2) over vectors (.5,.3,.2), (.2,.5,.3),
# (1/3, 1/3, 1/3) -> scores (113/300, 11/30, 77/300).
SAW_ORACLE = {"a": 113 / 300, "b": 11 / 30, "c": 77 / 300}


class TestRank:
    def test_sorts_descending_with_lexicographic_ties(self):
        ranking = rank({"a": 0.25, "b": 0.5, "c": 0.25})
        assert [(e.rank, e.alternative) for e in ranking] == [(1, "b"), (2, "a"), (3, "c")]

    def test_singleton(self):
        ranking = rank({"a": 1.0})
        assert ranking[0].rank == 1 and ranking[0].alternative == "a"

    def test_score_ratio_statement(self):
        scores = {"x": 0.5, "y": 0.25}
        ranking = rank(scores)
        assert ranking[0].score / ranking[1].score == pytest.approx(2.0)

    def test_near_tie_within_granularity_breaks_lexicographically(self):
        ranking = rank({"b": 0.5, "a": 0.5 + 1e-15})
        assert [e.alternative for e in ranking] == ["a", "b"]

    def test_empty_scores_rejected(self):
        with pytest.raises(ValueError):
            rank({})


class TestSawScores:
    def test_single_criterion_passthrough(self):
        vectors = {"c1": PriorityVector(("x", "y"), (0.7, 0.3))}
        scores = saw_scores(("x", "y"), vectors, {"c1": 1.0})
        assert scores == pytest.approx({"x": 0.7, "y": 0.3})

    def test_equal_weights_symmetric_vectors(self):
        vectors = {
            "c1": PriorityVector(("x", "y"), (1.0, 0.0)),
            "c2": PriorityVector(("x", "y"), (0.0, 1.0)),
        }
        scores = saw_scores(("x", "y"), vectors, {"c1": 0.5, "c2": 0.5})
        assert scores == pytest.approx({"x": 0.5, "y": 0.5})

    def test_hand_composition_oracle(self):
        vectors = {
            "c1": PriorityVector(("x", "y"), (0.8, 0.2)),
            "c2": PriorityVector(("x", "y"), (0.4, 0.6)),
        }
        scores = saw_scores(("x", "y"), vectors, {"c1": 0.75, "c2": 0.25})
        assert scores == pytest.approx({"x": 0.7, "y": 0.3}, abs=1e-12)


class TestEvaluate:
    def test_identical_data_ties_break_lexicographically(self):
        scenario = direct_scenario(
            {"c1": {"b": 3.0, "a": 3.0}, "c2": {"b": 5.0, "a": 5.0}}
        )
        # identical on every criterion, distinguished by an unused attribute
        distinct = tuple(
            dataclasses.replace(alt, attributes={**alt.attributes, "vendor": measured(k)})
            for k, alt in enumerate(scenario.alternatives)
        )
        scenario = dataclasses.replace(scenario, alternatives=distinct)
        result = evaluate(scenario)
        assert result.scores == pytest.approx({"a": 0.5, "b": 0.5})
        assert [e.alternative for e in result.ranking] == ["a", "b"]

    def test_requirements_reduce_to_singleton(self):
        scenario = direct_scenario(
            {"c1": {"a": 1.0, "b": 9.0}},
            requirements=(Requirement("c1", "minimum", 5.0),),
        )
        result = evaluate(scenario)
        assert result.outcome == "ok"
        assert result.scores == {"b": 1.0}
        assert result.ranking[0].rank == 1
        assert result.filtered_out.excluded[0][0] == "a"

    def test_three_alternative_saw_oracle(self):
        scenario = direct_scenario(
            {
                "c1": {"a": 5.0, "b": 3.0, "c": 2.0},
                "c2": {"a": 2.0, "b": 5.0, "c": 3.0},
                "c3": {"a": 4.0, "b": 4.0, "c": 4.0},
            },
            weights={"c1": 0.5, "c2": 0.3, "c3": 0.2},
        )
        result = evaluate(scenario)
        assert result.scores == pytest.approx(SAW_ORACLE, abs=1e-12)

    def test_no_feasible_alternatives_is_distinguished_outcome(self):
        scenario = direct_scenario(
            {"c1": {"a": 1.0, "b": 2.0}},
            requirements=(Requirement("c1", "minimum", 10.0),),
        )
        result = evaluate(scenario)
        assert result.outcome == "no_feasible_alternatives"
        assert result.scores == {}
        assert len(result.filtered_out.excluded) == 2

    def test_invalid_scenario_raises_with_report(self):
        scenario = direct_scenario({"c1": {"a": 1.0, "b": 2.0}})
        broken = dataclasses.replace(scenario, alternatives=scenario.alternatives[:1])
        with pytest.raises(InvalidScenario) as err:
            evaluate(broken)
        assert any(v.code == "TOO_FEW_ALTERNATIVES" for v in err.value.report.violations)

    def test_method_flag_overrides_config(self):
        scenario = direct_scenario({"c1": {"a": 1.0, "b": 2.0}}, method="anp")
        result = evaluate(scenario, method="saw")
        assert result.method == "saw"

    def test_deterministic_for_identical_input(self, cloud_fixture_path):
        from mc4d.storage import parse_scenario

        scenario = parse_scenario(cloud_fixture_path.read_bytes())
        first = evaluate(scenario)
        second = evaluate(scenario)
        assert canonical_dumps(first.to_dict()) == canonical_dumps(second.to_dict())


class TestMethodContract:
    """Shared property suite every registered method must satisfy."""

    @pytest.mark.parametrize("method", sorted(available_methods()))
    def test_strictly_positive_normalized_scores(self, method):
        rng = np.random.default_rng(31)
        for _ in range(25):
            n_alternatives = int(rng.integers(2, 6))
            n_criteria = int(rng.integers(1, 4))
            values = {
                f"c{c}": {
                    f"a{k}": float(rng.uniform(0.5, 50.0)) for k in range(n_alternatives)
                }
                for c in range(n_criteria)
            }
            weights = {f"c{c}": float(rng.uniform(0.1, 1.0)) for c in range(n_criteria)}
            scenario = direct_scenario(values, weights=weights, method=method)
            result = evaluate(scenario)
            assert result.method == method
            assert all(score > 0 for score in result.scores.values())
            assert sum(result.scores.values()) == pytest.approx(1.0, abs=1e-9)
            assert [e.rank for e in result.ranking] == list(range(1, n_alternatives + 1))

    def test_registry_rejects_unknown(self):
        with pytest.raises(KeyError):
            get_method("topsis")


class TestSawAnpAgreement:
    def test_flat_mode_anp_equals_saw(self):
        rng = np.random.default_rng(37)
        for _ in range(30):
            n_alternatives = int(rng.integers(2, 6))
            n_criteria = int(rng.integers(1, 5))
            values = {
                f"c{c}": {
                    f"a{k}": float(rng.uniform(0.5, 20.0)) for k in range(n_alternatives)
                }
                for c in range(n_criteria)
            }
            weights = {f"c{c}": float(rng.uniform(0.1, 1.0)) for c in range(n_criteria)}
            categories = {
                f"c{c}": ("cost" if rng.random() < 0.3 else "benefit") for c in range(n_criteria)
            }
            scenario = direct_scenario(values, weights=weights, categories=categories)
            saw = evaluate(scenario, method="saw").scores
            anp = evaluate(scenario, method="anp").scores
            for alternative in saw:
                assert abs(saw[alternative] - anp[alternative]) < 1e-8


class TestInvariances:
    def test_rescaling_ratio_criterion_leaves_scores_unchanged(self):
        base = direct_scenario(
            {"c1": {"a": 4.0, "b": 6.0}, "c2": {"a": 9.0, "b": 1.0}},
            weights={"c1": 0.6, "c2": 0.4},
        )
        baseline = evaluate(base).to_dict()["scores"]
        for k in (0.01, 1000.0):
            scaled = direct_scenario(
                {"c1": {"a": 4.0 * k, "b": 6.0 * k}, "c2": {"a": 9.0, "b": 1.0}},
                weights={"c1": 0.6, "c2": 0.4},
            )
            assert evaluate(scaled).to_dict()["scores"] == baseline

    def test_judged_matrix_restricts_to_feasible_alternatives(self):
        # judgments cover all three alternatives; one is filtered out, and
        # the priorities must come from the 2x2 submatrix over the survivors
        judgments = {
            "quality|alternatives": (
                Judgment("a", "b", 2.0),
                Judgment("a", "c", 8.0),
                Judgment("b", "c", 4.0),
            )
        }
        scenario = Scenario(
            id="restricted",
            title="judged with exclusion",
            alternatives=(
                Alternative("a", "a", {"budget": measured(90)}),
                Alternative("b", "b", {"budget": measured(70)}),
                Alternative("c", "c", {"budget": measured(10)}),
            ),
            criteria=(
                Criterion(
                    id="quality",
                    question="?",
                    kind="qualitative",
                    category="benefit",
                    data_source="judged",
                ),
                Criterion(
                    id="budget",
                    question="?",
                    kind="quantitative",
                    category="benefit",
                    scale=RatioScale("points", 0.0),
                    data_source="direct",
                    attribute="budget",
                    requirement_only=True,
                ),
            ),
            requirements=(Requirement("budget", "minimum", 50.0),),
            judgments=judgments,
            method_config=MethodConfig(criteria_weights={"quality": 1.0}),
        )
        result = evaluate(scenario)
        assert result.filtered_out.feasible == ("a", "b")
        # 2x2 submatrix [[1, 2], [1/2, 1]] gives (2/3, 1/3)
        assert result.scores == pytest.approx({"a": 2 / 3, "b": 1 / 3}, abs=1e-9)

    def test_removing_excluded_alternative_changes_nothing(self):
        scenario = direct_scenario(
            {"c1": {"a": 1.0, "b": 9.0, "c": 8.0}, "c2": {"a": 2.0, "b": 3.0, "c": 4.0}},
            requirements=(Requirement("c1", "minimum", 5.0),),
        )
        with_excluded = evaluate(scenario)
        reduced = dataclasses.replace(
            scenario,
            alternatives=tuple(a for a in scenario.alternatives if a.id != "a"),
        )
        without = evaluate(reduced)
        assert with_excluded.scores == without.scores


class TestResultShape:
    def test_to_dict_contains_ratios_and_audit_trail(self, cloud_fixture_path):
        from mc4d.storage import parse_scenario

        result = evaluate(parse_scenario(cloud_fixture_path.read_bytes()))
        body = result.to_dict()
        assert body["outcome"] == "ok"
        assert json.loads(canonical_dumps(body))  # canonical-serializable
        assert body["score_ratios"]["on_premise/hybrid_colo"] == pytest.approx(
            result.scores["on_premise"] / result.scores["hybrid_colo"], rel=1e-9
        )
        assert body["feasible"] == ["public_cloud", "on_premise", "hybrid_colo"]
        assert body["consistency"][0]["matrix"] == "support_quality|alternatives"

    def test_cr_breach_becomes_warning_not_failure(self):
        judgments = {
            "quality|alternatives": (
                Judgment("a", "b", 9.0),
                Judgment("b", "c", 9.0),
                Judgment("a", "c", 1 / 9.0),  # wildly intransitive
            )
        }
        scenario = Scenario(
            id="noisy",
            title="noisy judgments",
            alternatives=(
                Alternative("a", "a", {"z": measured(1)}),
                Alternative("b", "b", {"z": measured(2)}),
                Alternative("c", "c", {"z": measured(3)}),
            ),
            criteria=(
                Criterion(
                    id="quality",
                    question="?",
                    kind="qualitative",
                    category="benefit",
                    data_source="judged",
                ),
            ),
            judgments=judgments,
            method_config=MethodConfig(criteria_weights={"quality": 1.0}),
        )
        result = evaluate(scenario)
        assert result.outcome == "ok"
        assert any("exceeds threshold" in w for w in result.warnings)
        assert not result.consistency[0][1].acceptable


class TestRequiredMatrices:
    def test_flat_mode_lists_judged_criteria_only(self, cloud_fixture_path):
        from mc4d.storage import parse_scenario

        scenario = parse_scenario(cloud_fixture_path.read_bytes())
        required = required_judgment_matrices(scenario)
        assert set(required) == {"support_quality|alternatives"}
        assert required["support_quality|alternatives"] == (
            "public_cloud",
            "on_premise",
            "hybrid_colo",
        )

    def test_network_mode_lists_every_multi_node_vector(self):
        from tests.test_network import TestFeedbackNetwork

        scenario = TestFeedbackNetwork().build()
        required = required_judgment_matrices(scenario)
        assert set(required) == {
            "c1|alternatives",
            "c2|alternatives",
            "x|crit",
            "y|crit",
        }
        assert required["x|crit"] == ("c1", "c2")
