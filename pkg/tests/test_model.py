import dataclasses
import random

import pytest

from mc4d.errors import MissingAttribute, UnmappedLabel
from mc4d.model import (
    ORIENTATION,
    Alternative,
    AttributeValue,
    BinaryScale,
    Criterion,
    MethodConfig,
    NominalScale,
    RatioScale,
    Requirement,
    Scenario,
    attribute_to_criterion_values,
    measured,
    textual,
    validate_scenario,
)
from tests.conftest import direct_scenario


def codes(report):
    return sorted(v.code for v in report.violations)


def two_alternatives(**extra):
    return (
        Alternative("a1", "first", {"size": measured(1), **extra.get("a1", {})}),
        Alternative("a2", "second", {"size": measured(2), **extra.get("a2", {})}),
    )


def minimal_scenario(**overrides) -> Scenario:
    base = dict(
        id="s",
        title="t",
        alternatives=two_alternatives(),
        criteria=(
            Criterion(
                id="size",
                question="how big?",
                kind="quantitative",
                category="benefit",
                scale=RatioScale("units", 0.0),
                data_source="direct",
                attribute="size",
            ),
        ),
        method_config=MethodConfig(criteria_weights={"size": 1.0}),
    )
    base.update(overrides)
    return Scenario(**base)


class TestValidateScenario:
    def test_minimal_scenario_is_clean(self):
        assert validate_scenario(minimal_scenario()).ok

    def test_single_alternative_flags_too_few(self):
        scenario = minimal_scenario(alternatives=two_alternatives()[:1])
        assert "TOO_FEW_ALTERNATIVES" in codes(validate_scenario(scenario))

    def test_identical_attribute_maps_flag_duplicate(self):
        twin = Alternative("a3", "third", {"size": measured(1)})
        scenario = minimal_scenario(alternatives=(two_alternatives()[0], twin))
        report = validate_scenario(scenario)
        assert "DUPLICATE_ALTERNATIVE" in codes(report)
        message = next(v for v in report.violations if v.code == "DUPLICATE_ALTERNATIVE").message
        assert "a1" in message and "a3" in message

    def test_dangling_requirement(self):
        scenario = minimal_scenario(
            requirements=(Requirement("nope", "minimum", 1.0),)
        )
        assert "DANGLING_REQUIREMENT" in codes(validate_scenario(scenario))

    def test_duplicate_ids_flagged(self):
        scenario = minimal_scenario(
            alternatives=two_alternatives() + (Alternative("a1", "again", {"size": measured(3)}),)
        )
        assert "DUPLICATE_ID" in codes(validate_scenario(scenario))

    def test_bad_id_charset(self):
        scenario = minimal_scenario(id="Not Valid!")
        assert "INVALID_ID" in codes(validate_scenario(scenario))

    def test_qualitative_with_direct_source(self):
        criterion = Criterion(
            id="feel", question="?", kind="qualitative", category="benefit", data_source="direct"
        )
        scenario = minimal_scenario(
            criteria=minimal_scenario().criteria + (criterion,),
            method_config=MethodConfig(criteria_weights={"size": 0.5, "feel": 0.5}),
        )
        assert "QUALITATIVE_NOT_JUDGED" in codes(validate_scenario(scenario))

    def test_nominal_scale_needs_two_labels(self):
        criterion = Criterion(
            id="level",
            question="?",
            kind="quantitative",
            category="benefit",
            scale=NominalScale(("only",)),
            value_map={"only": 1.0},
            data_source="direct",
            attribute="level",
        )
        scenario = minimal_scenario(
            criteria=(criterion,),
            alternatives=(
                Alternative("a1", "x", {"level": textual("only")}),
                Alternative("a2", "y", {"level": textual("only"), "extra": measured(1)}),
            ),
            method_config=MethodConfig(criteria_weights={"level": 1.0}),
        )
        assert "BAD_SCALE" in codes(validate_scenario(scenario))

    def test_value_map_must_be_monotone(self):
        criterion = Criterion(
            id="level",
            question="?",
            kind="quantitative",
            category="benefit",
            scale=NominalScale(("low", "mid", "high")),
            value_map={"low": 1.0, "mid": 3.0, "high": 2.0},
            data_source="direct",
            attribute="level",
        )
        scenario = minimal_scenario(
            criteria=(criterion,),
            alternatives=(
                Alternative("a1", "x", {"level": textual("low")}),
                Alternative("a2", "y", {"level": textual("high")}),
            ),
            method_config=MethodConfig(criteria_weights={"level": 1.0}),
        )
        assert "BAD_VALUE_MAP" in codes(validate_scenario(scenario))

    def test_requirement_on_qualitative_rejected(self):
        criterion = Criterion(
            id="feel", question="?", kind="qualitative", category="benefit"
        )
        scenario = minimal_scenario(
            criteria=minimal_scenario().criteria + (criterion,),
            requirements=(Requirement("feel", "minimum", 1.0),),
            method_config=MethodConfig(criteria_weights={"size": 0.5, "feel": 0.5}),
        )
        assert "REQUIREMENT_NOT_MEASURABLE" in codes(validate_scenario(scenario))

    def test_requirement_on_judged_quantitative_rejected(self):
        # a judged criterion has no per-alternative numbers to compare
        criterion = Criterion(
            id="agility",
            question="?",
            kind="quantitative",
            category="benefit",
            scale=RatioScale("points", 0.0),
            data_source="judged",
        )
        scenario = minimal_scenario(
            criteria=minimal_scenario().criteria + (criterion,),
            requirements=(Requirement("agility", "minimum", 1.0),),
            method_config=MethodConfig(criteria_weights={"size": 0.5, "agility": 0.5}),
        )
        assert "REQUIREMENT_NOT_MEASURABLE" in codes(validate_scenario(scenario))

    def test_bound_orientation_pairing(self):
        scenario = minimal_scenario(requirements=(Requirement("size", "maximum", 5.0),))
        assert "BOUND_ORIENTATION_MISMATCH" in codes(validate_scenario(scenario))
        relaxed = dataclasses.replace(
            scenario,
            method_config=MethodConfig(criteria_weights={"size": 1.0}, relax_bound_pairing=True),
        )
        assert "BOUND_ORIENTATION_MISMATCH" not in codes(validate_scenario(relaxed))

    def test_missing_weight_in_flat_mode(self):
        scenario = minimal_scenario(method_config=MethodConfig(criteria_weights={}))
        assert "MISSING_CRITERION_WEIGHT" in codes(validate_scenario(scenario))

    def test_scenario_without_evaluated_criteria_rejected(self):
        no_criteria = minimal_scenario(criteria=(), method_config=MethodConfig())
        assert "NO_EVALUATED_CRITERIA" in codes(validate_scenario(no_criteria))
        only_requirement = dataclasses.replace(
            minimal_scenario(method_config=MethodConfig()).criteria[0], requirement_only=True
        )
        scenario = minimal_scenario(
            criteria=(only_requirement,), method_config=MethodConfig()
        )
        assert "NO_EVALUATED_CRITERIA" in codes(validate_scenario(scenario))

    def test_value_below_ratio_bound(self):
        scenario = minimal_scenario(
            alternatives=(
                Alternative("a1", "x", {"size": measured(-1)}),
                Alternative("a2", "y", {"size": measured(2)}),
            )
        )
        assert "VALUE_BELOW_BOUND" in codes(validate_scenario(scenario))

    def test_every_violation_reported_not_just_first(self):
        scenario = minimal_scenario(
            alternatives=two_alternatives()[:1],
            requirements=(Requirement("nope", "minimum", 1.0),),
        )
        report = validate_scenario(scenario)
        assert {"TOO_FEW_ALTERNATIVES", "DANGLING_REQUIREMENT"} <= set(codes(report))

    def test_order_insensitive(self):
        scenario = direct_scenario(
            {
                "speed": {"x": 1.0, "y": 1.0, "z": 3.0},
                "cost": {"x": 2.0, "y": 2.0, "z": 4.0},
            },
            requirements=(Requirement("missing", "minimum", 0.0),),
        )
        baseline = validate_scenario(scenario).violations
        rng = random.Random(7)
        for _ in range(5):
            alternatives = list(scenario.alternatives)
            criteria = list(scenario.criteria)
            rng.shuffle(alternatives)
            rng.shuffle(criteria)
            permuted = dataclasses.replace(
                scenario, alternatives=tuple(alternatives), criteria=tuple(criteria)
            )
            assert validate_scenario(permuted).violations == baseline


class TestOrientation:
    def test_every_category_has_exactly_one_orientation(self):
        assert set(ORIENTATION) == {"benefit", "opportunity", "cost", "risk"}
        assert set(ORIENTATION.values()) == {"positive", "negative"}
        assert ORIENTATION["benefit"] == ORIENTATION["opportunity"] == "positive"
        assert ORIENTATION["cost"] == ORIENTATION["risk"] == "negative"


def nominal_scenario(value_map, labels, texts):
    criterion = Criterion(
        id="level",
        question="how high is the level?",
        kind="quantitative",
        category="benefit",
        scale=NominalScale(tuple(labels)),
        value_map=value_map,
        data_source="direct",
        attribute="level",
    )
    alternatives = tuple(
        Alternative(f"a{k}", f"alt {k}", {"level": textual(text)})
        for k, text in enumerate(texts)
    )
    return Scenario(
        id="s",
        title="t",
        alternatives=alternatives,
        criteria=(criterion,),
        method_config=MethodConfig(criteria_weights={"level": 1.0}),
    )


class TestAttributeResolution:
    def test_binary_yes_no_mapping(self):
        criterion = Criterion(
            id="soa",
            question="is SOA usage possible?",
            kind="quantitative",
            category="benefit",
            scale=BinaryScale("yes", "no"),
            value_map={"yes": 1.0, "no": 0.0},
            data_source="direct",
            attribute="soa",
        )
        scenario = Scenario(
            id="s",
            title="t",
            alternatives=(
                Alternative("a1", "x", {"soa": textual("yes")}),
                Alternative("a2", "y", {"soa": textual("no")}),
            ),
            criteria=(criterion,),
            method_config=MethodConfig(criteria_weights={"soa": 1.0}),
        )
        assert attribute_to_criterion_values(scenario, "soa") == {"a1": 1.0, "a2": 0.0}

    def test_ratio_identity_including_zero_at_bound(self):
        scenario = direct_scenario({"cost": {"a1": 0.0, "a2": 125.5}}, categories={"cost": "cost"})
        assert attribute_to_criterion_values(scenario, "cost") == {"a1": 0.0, "a2": 125.5}

    def test_nominal_label_lookup(self):
        scenario = nominal_scenario(
            {"low": 1.0, "medium": 2.0, "high": 3.0},
            ("low", "medium", "high"),
            ("high", "low"),
        )
        assert attribute_to_criterion_values(scenario, "level") == {"a0": 3.0, "a1": 1.0}

    def test_missing_attribute_raises(self):
        scenario = minimal_scenario(
            alternatives=(
                Alternative("a1", "x", {"size": measured(1)}),
                Alternative("a2", "y", {"other": measured(2)}),
            )
        )
        with pytest.raises(MissingAttribute) as err:
            attribute_to_criterion_values(scenario, "size")
        assert err.value.alternative_id == "a2"

    def test_unmapped_label_raises(self):
        scenario = nominal_scenario({"low": 1.0, "high": 3.0}, ("low", "high"), ("low", "high"))
        broken = dataclasses.replace(
            scenario,
            alternatives=(
                scenario.alternatives[0],
                Alternative("a1", "alt 1", {"level": textual("medium")}),
            ),
        )
        with pytest.raises(UnmappedLabel):
            attribute_to_criterion_values(broken, "level")

    def test_relabeling_with_relabeled_value_map_is_invariant(self):
        base = nominal_scenario(
            {"low": 1.0, "medium": 2.0, "high": 3.0},
            ("low", "medium", "high"),
            ("medium", "high", "low"),
        )
        relabel = {"low": "bronze", "medium": "silver", "high": "gold"}
        relabeled = nominal_scenario(
            {relabel[k]: v for k, v in {"low": 1.0, "medium": 2.0, "high": 3.0}.items()},
            tuple(relabel[k] for k in ("low", "medium", "high")),
            tuple(relabel[t] for t in ("medium", "high", "low")),
        )
        assert attribute_to_criterion_values(base, "level") == attribute_to_criterion_values(
            relabeled, "level"
        )


class TestAttributeValue:
    def test_exactly_one_of_measured_or_text(self):
        scenario = minimal_scenario(
            alternatives=(
                Alternative("a1", "x", {"size": measured(1), "odd": AttributeValue()}),
                Alternative("a2", "y", {"size": measured(2)}),
            )
        )
        assert "BAD_ATTRIBUTE_VALUE" in codes(validate_scenario(scenario))

    def test_nonfinite_measured_rejected(self):
        scenario = minimal_scenario(
            alternatives=(
                Alternative("a1", "x", {"size": measured(float("inf"))}),
                Alternative("a2", "y", {"size": measured(2)}),
            )
        )
        assert "NONFINITE_MEASURED" in codes(validate_scenario(scenario))
