"""Evaluation pipeline: filter, score with a pluggable method, rank.

Methods are registered by name and must return strictly positive scores
normalized to sum 1 over the feasible alternatives, so that score
quotients carry meaning (ratio-scale results). Purely ordinal methods do
not satisfy the registry contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from mc4d.canonical import canon_number
from mc4d.errors import InvalidScenario, UnresolvableCriterion
from mc4d.errors import Mc4dError
from mc4d.model import (
    ALTERNATIVES_CLUSTER,
    Scenario,
    attribute_to_criterion_values,
    matrix_key,
    validate_scenario,
)
from mc4d.network import anp_scores, resolve_network
from mc4d.priorities import (
    ConsistencyReport,
    PriorityVector,
    derive_priorities,
    direct_priorities,
    judgments_to_matrix,
)
from mc4d.satisficing import FilterOutcome, filter_alternatives

SCORE_GRANULARITY = 1e-12

RESULT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RankingEntry:
    rank: int
    alternative: str
    score: float


@dataclass(frozen=True)
class EvaluationResult:
    """Scores, ranking and the full audit trail of one evaluation."""

    method: str
    outcome: str  # "ok" | "no_feasible_alternatives"
    scores: dict[str, float]
    ranking: tuple[RankingEntry, ...]
    filtered_out: FilterOutcome
    consistency: tuple[tuple[str, ConsistencyReport], ...] = ()
    warnings: tuple[str, ...] = ()

    def score_ratios(self) -> dict[str, float]:
        """Quotients of every ordered score pair ("a/b" -> score_a / score_b)."""
        ratios = {}
        for a, sa in self.scores.items():
            for b, sb in self.scores.items():
                if a != b and sb > 0:
                    ratios[f"{a}/{b}"] = sa / sb
        return ratios

    def to_dict(self) -> dict:
        """Canonical dict form with floats at canonical precision."""
        return {
            "schema_version": RESULT_SCHEMA_VERSION,
            "method": self.method,
            "outcome": self.outcome,
            "scores": {alt: canon_number(s) for alt, s in self.scores.items()},
            "ranking": [
                {"rank": e.rank, "alternative": e.alternative, "score": canon_number(e.score)}
                for e in self.ranking
            ],
            "score_ratios": {k: canon_number(v) for k, v in self.score_ratios().items()},
            "feasible": list(self.filtered_out.feasible),
            "excluded": self.filtered_out.to_dict()["excluded"],
            "consistency": [
                {"matrix": key, **report.to_dict()} for key, report in self.consistency
            ],
            "warnings": list(self.warnings),
        }


def rank(scores: dict[str, float]) -> tuple[RankingEntry, ...]:
    """Order descending by score; near-ties break lexicographically by id.

    Scores are compared at 1e-12 granularity so float noise cannot flip
    an intended tie; ranks are contiguous 1..m.
    """
    if not scores:
        raise ValueError("cannot rank an empty score map")
    quantized = {alt: round(score / SCORE_GRANULARITY) for alt, score in scores.items()}
    ordered = sorted(scores, key=lambda alt: (-quantized[alt], alt))
    return tuple(
        RankingEntry(rank=k + 1, alternative=alt, score=scores[alt])
        for k, alt in enumerate(ordered)
    )


def criterion_priority_vectors(
    scenario: Scenario, feasible: tuple[str, ...]
) -> tuple[dict[str, PriorityVector], list[tuple[str, ConsistencyReport]]]:
    """One priority vector over the feasible alternatives per evaluated criterion.

    Direct criteria normalize their measured data (reciprocally when the
    orientation is negative); judged criteria use the principal
    eigenvector of their comparison matrix restricted to the feasible set.
    """
    vectors: dict[str, PriorityVector] = {}
    reports: list[tuple[str, ConsistencyReport]] = []
    threshold = scenario.method_config.cr_threshold
    for criterion in scenario.evaluated_criteria():
        if criterion.data_source == "direct":
            try:
                values = attribute_to_criterion_values(scenario, criterion.id)
                values = {alt: values[alt] for alt in feasible}
                vectors[criterion.id] = direct_priorities(values, criterion.orientation)
            except Mc4dError as exc:
                raise UnresolvableCriterion(criterion.id, str(exc)) from exc
        else:
            key = matrix_key(criterion.id, ALTERNATIVES_CLUSTER)
            judgments = [
                j
                for j in scenario.judgments.get(key, ())
                if j.i in feasible and j.j in feasible
            ]
            matrix = judgments_to_matrix(judgments, feasible, matrix=key)
            vector, report = derive_priorities(matrix, threshold)
            vectors[criterion.id] = vector
            reports.append((key, report))
    return vectors, reports


def required_judgment_matrices(scenario: Scenario) -> dict[str, tuple[str, ...]]:
    """Every judgment matrix a full elicitation needs, with its node set.

    Computed over all alternatives (elicitation happens before filtering);
    vectors over a single node and direct-data criteria need no judgments.
    """
    required: dict[str, tuple[str, ...]] = {}
    all_alternatives = tuple(a.id for a in scenario.alternatives)
    criteria = {c.id: c for c in scenario.criteria}
    if scenario.network is None:
        for criterion in scenario.evaluated_criteria():
            if criterion.data_source == "judged" and len(all_alternatives) > 1:
                required[matrix_key(criterion.id, ALTERNATIVES_CLUSTER)] = all_alternatives
        return required
    structure = resolve_network(scenario.network, all_alternatives)
    for target, groups in structure.incoming().items():
        for cluster_id, influencers in groups.items():
            if len(influencers) < 2:
                continue
            criterion = criteria.get(target)
            direct = (
                cluster_id == ALTERNATIVES_CLUSTER
                and criterion is not None
                and criterion.data_source == "direct"
            )
            if not direct:
                required[matrix_key(target, cluster_id)] = influencers
    return required


def saw_scores(
    feasible: tuple[str, ...],
    vectors: dict[str, PriorityVector],
    weights: dict[str, float],
) -> dict[str, float]:
    """Simple additive weighting: the weighted sum of criterion priorities."""
    if set(weights) != set(vectors):
        missing = sorted(set(weights) ^ set(vectors))
        raise UnresolvableCriterion(missing[0], "no priority vector or weight")
    total = sum(weights.values())
    scores = {}
    for alt in feasible:
        scores[alt] = sum(
            (weight / total) * vectors[criterion_id][alt]
            for criterion_id, weight in weights.items()
        )
    return scores


def _run_saw(
    scenario: Scenario, feasible: tuple[str, ...]
) -> tuple[dict[str, float], list[tuple[str, ConsistencyReport]], list[str]]:
    if len(feasible) == 1:
        return {feasible[0]: 1.0}, [], []
    vectors, reports = criterion_priority_vectors(scenario, feasible)
    weights = {
        c.id: scenario.method_config.criteria_weights[c.id]
        for c in scenario.evaluated_criteria()
    }
    return saw_scores(feasible, vectors, weights), reports, []


class Method(Protocol):
    def __call__(
        self, scenario: Scenario, feasible: tuple[str, ...]
    ) -> tuple[dict[str, float], list[tuple[str, ConsistencyReport]], list[str]]: ...


# Registry is populated at import time and treated as immutable afterwards.
_METHODS: dict[str, Method] = {
    "anp": anp_scores,
    "saw": _run_saw,
}


def available_methods() -> tuple[str, ...]:
    return tuple(sorted(_METHODS))


def get_method(name: str) -> Method:
    try:
        return _METHODS[name]
    except KeyError:
        raise KeyError(f"unknown method '{name}'; available: {available_methods()}") from None


def evaluate(scenario: Scenario, method: str | None = None) -> EvaluationResult:
    """Run the full pipeline: validate, filter, score, rank.

    Filtering away every alternative is a distinguished outcome, not an
    error: the result carries outcome "no_feasible_alternatives" and the
    audit trail of exclusions.
    """
    report = validate_scenario(scenario)
    if not report.ok:
        raise InvalidScenario(report)
    method_name = method or scenario.method_config.method
    score_fn = get_method(method_name)

    outcome = filter_alternatives(scenario)
    if not outcome.feasible:
        return EvaluationResult(
            method=method_name,
            outcome="no_feasible_alternatives",
            scores={},
            ranking=(),
            filtered_out=outcome,
        )
    scores, reports, warnings = score_fn(scenario, outcome.feasible)
    total = sum(scores.values())
    scores = {alt: score / total for alt, score in scores.items()}
    threshold = scenario.method_config.cr_threshold
    cr_warnings = [
        f"consistency ratio {report.cr:.4f} of matrix '{key}' exceeds threshold {threshold}"
        for key, report in reports
        if not report.acceptable
    ]
    return EvaluationResult(
        method=method_name,
        outcome="ok",
        scores=scores,
        ranking=rank(scores),
        filtered_out=outcome,
        consistency=tuple(reports),
        warnings=tuple(warnings) + tuple(cr_warnings),
    )
