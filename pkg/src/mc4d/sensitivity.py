"""One-at-a-time weight sweeps and rank-reversal detection.

The swept weight runs over an even grid on [0, 1] while the remaining
weights shrink or grow proportionally so the total stays 1; a reversal
point is recorded between adjacent samples whose top alternative differs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from mc4d.canonical import canon_number
from mc4d.errors import DegenerateWeights
from mc4d.methods import (
    EvaluationResult,
    RankingEntry,
    criterion_priority_vectors,
    evaluate,
    rank,
    saw_scores,
)
from mc4d.model import Scenario
from mc4d.network import anp_scores, hierarchy_scores


@dataclass(frozen=True)
class SweepSample:
    weight: float
    scores: dict[str, float]
    ranking: tuple[RankingEntry, ...]

    @property
    def top(self) -> str:
        return self.ranking[0].alternative


@dataclass(frozen=True)
class SensitivitySweep:
    criterion_id: str
    baseline_weight: float | None
    samples: tuple[SweepSample, ...]
    reversal_points: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "criterion_id": self.criterion_id,
            "baseline_weight": (
                canon_number(self.baseline_weight) if self.baseline_weight is not None else None
            ),
            "samples": [
                {
                    "weight": canon_number(s.weight),
                    "scores": {alt: canon_number(v) for alt, v in s.scores.items()},
                    "ranking": [
                        {
                            "rank": e.rank,
                            "alternative": e.alternative,
                            "score": canon_number(e.score),
                        }
                        for e in s.ranking
                    ],
                }
                for s in self.samples
            ],
            "reversal_points": [canon_number(p) for p in self.reversal_points],
        }


def _reweighted(weights: dict[str, float], swept: str, value: float) -> dict[str, float]:
    """Set the swept weight and scale the others proportionally to 1 - value."""
    others_total = sum(w for c, w in weights.items() if c != swept)
    out = {}
    for criterion_id, weight in weights.items():
        if criterion_id == swept:
            out[criterion_id] = value
        else:
            out[criterion_id] = weight * (1.0 - value) / others_total
    return out


def _reweighted_network(scenario: Scenario, swept_cluster: str, value: float) -> Scenario:
    """Scale the swept cluster's weight to ``value`` in every column it feeds."""
    network = scenario.network
    new_weights = {}
    for target, sources in network.cluster_weights.items():
        if swept_cluster not in sources or len(sources) == 1:
            new_weights[target] = dict(sources)
            continue
        new_weights[target] = _reweighted(sources, swept_cluster, value)
    return replace(scenario, network=replace(network, cluster_weights=new_weights))


def weight_sweep(scenario: Scenario, criterion_id: str, steps: int) -> SensitivitySweep:
    """Sample the weight grid {0, 1/(steps-1), ..., 1} and re-evaluate.

    Flat scenarios sweep a criterion weight; network scenarios sweep the
    named cluster's weight (inner supermatrix blocks have no canonical
    single-parameter perturbation).
    """
    if steps < 2:
        raise ValueError("a sweep needs at least 2 steps")
    baseline: EvaluationResult = evaluate(scenario)
    if baseline.outcome != "ok":
        raise DegenerateWeights("no feasible alternatives to sweep over")
    feasible = baseline.filtered_out.feasible

    if scenario.network is None:
        weights = {
            c.id: scenario.method_config.criteria_weights[c.id]
            for c in scenario.evaluated_criteria()
        }
        if criterion_id not in weights:
            raise KeyError(f"no evaluated criterion '{criterion_id}'")
        if len(weights) < 2:
            raise DegenerateWeights(
                "sweeping needs at least two criteria sharing the weight budget"
            )
        total = sum(weights.values())
        baseline_weight = weights[criterion_id] / total
        vectors, _ = criterion_priority_vectors(scenario, feasible)
        use_saw = baseline.method == "saw"

        def score_at(value: float) -> dict[str, float]:
            reweighted = _reweighted(weights, criterion_id, value)
            if use_saw:
                return saw_scores(feasible, vectors, reweighted)
            return hierarchy_scores(reweighted, vectors, feasible)

    else:
        clusters = {c.id for c in scenario.network.clusters}
        if criterion_id not in clusters:
            raise KeyError(f"network sweeps perturb cluster weights; no cluster '{criterion_id}'")
        affected = [
            target
            for target, sources in scenario.network.cluster_weights.items()
            if criterion_id in sources and len(sources) > 1
        ]
        if not affected:
            raise DegenerateWeights(
                f"cluster '{criterion_id}' shares no weight budget to sweep"
            )
        first = sorted(affected)[0]
        baseline_weight = scenario.network.cluster_weights[first][criterion_id]

        def score_at(value: float) -> dict[str, float]:
            modified = _reweighted_network(scenario, criterion_id, value)
            scores, _, _ = anp_scores(modified, feasible)
            return scores

    samples = []
    for k in range(steps):
        weight = k / (steps - 1)
        scores = score_at(weight)
        total = sum(scores.values())
        scores = {alt: s / total for alt, s in scores.items()}
        samples.append(SweepSample(weight=weight, scores=scores, ranking=rank(scores)))

    reversals = tuple(
        (a.weight + b.weight) / 2.0
        for a, b in zip(samples, samples[1:])
        if a.top != b.top
    )
    return SensitivitySweep(
        criterion_id=criterion_id,
        baseline_weight=baseline_weight,
        samples=tuple(samples),
        reversal_points=reversals,
    )
