"""Requirements-based feasibility screening, applied before any scoring.

An alternative survives only if it meets every requirement: its value on
the referenced criterion must be at least any minimum threshold and at
most any maximum threshold. Boundary equality passes.
"""

from __future__ import annotations

from dataclasses import dataclass

from mc4d.errors import Mc4dError, UnresolvableRequirement
from mc4d.model import Requirement, Scenario, attribute_to_criterion_values


@dataclass(frozen=True)
class RequirementViolation:
    requirement: Requirement
    observed: float

    def to_dict(self) -> dict:
        return {
            "criterion_id": self.requirement.criterion_id,
            "bound": self.requirement.bound,
            "threshold": self.requirement.threshold,
            "observed": self.observed,
        }


@dataclass(frozen=True)
class FilterOutcome:
    feasible: tuple[str, ...]
    excluded: tuple[tuple[str, tuple[RequirementViolation, ...]], ...]

    def to_dict(self) -> dict:
        return {
            "feasible": list(self.feasible),
            "excluded": [
                {"alternative": alt, "violations": [v.to_dict() for v in violations]}
                for alt, violations in self.excluded
            ],
        }


def _passes(requirement: Requirement, value: float) -> bool:
    if requirement.bound == "minimum":
        return value >= requirement.threshold
    return value <= requirement.threshold


def filter_alternatives(scenario: Scenario) -> FilterOutcome:
    """Split alternatives into feasible and excluded, keeping input order.

    Every violated requirement is reported per excluded alternative, so
    the audit trail shows all reasons at once.
    """
    values_by_criterion: dict[str, dict[str, float]] = {}
    for requirement in scenario.requirements:
        if requirement.criterion_id in values_by_criterion:
            continue
        try:
            values_by_criterion[requirement.criterion_id] = attribute_to_criterion_values(
                scenario, requirement.criterion_id
            )
        except (Mc4dError, KeyError, ValueError) as exc:
            raise UnresolvableRequirement(requirement.criterion_id, "*", str(exc)) from exc

    feasible: list[str] = []
    excluded: list[tuple[str, tuple[RequirementViolation, ...]]] = []
    ordered_requirements = sorted(
        scenario.requirements, key=lambda r: (r.criterion_id, r.bound, r.threshold)
    )
    for alternative in scenario.alternatives:
        violations = []
        for requirement in ordered_requirements:
            values = values_by_criterion[requirement.criterion_id]
            if alternative.id not in values:
                raise UnresolvableRequirement(requirement.criterion_id, alternative.id)
            observed = values[alternative.id]
            if not _passes(requirement, observed):
                violations.append(RequirementViolation(requirement, observed))
        if violations:
            excluded.append((alternative.id, tuple(violations)))
        else:
            feasible.append(alternative.id)
    return FilterOutcome(tuple(feasible), tuple(excluded))
