import json
from pathlib import Path

import pytest

from mc4d.model import (
    Alternative,
    Criterion,
    MethodConfig,
    RatioScale,
    Requirement,
    Scenario,
    measured,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def cloud_fixture_path() -> Path:
    return FIXTURES / "cloud_infrastructure.json"


@pytest.fixture
def crossing_fixture_path() -> Path:
    return FIXTURES / "two_criteria_crossing.json"


@pytest.fixture
def cloud_fixture_doc(cloud_fixture_path) -> dict:
    return json.loads(cloud_fixture_path.read_text())


def direct_scenario(
    values: dict[str, dict[str, float]],
    weights: dict[str, float] | None = None,
    categories: dict[str, str] | None = None,
    requirements: tuple[Requirement, ...] = (),
    method: str = "saw",
) -> Scenario:
    """Scenario with ratio-scale direct-data criteria.

    ``values`` maps criterion id -> {alternative id -> raw value}.
    """
    criterion_ids = list(values)
    alternative_ids = sorted({alt for per in values.values() for alt in per})
    categories = categories or {}
    alternatives = tuple(
        Alternative(
            id=alt,
            name=alt,
            attributes={c: measured(values[c][alt]) for c in criterion_ids},
        )
        for alt in alternative_ids
    )
    criteria = tuple(
        Criterion(
            id=c,
            question=f"how does the option do on {c}?",
            kind="quantitative",
            category=categories.get(c, "benefit"),
            scale=RatioScale(unit="points", lower_bound=0.0),
            data_source="direct",
            attribute=c,
        )
        for c in criterion_ids
    )
    if weights is None:
        weights = {c: 1.0 / len(criterion_ids) for c in criterion_ids}
    return Scenario(
        id="test-scenario",
        title="test scenario",
        alternatives=alternatives,
        criteria=criteria,
        requirements=requirements,
        method_config=MethodConfig(method=method, criteria_weights=weights),
    )
