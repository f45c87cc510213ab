"""Domain types for decision scenarios and their validation.

A scenario bundles everything one decision needs: the alternatives under
consideration, typed criteria with measurement scales, hard requirements,
an optional criteria network, pairwise judgments, and method configuration.
All types are immutable values; validation returns data, never raises.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from mc4d.errors import MissingAttribute, NonNumericAttribute, UnmappedLabel

ID_PATTERN = re.compile(r"^[a-z0-9_-]{1,64}$")

CATEGORIES = ("benefit", "opportunity", "cost", "risk")

# Category fully determines orientation: benefits and opportunities pull a
# decision up, costs and risks pull it down.
ORIENTATION = {
    "benefit": "positive",
    "opportunity": "positive",
    "cost": "negative",
    "risk": "negative",
}

SAATY_MIN = 1.0 / 9.0
SAATY_MAX = 9.0

# Reserved id of the cluster holding alternative nodes in a criteria network.
ALTERNATIVES_CLUSTER = "alternatives"


@dataclass(frozen=True)
class AttributeValue:
    """Either a measured number with a unit or a free-text description."""

    measured: float | None = None
    unit: str = ""
    text: str | None = None

    @property
    def is_measured(self) -> bool:
        return self.measured is not None


def measured(value: float, unit: str = "") -> AttributeValue:
    return AttributeValue(measured=float(value), unit=unit)


def textual(text: str) -> AttributeValue:
    return AttributeValue(text=text)


@dataclass(frozen=True)
class Alternative:
    id: str
    name: str
    attributes: dict[str, AttributeValue] = field(default_factory=dict)


@dataclass(frozen=True)
class NominalScale:
    """Ordered label scale, e.g. low < medium < high."""

    labels: tuple[str, ...]


@dataclass(frozen=True)
class BinaryScale:
    """Two-label yes/no scale."""

    yes_label: str = "yes"
    no_label: str = "no"

    @property
    def labels(self) -> tuple[str, str]:
        return (self.yes_label, self.no_label)


@dataclass(frozen=True)
class RatioScale:
    unit: str = ""
    lower_bound: float = 0.0


Scale = NominalScale | BinaryScale | RatioScale


@dataclass(frozen=True)
class Criterion:
    """A question to examine about every alternative, plus how to measure it.

    Quantitative criteria carry a scale; qualitative ones are assessed purely
    through pairwise judgments. ``attribute`` names the alternative attribute
    backing a direct-data criterion; nominal labels enter evaluation only
    through an explicit ``value_map``.
    """

    id: str
    question: str
    kind: str  # "qualitative" | "quantitative"
    category: str  # "benefit" | "opportunity" | "cost" | "risk"
    scale: Scale | None = None
    value_map: dict[str, float] | None = None
    data_source: str = "judged"  # "direct" | "judged"
    attribute: str | None = None
    requirement_only: bool = False

    @property
    def orientation(self) -> str:
        return ORIENTATION[self.category]


@dataclass(frozen=True)
class Requirement:
    """Hard cutoff on one criterion: a minimum or maximum admissible value."""

    criterion_id: str
    bound: str  # "minimum" | "maximum"
    threshold: float


@dataclass(frozen=True)
class Judgment:
    """One pairwise comparison: node i is ``ratio`` times as important as j."""

    i: str
    j: str
    ratio: float


@dataclass(frozen=True)
class Cluster:
    id: str
    name: str
    kind: str  # "criteria" | "alternatives"
    category: str | None = None
    nodes: tuple[str, ...] = ()


@dataclass(frozen=True)
class CriteriaNetwork:
    """Clusters, directed influence links and cluster weights.

    A link (source, target) means the source node is compared against its
    cluster peers with respect to the target. The alternatives cluster's
    nodes are populated from the feasible alternatives at evaluation time.
    """

    clusters: tuple[Cluster, ...]
    links: tuple[tuple[str, str], ...]
    cluster_weights: dict[str, dict[str, float]] = field(default_factory=dict)

    def cluster_by_id(self, cluster_id: str) -> Cluster | None:
        for cluster in self.clusters:
            if cluster.id == cluster_id:
                return cluster
        return None


@dataclass(frozen=True)
class MethodConfig:
    method: str = "anp"  # "anp" | "saw"
    criteria_weights: dict[str, float] = field(default_factory=dict)
    bocr_weights: dict[str, float] | None = None
    bocr_formula: str | None = None  # "multiplicative" | "additive" | None = auto
    cr_threshold: float = 0.10
    relax_bound_pairing: bool = False


@dataclass(frozen=True)
class Scenario:
    id: str
    title: str
    description: str = ""
    goals: tuple[str, ...] = ()
    alternatives: tuple[Alternative, ...] = ()
    criteria: tuple[Criterion, ...] = ()
    requirements: tuple[Requirement, ...] = ()
    network: CriteriaNetwork | None = None
    judgments: dict[str, tuple[Judgment, ...]] = field(default_factory=dict)
    method_config: MethodConfig = field(default_factory=MethodConfig)

    def criterion(self, criterion_id: str) -> Criterion:
        for criterion in self.criteria:
            if criterion.id == criterion_id:
                return criterion
        raise KeyError(criterion_id)

    def alternative(self, alternative_id: str) -> Alternative:
        for alternative in self.alternatives:
            if alternative.id == alternative_id:
                return alternative
        raise KeyError(alternative_id)

    def evaluated_criteria(self) -> tuple[Criterion, ...]:
        """Criteria that take part in scoring (requirement-only ones do not)."""
        return tuple(c for c in self.criteria if not c.requirement_only)


@dataclass(frozen=True)
class Violation:
    code: str
    location: str
    message: str

    def to_dict(self) -> dict:
        return {"code": self.code, "location": self.location, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def matrix_key(target_node: str, source_cluster: str) -> str:
    """Key of the judgment matrix comparing a cluster's nodes w.r.t. a target."""
    return f"{target_node}|{source_cluster}"


def _check_id(out: list[Violation], location: str, value: str) -> None:
    if not ID_PATTERN.match(value or ""):
        out.append(
            Violation(
                "INVALID_ID",
                location,
                f"id {value!r} must match [a-z0-9_-] and be 1-64 characters long",
            )
        )


def _attribute_maps_equal(a: Alternative, b: Alternative) -> bool:
    return a.attributes == b.attributes


def _validate_value_map(out: list[Violation], criterion: Criterion, loc: str) -> None:
    scale = criterion.scale
    vm = criterion.value_map
    if vm is None or not isinstance(scale, (NominalScale, BinaryScale)):
        return
    labels = scale.labels
    missing = [label for label in labels if label not in vm]
    if missing:
        out.append(
            Violation("BAD_VALUE_MAP", loc, f"value_map lacks entries for labels {missing}")
        )
    extra = [label for label in vm if label not in labels]
    if extra:
        out.append(
            Violation("BAD_VALUE_MAP", loc, f"value_map has entries for unknown labels {extra}")
        )
    for label, value in vm.items():
        if not math.isfinite(value) or value < 0:
            out.append(
                Violation(
                    "BAD_VALUE_MAP", loc, f"value for label '{label}' must be finite and >= 0"
                )
            )
            return
        if value == 0 and criterion.orientation == "negative":
            out.append(
                Violation(
                    "BAD_VALUE_MAP",
                    loc,
                    f"label '{label}' maps to 0 on a negative-orientation criterion",
                )
            )
    if missing or extra:
        return
    mapped = [vm[label] for label in labels]
    increasing = all(a < b for a, b in zip(mapped, mapped[1:]))
    decreasing = all(a > b for a, b in zip(mapped, mapped[1:]))
    if len(mapped) > 1 and not (increasing or decreasing):
        out.append(
            Violation("BAD_VALUE_MAP", loc, "mapped values must be strictly monotone in label order")
        )


def _validate_criterion(out: list[Violation], criterion: Criterion) -> None:
    loc = f"criteria.{criterion.id}"
    if criterion.kind not in ("qualitative", "quantitative"):
        out.append(Violation("BAD_SCALE", loc, f"unknown criterion kind {criterion.kind!r}"))
        return
    if criterion.category not in CATEGORIES:
        out.append(Violation("BAD_CATEGORY", loc, f"unknown category {criterion.category!r}"))
    if criterion.data_source not in ("direct", "judged"):
        out.append(
            Violation("BAD_DATA_SOURCE", loc, f"unknown data source {criterion.data_source!r}")
        )
        return
    if criterion.kind == "qualitative":
        if criterion.scale is not None:
            out.append(Violation("BAD_SCALE", loc, "qualitative criteria carry no scale"))
        if criterion.data_source != "judged":
            out.append(
                Violation(
                    "QUALITATIVE_NOT_JUDGED",
                    loc,
                    "qualitative criteria are not measurable and must use pairwise judgments",
                )
            )
        return
    scale = criterion.scale
    if scale is None:
        out.append(Violation("BAD_SCALE", loc, "quantitative criteria need a scale"))
        return
    if isinstance(scale, NominalScale):
        if len(scale.labels) < 2:
            out.append(Violation("BAD_SCALE", loc, "nominal scales need at least 2 labels"))
        if len(set(scale.labels)) != len(scale.labels):
            out.append(Violation("BAD_SCALE", loc, "nominal scale labels must be distinct"))
    elif isinstance(scale, BinaryScale):
        if scale.yes_label == scale.no_label:
            out.append(Violation("BAD_SCALE", loc, "binary scale labels must differ"))
    elif isinstance(scale, RatioScale):
        if not math.isfinite(scale.lower_bound):
            out.append(Violation("BAD_SCALE", loc, "ratio scale lower bound must be finite"))
    if isinstance(scale, (NominalScale, BinaryScale)):
        if criterion.data_source == "direct" and criterion.value_map is None:
            out.append(
                Violation(
                    "BAD_VALUE_MAP",
                    loc,
                    "direct nominal criteria need a value_map to enter evaluation",
                )
            )
        _validate_value_map(out, criterion, loc)
    if criterion.data_source == "direct" and not criterion.attribute:
        out.append(
            Violation(
                "MISSING_ATTRIBUTE_BINDING",
                loc,
                "direct criteria must name the alternative attribute backing them",
            )
        )


def _validate_criterion_data(
    out: list[Violation], scenario: Scenario, criterion: Criterion
) -> None:
    """Check that direct-data criteria resolve to admissible numbers."""
    if criterion.data_source != "direct" or not criterion.attribute:
        return
    scale = criterion.scale
    for alternative in scenario.alternatives:
        loc = f"alternatives.{alternative.id}"
        value = alternative.attributes.get(criterion.attribute)
        if value is None:
            out.append(
                Violation(
                    "MISSING_ATTRIBUTE",
                    loc,
                    f"no attribute '{criterion.attribute}' needed by criterion '{criterion.id}'",
                )
            )
            continue
        if isinstance(scale, RatioScale):
            if not value.is_measured:
                out.append(
                    Violation(
                        "NON_NUMERIC_ATTRIBUTE",
                        loc,
                        f"criterion '{criterion.id}' needs a measured value "
                        f"for attribute '{criterion.attribute}'",
                    )
                )
            elif value.measured < scale.lower_bound:
                out.append(
                    Violation(
                        "VALUE_BELOW_BOUND",
                        loc,
                        f"value {value.measured} of '{criterion.attribute}' is below "
                        f"the scale lower bound {scale.lower_bound}",
                    )
                )
        elif isinstance(scale, (NominalScale, BinaryScale)):
            if value.text is None:
                out.append(
                    Violation(
                        "NOT_A_LABEL",
                        loc,
                        f"criterion '{criterion.id}' needs a label "
                        f"for attribute '{criterion.attribute}'",
                    )
                )
            elif value.text not in scale.labels:
                out.append(
                    Violation(
                        "NOT_A_LABEL",
                        loc,
                        f"'{value.text}' is not a label of criterion '{criterion.id}'",
                    )
                )


def _validate_requirement(
    out: list[Violation], scenario: Scenario, requirement: Requirement
) -> None:
    loc = f"requirements.{requirement.criterion_id}"
    if requirement.bound not in ("minimum", "maximum"):
        out.append(Violation("BAD_BOUND", loc, f"unknown bound {requirement.bound!r}"))
        return
    try:
        criterion = scenario.criterion(requirement.criterion_id)
    except KeyError:
        out.append(
            Violation(
                "DANGLING_REQUIREMENT",
                loc,
                f"requirement references unknown criterion '{requirement.criterion_id}'",
            )
        )
        return
    if not math.isfinite(requirement.threshold):
        out.append(Violation("BAD_BOUND", loc, "threshold must be finite"))
    if criterion.kind == "qualitative" or criterion.data_source != "direct":
        out.append(
            Violation(
                "REQUIREMENT_NOT_MEASURABLE",
                loc,
                "requirements need per-alternative values, so the criterion must be "
                "quantitative with direct data",
            )
        )
        return
    if isinstance(criterion.scale, (NominalScale, BinaryScale)) and criterion.value_map is None:
        out.append(
            Violation(
                "REQUIREMENT_NOT_MEASURABLE",
                loc,
                "requirements on nominal criteria need a value_map to compare thresholds",
            )
        )
    if not scenario.method_config.relax_bound_pairing:
        expected = "minimum" if criterion.orientation == "positive" else "maximum"
        if requirement.bound != expected:
            out.append(
                Violation(
                    "BOUND_ORIENTATION_MISMATCH",
                    loc,
                    f"{requirement.bound} bound on a {criterion.orientation}-orientation "
                    f"criterion (set relax_bound_pairing to allow)",
                )
            )


def _validate_judgments(out: list[Violation], scenario: Scenario) -> None:
    for key, judgments in scenario.judgments.items():
        loc = f"judgments.{key}"
        seen: set[frozenset[str]] = set()
        for judgment in judgments:
            if judgment.i == judgment.j:
                out.append(
                    Violation("SELF_JUDGMENT", loc, f"node '{judgment.i}' compared with itself")
                )
                continue
            pair = frozenset((judgment.i, judgment.j))
            if pair in seen:
                out.append(
                    Violation(
                        "DUPLICATE_JUDGMENT",
                        loc,
                        f"pair ({judgment.i}, {judgment.j}) judged more than once",
                    )
                )
            seen.add(pair)
            if not math.isfinite(judgment.ratio) or not (
                SAATY_MIN - 1e-9 <= judgment.ratio <= SAATY_MAX + 1e-9
            ):
                out.append(
                    Violation(
                        "JUDGMENT_OUT_OF_SCALE",
                        loc,
                        f"ratio {judgment.ratio} for ({judgment.i}, {judgment.j}) is outside 1/9..9",
                    )
                )


def _validate_weights(out: list[Violation], scenario: Scenario) -> None:
    config = scenario.method_config
    criterion_ids = {c.id for c in scenario.criteria}
    requirement_only = {c.id for c in scenario.criteria if c.requirement_only}
    for criterion_id, weight in config.criteria_weights.items():
        loc = f"method.criteria_weights.{criterion_id}"
        if criterion_id not in criterion_ids:
            out.append(
                Violation("UNKNOWN_WEIGHT_KEY", loc, f"weight for unknown criterion '{criterion_id}'")
            )
        elif criterion_id in requirement_only:
            out.append(
                Violation(
                    "UNKNOWN_WEIGHT_KEY",
                    loc,
                    f"criterion '{criterion_id}' is requirement-only and takes no weight",
                )
            )
        if not math.isfinite(weight) or weight <= 0:
            out.append(Violation("NONPOSITIVE_WEIGHT", loc, f"weight must be positive, got {weight}"))
    if not scenario.evaluated_criteria():
        out.append(
            Violation(
                "NO_EVALUATED_CRITERIA",
                "criteria",
                "nothing to evaluate: every criterion is missing or requirement-only",
            )
        )
    if scenario.network is None:
        evaluated = [c.id for c in scenario.evaluated_criteria()]
        for criterion_id in evaluated:
            if criterion_id not in config.criteria_weights:
                out.append(
                    Violation(
                        "MISSING_CRITERION_WEIGHT",
                        f"method.criteria_weights.{criterion_id}",
                        f"flat evaluation needs a weight for criterion '{criterion_id}'",
                    )
                )
    if config.method not in ("anp", "saw"):
        out.append(Violation("BAD_METHOD", "method.method", f"unknown method {config.method!r}"))
    if config.bocr_formula not in (None, "multiplicative", "additive"):
        out.append(
            Violation(
                "BAD_METHOD", "method.bocr_formula", f"unknown formula {config.bocr_formula!r}"
            )
        )
    if config.bocr_weights is not None:
        for category, weight in config.bocr_weights.items():
            loc = f"method.bocr_weights.{category}"
            if category not in CATEGORIES:
                out.append(Violation("BAD_CATEGORY", loc, f"unknown category {category!r}"))
            if not math.isfinite(weight) or weight <= 0:
                out.append(
                    Violation("NONPOSITIVE_WEIGHT", loc, f"weight must be positive, got {weight}")
                )
    if not math.isfinite(config.cr_threshold) or config.cr_threshold < 0:
        out.append(
            Violation(
                "BAD_METHOD", "method.cr_threshold", "consistency threshold must be >= 0"
            )
        )


def _validate_network(out: list[Violation], scenario: Scenario) -> None:
    network = scenario.network
    if network is None:
        return
    alternative_ids = {a.id for a in scenario.alternatives}
    requirement_only = {c.id for c in scenario.criteria if c.requirement_only}

    criteria_by_id = {c.id: c for c in scenario.criteria}
    alternatives_clusters = [c for c in network.clusters if c.kind == "alternatives"]
    if len(alternatives_clusters) != 1 or alternatives_clusters[0].id != ALTERNATIVES_CLUSTER:
        out.append(
            Violation(
                "NETWORK_MISSING_ALTERNATIVES_CLUSTER",
                "network.clusters",
                f"the network needs exactly one alternatives cluster with id "
                f"'{ALTERNATIVES_CLUSTER}'",
            )
        )
    node_owner: dict[str, str] = {}
    for cluster in network.clusters:
        loc = f"network.clusters.{cluster.id}"
        _check_id(out, loc, cluster.id)
        if cluster.kind == "alternatives":
            listed = set(cluster.nodes)
            if listed and listed != alternative_ids:
                out.append(
                    Violation(
                        "NETWORK_ALTERNATIVES_NODES",
                        loc,
                        "the alternatives cluster lists nodes that are not exactly the "
                        "scenario's alternatives (leave empty to populate automatically)",
                    )
                )
            continue
        if cluster.kind != "criteria":
            out.append(Violation("BAD_CLUSTER_KIND", loc, f"unknown cluster kind {cluster.kind!r}"))
            continue
        if cluster.category is not None and cluster.category not in CATEGORIES:
            out.append(Violation("BAD_CATEGORY", loc, f"unknown category {cluster.category!r}"))
        if not cluster.nodes:
            out.append(Violation("EMPTY_CLUSTER", loc, "criteria clusters need at least one node"))
        for node in cluster.nodes:
            if node in node_owner or node in alternative_ids:
                out.append(
                    Violation(
                        "NETWORK_DUPLICATE_NODE", loc, f"node '{node}' appears in more than one cluster"
                    )
                )
            node_owner[node] = cluster.id
            if node in requirement_only:
                out.append(
                    Violation(
                        "REQUIREMENT_ONLY_IN_NETWORK",
                        loc,
                        f"criterion '{node}' is requirement-only and is excluded from networks",
                    )
                )
            member = criteria_by_id.get(node)
            if member is not None and cluster.category and member.category != cluster.category:
                out.append(
                    Violation(
                        "NETWORK_CATEGORY_MISMATCH",
                        loc,
                        f"criterion '{node}' has category '{member.category}' but sits in a "
                        f"'{cluster.category}' cluster",
                    )
                )
    known_nodes = set(node_owner) | alternative_ids
    for source, target in network.links:
        loc = f"network.links.{source}->{target}"
        if source not in known_nodes or target not in known_nodes:
            out.append(Violation("NETWORK_DANGLING_LINK", loc, "link endpoint is not a known node"))
    cluster_ids = {c.id for c in network.clusters}
    for target_cluster, weights in network.cluster_weights.items():
        loc = f"network.cluster_weights.{target_cluster}"
        if target_cluster not in cluster_ids:
            out.append(
                Violation("NETWORK_UNKNOWN_CLUSTER", loc, f"unknown target cluster '{target_cluster}'")
            )
            continue
        total = 0.0
        bad_weight = False
        for source_cluster, weight in weights.items():
            if source_cluster not in cluster_ids:
                out.append(
                    Violation(
                        "NETWORK_UNKNOWN_CLUSTER", loc, f"unknown source cluster '{source_cluster}'"
                    )
                )
            if not math.isfinite(weight) or weight <= 0:
                out.append(
                    Violation("NONPOSITIVE_WEIGHT", loc, f"cluster weight must be positive, got {weight}")
                )
                bad_weight = True
                continue
            total += weight
        if weights and not bad_weight and abs(total - 1.0) > 1e-9:
            out.append(
                Violation(
                    "NETWORK_CLUSTER_WEIGHTS_SUM",
                    loc,
                    f"cluster weights must sum to 1, got {total}",
                )
            )


def validate_scenario(scenario: Scenario) -> ValidationReport:
    """Check every invariant and report all violations, not just the first.

    Deterministic and order-insensitive: permuting the alternative or
    criterion lists yields the same violation multiset.
    """
    out: list[Violation] = []

    _check_id(out, "scenario", scenario.id)

    if len(scenario.alternatives) < 2:
        out.append(
            Violation(
                "TOO_FEW_ALTERNATIVES",
                "alternatives",
                f"at least two alternatives are needed, got {len(scenario.alternatives)}",
            )
        )
    seen_alternatives: set[str] = set()
    for alternative in scenario.alternatives:
        loc = f"alternatives.{alternative.id}"
        _check_id(out, loc, alternative.id)
        if alternative.id in seen_alternatives:
            out.append(Violation("DUPLICATE_ID", loc, f"alternative id '{alternative.id}' reused"))
        seen_alternatives.add(alternative.id)
        for name, value in alternative.attributes.items():
            if value.is_measured and not math.isfinite(value.measured):
                out.append(
                    Violation("NONFINITE_MEASURED", loc, f"attribute '{name}' is not finite")
                )
            if (value.measured is None) == (value.text is None):
                out.append(
                    Violation(
                        "BAD_ATTRIBUTE_VALUE",
                        loc,
                        f"attribute '{name}' must be exactly one of measured or textual",
                    )
                )
    by_id = sorted(scenario.alternatives, key=lambda a: a.id)
    for first, second in ((a, b) for i, a in enumerate(by_id) for b in by_id[i + 1 :]):
        if _attribute_maps_equal(first, second):
            out.append(
                Violation(
                    "DUPLICATE_ALTERNATIVE",
                    f"alternatives.{second.id}",
                    f"alternatives '{first.id}' and '{second.id}' do not differ "
                    f"in any attribute value",
                )
            )

    seen_criteria: set[str] = set()
    for criterion in scenario.criteria:
        loc = f"criteria.{criterion.id}"
        _check_id(out, loc, criterion.id)
        if criterion.id in seen_criteria:
            out.append(Violation("DUPLICATE_ID", loc, f"criterion id '{criterion.id}' reused"))
        seen_criteria.add(criterion.id)
        _validate_criterion(out, criterion)
        _validate_criterion_data(out, scenario, criterion)

    for requirement in scenario.requirements:
        _validate_requirement(out, scenario, requirement)

    _validate_judgments(out, scenario)
    _validate_weights(out, scenario)
    _validate_network(out, scenario)

    ordered = tuple(sorted(out, key=lambda v: (v.location, v.code, v.message)))
    return ValidationReport(ordered)


def attribute_to_criterion_values(scenario: Scenario, criterion_id: str) -> dict[str, float]:
    """Resolve a direct-data criterion to one number per alternative.

    Ratio scales pass the measured numbers through; nominal and binary
    scales go through the criterion's value_map.
    """
    criterion = scenario.criterion(criterion_id)
    if criterion.data_source != "direct":
        raise ValueError(f"criterion '{criterion_id}' is judged, not backed by attribute data")
    if not criterion.attribute:
        raise ValueError(f"criterion '{criterion_id}' names no backing attribute")

    values: dict[str, float] = {}
    for alternative in scenario.alternatives:
        value = alternative.attributes.get(criterion.attribute)
        if value is None:
            raise MissingAttribute(alternative.id, criterion.attribute)
        if isinstance(criterion.scale, RatioScale):
            if not value.is_measured:
                raise NonNumericAttribute(alternative.id, criterion.attribute)
            values[alternative.id] = float(value.measured)
        else:
            if value.text is None:
                raise NonNumericAttribute(alternative.id, criterion.attribute)
            mapping = criterion.value_map or {}
            if value.text not in mapping:
                raise UnmappedLabel(value.text, criterion_id)
            values[alternative.id] = float(mapping[value.text])
    return values
