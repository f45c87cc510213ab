"""Network evaluation: supermatrix assembly, limit priorities, BOCR synthesis.

The criteria network is turned into a cluster-blocked supermatrix whose
column for node t holds the local priority vectors of the nodes that
influence t. Weighting by cluster weights makes it column-stochastic, and
its limit (plain convergence or a Cesaro average over one period for
cyclic structures) yields global, ratio-scale priorities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from mc4d.errors import (
    Mc4dError,
    MissingClusterWeight,
    MissingPriorityVector,
    NonConvergence,
    UnresolvableCriterion,
    ZeroCostOrRisk,
)
from mc4d.model import (
    ALTERNATIVES_CLUSTER,
    CriteriaNetwork,
    Scenario,
    attribute_to_criterion_values,
    matrix_key,
)
from mc4d.priorities import (
    ConsistencyReport,
    PriorityVector,
    derive_priorities,
    direct_priorities,
    judgments_to_matrix,
)

COLUMN_TOL = 1e-8
SETTLE_TOL = 1e-13
PERIOD_TOL = 1e-10
MAX_SQUARINGS = 20  # 2**20 effective powers
MAX_PERIOD = 64


@dataclass(frozen=True)
class ResolvedNetwork:
    """A network with concrete node sets: alternatives filled in, links pruned."""

    blocks: tuple[tuple[str, tuple[str, ...]], ...]
    links: tuple[tuple[str, str], ...]
    cluster_weights: dict[str, dict[str, float]] = field(default_factory=dict)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(node for _, nodes in self.blocks for node in nodes)

    def cluster_of(self, node: str) -> str:
        for cluster_id, nodes in self.blocks:
            if node in nodes:
                return cluster_id
        raise KeyError(node)

    def incoming(self) -> dict[str, dict[str, tuple[str, ...]]]:
        """Per target node, the influencing nodes grouped by source cluster."""
        out: dict[str, dict[str, list[str]]] = {node: {} for node in self.node_ids}
        sources_by_target: dict[str, set[str]] = {node: set() for node in self.node_ids}
        for source, target in self.links:
            sources_by_target[target].add(source)
        for cluster_id, nodes in self.blocks:
            for target in self.node_ids:
                influencers = [n for n in nodes if n in sources_by_target[target]]
                if influencers:
                    out[target][cluster_id] = influencers
        return {
            target: {cluster: tuple(nodes) for cluster, nodes in groups.items()}
            for target, groups in out.items()
        }


@dataclass(frozen=True)
class Supermatrix:
    blocks: tuple[tuple[str, tuple[str, ...]], ...]
    entries: np.ndarray
    stage: str  # "unweighted" | "weighted" | "limit"

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        n = len(self.node_ids)
        if a.shape != (n, n):
            raise ValueError(f"entries must be {n}x{n}, got {a.shape}")
        if not np.all(np.isfinite(a)) or np.any(a < 0):
            raise ValueError("entries must be finite and nonnegative")
        if self.stage in ("weighted", "limit"):
            sums = a.sum(axis=0)
            if np.max(np.abs(sums - 1.0)) > COLUMN_TOL:
                raise ValueError(f"{self.stage} supermatrix columns must sum to 1")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(node for _, nodes in self.blocks for node in nodes)

    def block_rows(self, cluster_id: str) -> slice:
        start = 0
        for block_id, nodes in self.blocks:
            if block_id == cluster_id:
                return slice(start, start + len(nodes))
            start += len(nodes)
        raise KeyError(cluster_id)


def resolve_network(network: CriteriaNetwork, feasible: tuple[str, ...]) -> ResolvedNetwork:
    """Populate the alternatives cluster and drop links to excluded alternatives."""
    blocks: list[tuple[str, tuple[str, ...]]] = []
    for cluster in network.clusters:
        if cluster.kind == "alternatives":
            blocks.append((cluster.id, tuple(feasible)))
        else:
            blocks.append((cluster.id, tuple(cluster.nodes)))
    known = {node for _, nodes in blocks for node in nodes}
    links = tuple((s, t) for s, t in network.links if s in known and t in known)
    return ResolvedNetwork(tuple(blocks), links, dict(network.cluster_weights))


def build_supermatrix(
    structure: ResolvedNetwork,
    local_priorities: dict[tuple[str, str], PriorityVector],
) -> Supermatrix:
    """Place local priority vectors into the cluster-blocked supermatrix.

    Column t holds, in the rows of each influencing cluster, the priority
    vector of that cluster's influencers for t. Nodes with no incoming
    influence keep a self-loop so every column stays stochastic.
    """
    node_ids = structure.node_ids
    index = {node: k for k, node in enumerate(node_ids)}
    n = len(node_ids)
    entries = np.zeros((n, n))
    incoming = structure.incoming()
    for target in node_ids:
        groups = incoming[target]
        col = index[target]
        if not groups:
            entries[col, col] = 1.0
            continue
        for cluster_id, influencers in groups.items():
            vector = local_priorities.get((target, cluster_id))
            if vector is None:
                raise MissingPriorityVector(target, cluster_id)
            if tuple(vector.node_ids) != influencers:
                raise MissingPriorityVector(target, cluster_id)
            for node, weight in zip(vector.node_ids, vector.weights):
                entries[index[node], col] = weight
    return Supermatrix(structure.blocks, entries, "unweighted")


def weight_supermatrix(
    unweighted: Supermatrix, cluster_weights: dict[str, dict[str, float]]
) -> Supermatrix:
    """Scale each block column segment by its cluster weight.

    Weights are renormalized over the clusters actually influencing each
    column, so every column of the result sums to 1. Columns fed by a
    single cluster need no declared weight.
    """
    entries = unweighted.entries.copy()
    ranges = {cluster_id: unweighted.block_rows(cluster_id) for cluster_id, _ in unweighted.blocks}
    col = 0
    for target_cluster, nodes in unweighted.blocks:
        for _ in nodes:
            column = entries[:, col]
            active = [
                cluster_id for cluster_id, rows in ranges.items() if column[rows].sum() > 1e-12
            ]
            if len(active) > 1:
                declared = cluster_weights.get(target_cluster, {})
                weights = {}
                for cluster_id in active:
                    if cluster_id not in declared:
                        raise MissingClusterWeight(target_cluster, cluster_id)
                    weights[cluster_id] = declared[cluster_id]
                total = sum(weights.values())
                for cluster_id in active:
                    rows = ranges[cluster_id]
                    column[rows] = column[rows] * (weights[cluster_id] / total)
            elif len(active) == 1:
                rows = ranges[active[0]]
                segment_sum = column[rows].sum()
                column[rows] = column[rows] / segment_sum
            col += 1
    return Supermatrix(unweighted.blocks, entries, "weighted")


def limit_supermatrix(weighted: Supermatrix) -> Supermatrix:
    """Limit of the powers of a column-stochastic supermatrix.

    Repeated squaring kills the transient; if the powers converge the
    settled square is the limit, otherwise the smallest period p <= 64
    with A W^p = A is detected and the Cesaro average over one period
    is returned. Raises NonConvergence past 2**20 effective powers.
    """
    w = weighted.entries
    a = w.copy()
    for _ in range(MAX_SQUARINGS):
        squared = a @ a
        delta = float(np.max(np.abs(squared - a)))
        a = squared
        if delta < SETTLE_TOL:
            break
    powers = [a]
    for _ in range(MAX_PERIOD):
        candidate = powers[-1] @ w
        if np.max(np.abs(candidate - powers[0])) < PERIOD_TOL:
            limit = np.mean(powers, axis=0) if len(powers) > 1 else powers[0]
            return Supermatrix(weighted.blocks, limit, "limit")
        powers.append(candidate)
    raise NonConvergence(
        f"supermatrix powers neither converge nor repeat with period <= {MAX_PERIOD}"
    )


def _scores_from_limit(limit: Supermatrix, weighted: Supermatrix) -> dict[str, float]:
    """Alternatives-block entries of the most goal-like column, renormalized.

    Columns are tried in order: nodes that receive influence but exert
    none (classic goals), then any node receiving influence, then the
    rest; the first column with mass on the alternatives block wins.
    """
    node_ids = limit.node_ids
    w = weighted.entries
    n = len(node_ids)
    has_incoming = [
        any(w[r, c] > 0 for r in range(n) if r != c) for c in range(n)
    ]
    has_outgoing = [
        any(w[r, c] > 0 for c in range(n) if c != r) for r in range(n)
    ]
    order = sorted(
        range(n),
        key=lambda k: (0 if has_incoming[k] and not has_outgoing[k] else 1 if has_incoming[k] else 2, k),
    )
    rows = limit.block_rows(ALTERNATIVES_CLUSTER)
    alternatives = node_ids[rows]
    for col in order:
        segment = limit.entries[rows, col]
        total = segment.sum()
        if total > 1e-12:
            return {alt: float(x / total) for alt, x in zip(alternatives, segment)}
    raise NonConvergence("limit supermatrix places no weight on the alternatives")


def flat_structure(criterion_ids: tuple[str, ...], feasible: tuple[str, ...]) -> ResolvedNetwork:
    """One-level hierarchy: goal weighted by criteria, criteria by alternatives."""
    links = [(c, "goal") for c in criterion_ids]
    links += [(a, c) for c in criterion_ids for a in feasible]
    return ResolvedNetwork(
        blocks=(("goal", ("goal",)), ("criteria", criterion_ids), (ALTERNATIVES_CLUSTER, feasible)),
        links=tuple(links),
    )


def hierarchy_scores(
    weights: dict[str, float], vectors: dict[str, PriorityVector], feasible: tuple[str, ...]
) -> dict[str, float]:
    """Run the flat one-level hierarchy through the full supermatrix pipeline."""
    criterion_ids = tuple(weights)
    structure = flat_structure(criterion_ids, feasible)
    total = sum(weights.values())
    goal_vector = PriorityVector(criterion_ids, tuple(weights[c] / total for c in criterion_ids))
    local = {("goal", "criteria"): goal_vector}
    for criterion_id in criterion_ids:
        local[(criterion_id, ALTERNATIVES_CLUSTER)] = vectors[criterion_id]
    unweighted = build_supermatrix(structure, local)
    weighted = weight_supermatrix(unweighted, {})
    limit = limit_supermatrix(weighted)
    return _scores_from_limit(limit, weighted)


def _category_subnetwork(structure: ResolvedNetwork, keep: set[str]) -> ResolvedNetwork:
    blocks = tuple((cid, nodes) for cid, nodes in structure.blocks if cid in keep)
    nodes = {node for _, block_nodes in blocks for node in block_nodes}
    links = tuple((s, t) for s, t in structure.links if s in nodes and t in nodes)
    weights = {
        target: {src: wt for src, wt in sources.items() if src in keep}
        for target, sources in structure.cluster_weights.items()
        if target in keep
    }
    return ResolvedNetwork(blocks, links, {t: s for t, s in weights.items() if s})


def _resolve_local_priorities(
    scenario: Scenario,
    structure: ResolvedNetwork,
    orientation_mode: str,
    cr_threshold: float,
    presets: dict[tuple[str, str], PriorityVector] | None = None,
) -> tuple[dict[tuple[str, str], PriorityVector], list[tuple[str, ConsistencyReport]]]:
    """Derive every priority vector a structure needs.

    ``orientation_mode`` is "oriented" (negative criteria use reciprocal
    normalization; used outside BOCR synthesis) or "magnitude" (raw
    normalization; the category factor carries the sign during synthesis).
    Entries in ``presets`` (e.g. numeric flat-mode weights) are taken as is.
    """
    criteria = {c.id: c for c in scenario.criteria}
    local: dict[tuple[str, str], PriorityVector] = dict(presets or {})
    reports: list[tuple[str, ConsistencyReport]] = []
    for target, groups in structure.incoming().items():
        for cluster_id, influencers in groups.items():
            if (target, cluster_id) in local:
                continue
            if len(influencers) == 1:
                local[(target, cluster_id)] = PriorityVector(influencers, (1.0,))
                continue
            criterion = criteria.get(target)
            use_direct = (
                cluster_id == ALTERNATIVES_CLUSTER
                and criterion is not None
                and criterion.data_source == "direct"
            )
            if use_direct:
                values = attribute_to_criterion_values(scenario, target)
                values = {alt: values[alt] for alt in influencers}
                orientation = (
                    criterion.orientation if orientation_mode == "oriented" else "positive"
                )
                try:
                    local[(target, cluster_id)] = direct_priorities(values, orientation)
                except Mc4dError as exc:
                    raise UnresolvableCriterion(target, str(exc)) from exc
                continue
            key = matrix_key(target, cluster_id)
            judgments = [
                j
                for j in scenario.judgments.get(key, ())
                if j.i in influencers and j.j in influencers
            ]
            matrix = judgments_to_matrix(judgments, influencers, matrix=key)
            vector, report = derive_priorities(matrix, cr_threshold)
            local[(target, cluster_id)] = vector
            reports.append((key, report))
    return local, reports


def _network_scores(
    scenario: Scenario,
    structure: ResolvedNetwork,
    orientation_mode: str,
) -> tuple[dict[str, float], list[tuple[str, ConsistencyReport]]]:
    threshold = scenario.method_config.cr_threshold
    local, reports = _resolve_local_priorities(scenario, structure, orientation_mode, threshold)
    unweighted = build_supermatrix(structure, local)
    weighted = weight_supermatrix(unweighted, structure.cluster_weights)
    limit = limit_supermatrix(weighted)
    return _scores_from_limit(limit, weighted), reports


def synthesize_bocr(
    category_scores: dict[str, dict[str, float]],
    bocr_weights: dict[str, float] | None = None,
    formula: str | None = None,
) -> dict[str, float]:
    """Combine per-category score vectors into one ranking vector.

    Multiplicative: benefits times opportunities over costs times risks.
    Additive: weighted sum where cost and risk vectors enter inverted.
    Missing categories are neutral. Defaults: multiplicative when all four
    categories are present, otherwise additive with equal weights.
    """
    present = sorted(category_scores)
    if not present:
        raise ValueError("at least one category score vector is required")
    alternatives = list(next(iter(category_scores.values())))
    for category, scores in category_scores.items():
        if set(scores) != set(alternatives):
            raise ValueError(f"category '{category}' scores a different alternative set")
    if formula is None:
        formula = "multiplicative" if len(present) == 4 else "additive"

    def normalized(scores: dict[str, float]) -> dict[str, float]:
        total = sum(scores.values())
        return {alt: value / total for alt, value in scores.items()}

    def inverted(scores: dict[str, float], category: str) -> dict[str, float]:
        if any(value <= 0 for value in scores.values()):
            raise ZeroCostOrRisk(
                f"category '{category}' has a zero score and cannot be inverted"
            )
        return normalized({alt: 1.0 / value for alt, value in scores.items()})

    if formula == "multiplicative":
        combined = {alt: 1.0 for alt in alternatives}
        for category in present:
            scores = normalized(category_scores[category])
            if category in ("benefit", "opportunity"):
                for alt in alternatives:
                    combined[alt] *= scores[alt]
            else:
                if any(value <= 0 for value in scores.values()):
                    raise ZeroCostOrRisk(
                        f"category '{category}' has a zero score under the multiplicative formula"
                    )
                for alt in alternatives:
                    combined[alt] /= scores[alt]
        return normalized(combined)

    if formula != "additive":
        raise ValueError(f"unknown synthesis formula {formula!r}")
    if bocr_weights:
        weights = {cat: bocr_weights[cat] for cat in present if cat in bocr_weights}
        if set(weights) != set(present):
            missing = sorted(set(present) - set(weights))
            raise Mc4dError(f"additive synthesis lacks weights for categories {missing}")
    else:
        weights = {cat: 1.0 for cat in present}
    total = sum(weights.values())
    weights = {cat: wt / total for cat, wt in weights.items()}
    combined = {alt: 0.0 for alt in alternatives}
    for category in present:
        scores = normalized(category_scores[category])
        if category in ("cost", "risk"):
            scores = inverted(scores, category)
        for alt in alternatives:
            combined[alt] += weights[category] * scores[alt]
    return normalized(combined)


def anp_scores(
    scenario: Scenario, feasible: tuple[str, ...]
) -> tuple[dict[str, float], list[tuple[str, ConsistencyReport]], list[str]]:
    """Evaluate the feasible alternatives with the configured network.

    Networks whose criteria clusters span several categories are split
    into per-category subnetworks and recombined with BOCR synthesis;
    uncategorized clusters (goal nodes and the like) join every
    subnetwork. Returns scores, consistency reports keyed by matrix, and
    warnings.
    """
    if len(feasible) == 1:
        return {feasible[0]: 1.0}, [], []
    config = scenario.method_config
    warnings: list[str] = []

    if scenario.network is None:
        criteria = scenario.evaluated_criteria()
        weights = {c.id: config.criteria_weights[c.id] for c in criteria}
        criterion_ids = tuple(weights)
        structure = flat_structure(criterion_ids, feasible)
        total = sum(weights.values())
        goal_vector = PriorityVector(
            criterion_ids, tuple(weights[c] / total for c in criterion_ids)
        )
        local, reports = _resolve_local_priorities(
            scenario,
            structure,
            "oriented",
            config.cr_threshold,
            presets={("goal", "criteria"): goal_vector},
        )
        unweighted = build_supermatrix(structure, local)
        weighted = weight_supermatrix(unweighted, {})
        limit = limit_supermatrix(weighted)
        return _scores_from_limit(limit, weighted), reports, warnings

    structure = resolve_network(scenario.network, feasible)
    categorized = {
        cluster.id: cluster.category
        for cluster in scenario.network.clusters
        if cluster.kind == "criteria" and cluster.category
    }
    categories = sorted(set(categorized.values()))
    if len(categories) <= 1 and not (categories and categories[0] in ("cost", "risk")):
        scores, reports = _network_scores(scenario, structure, "oriented")
        return scores, reports, warnings

    neutral = {
        cluster_id
        for cluster_id, _ in structure.blocks
        if cluster_id not in categorized
    }
    all_reports: list[tuple[str, ConsistencyReport]] = []
    category_scores: dict[str, dict[str, float]] = {}
    dropped = [
        (s, t)
        for s, t in structure.links
        if _link_crosses_categories(structure, categorized, s, t)
    ]
    if dropped:
        warnings.append(
            f"{len(dropped)} link(s) between different categories are ignored during "
            f"per-category evaluation"
        )
    for category in categories:
        keep = neutral | {cid for cid, cat in categorized.items() if cat == category}
        subnetwork = _category_subnetwork(structure, keep)
        scores, reports = _network_scores(scenario, subnetwork, "magnitude")
        category_scores[category] = scores
        all_reports.extend(reports)
    combined = synthesize_bocr(category_scores, config.bocr_weights, config.bocr_formula)
    return combined, all_reports, warnings


def _link_crosses_categories(
    structure: ResolvedNetwork, categorized: dict[str, str | None], source: str, target: str
) -> bool:
    source_cat = categorized.get(structure.cluster_of(source))
    target_cat = categorized.get(structure.cluster_of(target))
    return source_cat is not None and target_cat is not None and source_cat != target_cat
