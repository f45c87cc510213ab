"""Local priority vectors from pairwise comparisons or measured data.

Judged criteria yield positive reciprocal comparison matrices on the 1-9
scale whose principal right eigenvector is the priority vector; measured
data normalizes directly (reciprocally for negative-orientation criteria).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mc4d.errors import (
    DuplicateJudgment,
    IncompleteJudgments,
    NonConvergence,
    NonPositiveValue,
    RatioOutOfScale,
)
from mc4d.model import SAATY_MAX, SAATY_MIN, Judgment

POWER_TOL = 1e-12
POWER_MAX_ITER = 10_000

# Random consistency indices for matrices of order n. Replaceable via the
# ``random_index`` argument of consistency() for alternative tables.
RANDOM_INDEX = {
    1: 0.0,
    2: 0.0,
    3: 0.58,
    4: 0.90,
    5: 1.12,
    6: 1.24,
    7: 1.32,
    8: 1.41,
    9: 1.45,
    10: 1.49,
}

DEFAULT_CR_THRESHOLD = 0.10


@dataclass(frozen=True)
class PairwiseMatrix:
    """Positive reciprocal judgment matrix over named nodes."""

    node_ids: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self):
        n = len(self.node_ids)
        a = np.asarray(self.entries, dtype=float)
        if n < 2:
            raise ValueError("pairwise matrices need at least 2 nodes")
        if a.shape != (n, n):
            raise ValueError(f"entries must be {n}x{n}, got {a.shape}")
        if not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise ValueError("entries must be finite and positive")
        if np.max(np.abs(np.diagonal(a) - 1.0)) > 1e-9:
            raise ValueError("diagonal entries must be 1")
        if np.max(np.abs(a.T - 1.0 / a)) > 1e-9:
            raise ValueError("matrix must be reciprocal (a[j,i] = 1/a[i,j])")
        if np.any(a < SAATY_MIN - 1e-9) or np.any(a > SAATY_MAX + 1e-9):
            raise ValueError("entries must stay within the 1/9..9 comparison scale")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return len(self.node_ids)

    def restrict(self, node_ids: list[str] | tuple[str, ...]) -> "PairwiseMatrix":
        """Principal submatrix over the given nodes (still reciprocal)."""
        index = {node: k for k, node in enumerate(self.node_ids)}
        rows = [index[node] for node in node_ids]
        return PairwiseMatrix(tuple(node_ids), self.entries[np.ix_(rows, rows)])


@dataclass(frozen=True)
class PriorityVector:
    node_ids: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.node_ids) != len(self.weights):
            raise ValueError("one weight per node required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {sum(self.weights)}")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.node_ids, self.weights))

    def __getitem__(self, node_id: str) -> float:
        return self.weights[self.node_ids.index(node_id)]


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    ri: float
    cr: float
    acceptable: bool

    def to_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "ci": self.ci,
            "ri": self.ri,
            "cr": self.cr,
            "acceptable": self.acceptable,
        }


def _power_iterate(a: np.ndarray) -> tuple[np.ndarray, float]:
    """Principal eigenvector of a positive matrix, normalized to sum 1."""
    n = a.shape[0]
    v = np.full(n, 1.0 / n)
    for _ in range(POWER_MAX_ITER):
        w = a @ v
        lam = w.sum()  # v sums to 1, so sum(Av) estimates the eigenvalue
        w = w / lam
        if np.max(np.abs(w - v)) < POWER_TOL:
            return w, float(lam)
        v = w
    raise NonConvergence(
        f"power iteration did not converge within {POWER_MAX_ITER} iterations"
    )


def derive_priorities(
    matrix: PairwiseMatrix, cr_threshold: float = DEFAULT_CR_THRESHOLD
) -> tuple[PriorityVector, ConsistencyReport]:
    """Priority vector and consistency report for a comparison matrix."""
    weights, lambda_max = _power_iterate(matrix.entries)
    vector = PriorityVector(matrix.node_ids, tuple(float(w) for w in weights))
    report = _consistency_from_lambda(lambda_max, matrix.n, RANDOM_INDEX, cr_threshold)
    return vector, report


def consistency(
    matrix: PairwiseMatrix,
    cr_threshold: float = DEFAULT_CR_THRESHOLD,
    random_index: dict[int, float] | None = None,
) -> ConsistencyReport:
    _, lambda_max = _power_iterate(matrix.entries)
    return _consistency_from_lambda(
        lambda_max, matrix.n, random_index or RANDOM_INDEX, cr_threshold
    )


def _consistency_from_lambda(
    lambda_max: float, n: int, random_index: dict[int, float], cr_threshold: float
) -> ConsistencyReport:
    ci = (lambda_max - n) / (n - 1) if n > 1 else 0.0
    ci = max(ci, 0.0)  # clamp the tiny negative values power iteration can leave
    ri = random_index.get(n, max(random_index.values()))
    cr = ci / ri if ri > 0 else 0.0
    return ConsistencyReport(
        lambda_max=float(lambda_max),
        ci=float(ci),
        ri=float(ri),
        cr=float(cr),
        acceptable=cr <= cr_threshold,
    )


def direct_priorities(values: dict[str, float], orientation: str) -> PriorityVector:
    """Normalize measured data into priorities.

    Positive orientation divides by the total; negative orientation
    normalizes the reciprocals so that smaller raw values score higher.
    """
    node_ids = tuple(values)
    raw = np.array([values[node] for node in node_ids], dtype=float)
    if not np.all(np.isfinite(raw)):
        raise NonPositiveValue("values must be finite")
    if orientation == "negative":
        if np.any(raw <= 0):
            raise NonPositiveValue(
                "negative-orientation criteria need strictly positive values"
            )
        raw = 1.0 / raw
    else:
        if np.any(raw < 0):
            raise NonPositiveValue("values must be nonnegative")
        if raw.sum() == 0:
            raise NonPositiveValue("at least one value must be positive")
    weights = raw / raw.sum()
    return PriorityVector(node_ids, tuple(float(w) for w in weights))


def judgments_to_matrix(
    judgments: list[Judgment] | tuple[Judgment, ...],
    node_ids: list[str] | tuple[str, ...],
    matrix: str = "",
) -> PairwiseMatrix:
    """Fill a complete reciprocal matrix from one judgment per node pair."""
    nodes = tuple(node_ids)
    index = {node: k for k, node in enumerate(nodes)}
    n = len(nodes)
    entries = np.eye(n)
    given: set[frozenset[str]] = set()
    for judgment in judgments:
        if judgment.i not in index or judgment.j not in index:
            raise KeyError(f"judgment ({judgment.i}, {judgment.j}) names an unknown node")
        if judgment.i == judgment.j:
            raise DuplicateJudgment(judgment.i, judgment.j)
        pair = frozenset((judgment.i, judgment.j))
        if pair in given:
            raise DuplicateJudgment(judgment.i, judgment.j)
        given.add(pair)
        if not (SAATY_MIN - 1e-9 <= judgment.ratio <= SAATY_MAX + 1e-9):
            raise RatioOutOfScale(judgment.ratio)
        row, col = index[judgment.i], index[judgment.j]
        entries[row, col] = judgment.ratio
        entries[col, row] = 1.0 / judgment.ratio
    missing = missing_pairs(judgments, nodes)
    if missing:
        raise IncompleteJudgments(matrix=matrix, missing=missing)
    return PairwiseMatrix(nodes, entries)


def missing_pairs(
    judgments: list[Judgment] | tuple[Judgment, ...], node_ids: list[str] | tuple[str, ...]
) -> list[tuple[str, str]]:
    """Node pairs (in node order) not yet covered by a judgment."""
    nodes = tuple(node_ids)
    given = {frozenset((j.i, j.j)) for j in judgments if j.i != j.j}
    out = []
    for a in range(len(nodes)):
        for b in range(a + 1, len(nodes)):
            if frozenset((nodes[a], nodes[b])) not in given:
                out.append((nodes[a], nodes[b]))
    return out


def most_inconsistent_triad(matrix: PairwiseMatrix) -> tuple[str, str, str] | None:
    """The node triple whose judgments deviate most from transitivity.

    Useful as a revision hint when the consistency ratio is too high;
    returns None for matrices smaller than 3x3.
    """
    n = matrix.n
    if n < 3:
        return None
    a = matrix.entries
    worst, worst_dev = None, -1.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                dev = abs(np.log(a[i, j] * a[j, k] / a[i, k]))
                if dev > worst_dev:
                    worst_dev = dev
                    worst = (matrix.node_ids[i], matrix.node_ids[j], matrix.node_ids[k])
    return worst
