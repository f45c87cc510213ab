"""Exception types shared across the engine, storage, CLI and service layers."""

from __future__ import annotations


class Mc4dError(Exception):
    """Base class for all package errors."""


class MissingAttribute(Mc4dError):
    def __init__(self, alternative_id: str, attribute: str):
        super().__init__(f"alternative '{alternative_id}' has no attribute '{attribute}'")
        self.alternative_id = alternative_id
        self.attribute = attribute


class NonNumericAttribute(Mc4dError):
    def __init__(self, alternative_id: str, attribute: str):
        super().__init__(
            f"attribute '{attribute}' of alternative '{alternative_id}' is not a measured value"
        )
        self.alternative_id = alternative_id
        self.attribute = attribute


class UnmappedLabel(Mc4dError):
    def __init__(self, label: str, criterion_id: str = ""):
        where = f" of criterion '{criterion_id}'" if criterion_id else ""
        super().__init__(f"label '{label}'{where} has no value mapping")
        self.label = label
        self.criterion_id = criterion_id


class UnresolvableRequirement(Mc4dError):
    def __init__(self, criterion_id: str, alternative_id: str, reason: str = ""):
        detail = f": {reason}" if reason else ""
        super().__init__(
            f"requirement on '{criterion_id}' cannot be checked for "
            f"alternative '{alternative_id}'{detail}"
        )
        self.criterion_id = criterion_id
        self.alternative_id = alternative_id


class NonConvergence(Mc4dError):
    pass


class NonPositiveValue(Mc4dError):
    pass


class RatioOutOfScale(Mc4dError):
    def __init__(self, ratio: float):
        super().__init__(f"judgment ratio {ratio} is outside the 1/9..9 comparison scale")
        self.ratio = ratio


class DuplicateJudgment(Mc4dError):
    def __init__(self, i: str, j: str):
        super().__init__(f"pair ({i}, {j}) judged more than once")
        self.pair = (i, j)


class IncompleteJudgments(Mc4dError):
    def __init__(self, matrix: str, missing: list[tuple[str, str]]):
        pairs = ", ".join(f"({a}, {b})" for a, b in missing)
        super().__init__(f"matrix '{matrix}' is missing judgments for: {pairs}")
        self.matrix = matrix
        self.missing = missing


class MissingPriorityVector(Mc4dError):
    def __init__(self, target: str, cluster: str):
        super().__init__(f"no priority vector for target '{target}' over cluster '{cluster}'")
        self.target = target
        self.cluster = cluster


class MissingClusterWeight(Mc4dError):
    def __init__(self, target_cluster: str, source_cluster: str):
        super().__init__(
            f"no cluster weight for source '{source_cluster}' "
            f"influencing target cluster '{target_cluster}'"
        )
        self.target_cluster = target_cluster
        self.source_cluster = source_cluster


class ZeroCostOrRisk(Mc4dError):
    pass


class UnresolvableCriterion(Mc4dError):
    def __init__(self, criterion_id: str, reason: str):
        super().__init__(f"criterion '{criterion_id}' cannot be evaluated: {reason}")
        self.criterion_id = criterion_id


class DegenerateWeights(Mc4dError):
    pass


class InvalidScenario(Mc4dError):
    """Raised when an operation requires a scenario that passes validation."""

    def __init__(self, report):
        first = report.violations[0]
        super().__init__(
            f"scenario fails validation ({len(report.violations)} violation(s); "
            f"first: {first.code} at {first.location})"
        )
        self.report = report


class ParseError(Mc4dError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


class SessionNotFound(Mc4dError):
    def __init__(self, session_id: str):
        super().__init__(f"no session '{session_id}'")
        self.session_id = session_id


class ConcurrentModification(Mc4dError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected revision {expected} but session is at {actual}")
        self.expected = expected
        self.actual = actual
