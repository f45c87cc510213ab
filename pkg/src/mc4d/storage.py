"""Scenario document format and on-disk session persistence.

Documents are strict-schema JSON (scenario.mc4d.json, see docs/schema.md):
unknown fields are rejected with their location, and serialization is
canonical, so equal scenarios always produce identical bytes. Sessions
live in one directory each, with an append-only judgment history and
optimistic revision checks.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from mc4d.canonical import canonical_bytes, canon_number
from mc4d.errors import (
    ConcurrentModification,
    InvalidScenario,
    ParseError,
    SessionNotFound,
)
from mc4d.model import (
    Alternative,
    AttributeValue,
    BinaryScale,
    Cluster,
    CriteriaNetwork,
    Criterion,
    Judgment,
    MethodConfig,
    NominalScale,
    RatioScale,
    Requirement,
    Scenario,
    validate_scenario,
)

SCHEMA_VERSION = 1


def _fail(path: str, message: str) -> None:
    raise ParseError(path, message)


def _obj(value, path: str, required: set[str], optional: set[str]) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    unknown = sorted(set(value) - required - optional)
    if unknown:
        _fail(path, f"unknown field '{unknown[0]}'")
    missing = sorted(required - set(value))
    if missing:
        _fail(path, f"missing required field '{missing[0]}'")
    return value


def _str(value, path: str) -> str:
    if not isinstance(value, str):
        _fail(path, f"expected a string, got {type(value).__name__}")
    return value


def _num(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {type(value).__name__}")
    return float(value)


def _bool(value, path: str) -> bool:
    if not isinstance(value, bool):
        _fail(path, f"expected a boolean, got {type(value).__name__}")
    return value


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        _fail(path, f"expected an array, got {type(value).__name__}")
    return value


def _parse_attribute_value(value, path: str) -> AttributeValue:
    data = _obj(value, path, required=set(), optional={"measured", "unit", "text"})
    measured = data.get("measured")
    text = data.get("text")
    if (measured is None) == (text is None):
        _fail(path, "exactly one of 'measured' or 'text' is required")
    if measured is not None:
        return AttributeValue(
            measured=_num(measured, f"{path}.measured"),
            unit=_str(data.get("unit", ""), f"{path}.unit"),
        )
    if "unit" in data:
        _fail(path, "'unit' only accompanies measured values")
    return AttributeValue(text=_str(text, f"{path}.text"))


def _parse_alternative(value, path: str) -> Alternative:
    data = _obj(value, path, required={"id", "name"}, optional={"attributes"})
    attributes = {}
    raw_attributes = data.get("attributes", {})
    if not isinstance(raw_attributes, dict):
        _fail(f"{path}.attributes", "expected an object")
    for name in raw_attributes:
        attributes[name] = _parse_attribute_value(
            raw_attributes[name], f"{path}.attributes.{name}"
        )
    return Alternative(
        id=_str(data["id"], f"{path}.id"),
        name=_str(data["name"], f"{path}.name"),
        attributes=attributes,
    )


def _parse_scale(value, path: str):
    data = _obj(
        value,
        path,
        required={"type"},
        optional={"labels", "yes_label", "no_label", "unit", "lower_bound"},
    )
    kind = _str(data["type"], f"{path}.type")
    if kind == "nominal":
        labels = tuple(
            _str(item, f"{path}.labels[{k}]") for k, item in enumerate(_list(data.get("labels"), f"{path}.labels"))
        )
        return NominalScale(labels=labels)
    if kind == "binary":
        return BinaryScale(
            yes_label=_str(data.get("yes_label", "yes"), f"{path}.yes_label"),
            no_label=_str(data.get("no_label", "no"), f"{path}.no_label"),
        )
    if kind == "ratio":
        return RatioScale(
            unit=_str(data.get("unit", ""), f"{path}.unit"),
            lower_bound=_num(data.get("lower_bound", 0.0), f"{path}.lower_bound"),
        )
    _fail(f"{path}.type", f"unknown scale type '{kind}'")


def _parse_criterion(value, path: str) -> Criterion:
    data = _obj(
        value,
        path,
        required={"id", "question", "kind", "category"},
        optional={"scale", "value_map", "data_source", "attribute", "requirement_only"},
    )
    scale = None
    if data.get("scale") is not None:
        scale = _parse_scale(data["scale"], f"{path}.scale")
    value_map = None
    if data.get("value_map") is not None:
        raw_map = data["value_map"]
        if not isinstance(raw_map, dict):
            _fail(f"{path}.value_map", "expected an object")
        value_map = {
            label: _num(raw_map[label], f"{path}.value_map.{label}") for label in raw_map
        }
    attribute = data.get("attribute")
    return Criterion(
        id=_str(data["id"], f"{path}.id"),
        question=_str(data["question"], f"{path}.question"),
        kind=_str(data["kind"], f"{path}.kind"),
        category=_str(data["category"], f"{path}.category"),
        scale=scale,
        value_map=value_map,
        data_source=_str(data.get("data_source", "judged"), f"{path}.data_source"),
        attribute=_str(attribute, f"{path}.attribute") if attribute is not None else None,
        requirement_only=_bool(data.get("requirement_only", False), f"{path}.requirement_only"),
    )


def _parse_requirement(value, path: str) -> Requirement:
    data = _obj(value, path, required={"criterion_id", "bound", "threshold"}, optional=set())
    return Requirement(
        criterion_id=_str(data["criterion_id"], f"{path}.criterion_id"),
        bound=_str(data["bound"], f"{path}.bound"),
        threshold=_num(data["threshold"], f"{path}.threshold"),
    )


def _parse_network(value, path: str) -> CriteriaNetwork:
    data = _obj(value, path, required={"clusters"}, optional={"links", "cluster_weights"})
    clusters = []
    for k, item in enumerate(_list(data["clusters"], f"{path}.clusters")):
        cluster_path = f"{path}.clusters[{k}]"
        cluster_data = _obj(
            item, cluster_path, required={"id", "kind"}, optional={"name", "category", "nodes"}
        )
        category = cluster_data.get("category")
        clusters.append(
            Cluster(
                id=_str(cluster_data["id"], f"{cluster_path}.id"),
                name=_str(cluster_data.get("name", cluster_data["id"]), f"{cluster_path}.name"),
                kind=_str(cluster_data["kind"], f"{cluster_path}.kind"),
                category=_str(category, f"{cluster_path}.category") if category is not None else None,
                nodes=tuple(
                    _str(node, f"{cluster_path}.nodes[{i}]")
                    for i, node in enumerate(_list(cluster_data.get("nodes", []), f"{cluster_path}.nodes"))
                ),
            )
        )
    links = []
    for k, item in enumerate(_list(data.get("links", []), f"{path}.links")):
        link_path = f"{path}.links[{k}]"
        link_data = _obj(item, link_path, required={"source", "target"}, optional=set())
        links.append(
            (_str(link_data["source"], f"{link_path}.source"), _str(link_data["target"], f"{link_path}.target"))
        )
    weights: dict[str, dict[str, float]] = {}
    raw_weights = data.get("cluster_weights", {})
    if not isinstance(raw_weights, dict):
        _fail(f"{path}.cluster_weights", "expected an object")
    for target in raw_weights:
        target_path = f"{path}.cluster_weights.{target}"
        if not isinstance(raw_weights[target], dict):
            _fail(target_path, "expected an object")
        weights[target] = {
            source: _num(raw_weights[target][source], f"{target_path}.{source}")
            for source in raw_weights[target]
        }
    return CriteriaNetwork(clusters=tuple(clusters), links=tuple(links), cluster_weights=weights)


def _parse_judgments(value, path: str) -> dict[str, tuple[Judgment, ...]]:
    if not isinstance(value, dict):
        _fail(path, "expected an object keyed by matrix")
    out = {}
    for key in value:
        matrix_path = f"{path}.{key}"
        judgments = []
        for k, item in enumerate(_list(value[key], matrix_path)):
            entry_path = f"{matrix_path}[{k}]"
            data = _obj(item, entry_path, required={"i", "j", "ratio"}, optional=set())
            judgments.append(
                Judgment(
                    i=_str(data["i"], f"{entry_path}.i"),
                    j=_str(data["j"], f"{entry_path}.j"),
                    ratio=_num(data["ratio"], f"{entry_path}.ratio"),
                )
            )
        out[key] = tuple(judgments)
    return out


def _parse_method(value, path: str) -> MethodConfig:
    data = _obj(
        value,
        path,
        required=set(),
        optional={
            "method",
            "criteria_weights",
            "bocr_weights",
            "bocr_formula",
            "cr_threshold",
            "relax_bound_pairing",
        },
    )
    criteria_weights = {}
    raw = data.get("criteria_weights", {})
    if not isinstance(raw, dict):
        _fail(f"{path}.criteria_weights", "expected an object")
    for key in raw:
        criteria_weights[key] = _num(raw[key], f"{path}.criteria_weights.{key}")
    bocr_weights = None
    if data.get("bocr_weights") is not None:
        raw = data["bocr_weights"]
        if not isinstance(raw, dict):
            _fail(f"{path}.bocr_weights", "expected an object")
        bocr_weights = {key: _num(raw[key], f"{path}.bocr_weights.{key}") for key in raw}
    formula = data.get("bocr_formula")
    return MethodConfig(
        method=_str(data.get("method", "anp"), f"{path}.method"),
        criteria_weights=criteria_weights,
        bocr_weights=bocr_weights,
        bocr_formula=_str(formula, f"{path}.bocr_formula") if formula is not None else None,
        cr_threshold=_num(data.get("cr_threshold", 0.10), f"{path}.cr_threshold"),
        relax_bound_pairing=_bool(
            data.get("relax_bound_pairing", False), f"{path}.relax_bound_pairing"
        ),
    )


def scenario_from_dict(data: dict) -> Scenario:
    """Strict structural parse of a scenario document dict."""
    root = _obj(
        data,
        "scenario",
        required={"schema_version", "id", "title", "alternatives", "criteria"},
        optional={"description", "goals", "requirements", "network", "judgments", "method"},
    )
    version = root["schema_version"]
    if not isinstance(version, int) or isinstance(version, bool):
        _fail("scenario.schema_version", "expected an integer")
    if version != SCHEMA_VERSION:
        _fail(
            "scenario.schema_version",
            f"unsupported schema version {version} (this build reads {SCHEMA_VERSION})",
        )
    network = None
    if root.get("network") is not None:
        network = _parse_network(root["network"], "scenario.network")
    return Scenario(
        id=_str(root["id"], "scenario.id"),
        title=_str(root["title"], "scenario.title"),
        description=_str(root.get("description", ""), "scenario.description"),
        goals=tuple(
            _str(goal, f"scenario.goals[{k}]")
            for k, goal in enumerate(_list(root.get("goals", []), "scenario.goals"))
        ),
        alternatives=tuple(
            _parse_alternative(item, f"scenario.alternatives[{k}]")
            for k, item in enumerate(_list(root["alternatives"], "scenario.alternatives"))
        ),
        criteria=tuple(
            _parse_criterion(item, f"scenario.criteria[{k}]")
            for k, item in enumerate(_list(root["criteria"], "scenario.criteria"))
        ),
        requirements=tuple(
            _parse_requirement(item, f"scenario.requirements[{k}]")
            for k, item in enumerate(_list(root.get("requirements", []), "scenario.requirements"))
        ),
        network=network,
        judgments=_parse_judgments(root.get("judgments", {}), "scenario.judgments"),
        method_config=_parse_method(root.get("method", {}), "scenario.method"),
    )


def parse_scenario(raw: bytes | str, check: bool = True) -> Scenario:
    """Parse document bytes into a Scenario; optionally validate invariants.

    Malformed syntax and schema errors raise ParseError with a location;
    with check=True a scenario violating model invariants raises
    InvalidScenario carrying the full report.
    """
    text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    if not text.strip():
        raise ParseError("scenario", "empty document")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario:line {exc.lineno}:col {exc.colno}", exc.msg) from exc
    scenario = scenario_from_dict(data)
    if check:
        report = validate_scenario(scenario)
        if not report.ok:
            raise InvalidScenario(report)
    return scenario


def _attribute_value_to_dict(value: AttributeValue) -> dict:
    if value.is_measured:
        out = {"measured": canon_number(value.measured)}
        if value.unit:
            out["unit"] = value.unit
        return out
    return {"text": value.text}


def _scale_to_dict(scale) -> dict:
    if isinstance(scale, NominalScale):
        return {"type": "nominal", "labels": list(scale.labels)}
    if isinstance(scale, BinaryScale):
        return {"type": "binary", "yes_label": scale.yes_label, "no_label": scale.no_label}
    return {"type": "ratio", "unit": scale.unit, "lower_bound": canon_number(scale.lower_bound)}


def scenario_to_dict(scenario: Scenario) -> dict:
    """Canonical dict form: entity lists sorted by id, numbers canonical."""
    out: dict = {
        "schema_version": SCHEMA_VERSION,
        "id": scenario.id,
        "title": scenario.title,
        "alternatives": [
            {
                "id": alt.id,
                "name": alt.name,
                "attributes": {
                    name: _attribute_value_to_dict(alt.attributes[name])
                    for name in sorted(alt.attributes)
                },
            }
            for alt in sorted(scenario.alternatives, key=lambda a: a.id)
        ],
        "criteria": [],
        "method": {
            "method": scenario.method_config.method,
            "criteria_weights": {
                key: canon_number(value)
                for key, value in sorted(scenario.method_config.criteria_weights.items())
            },
            "cr_threshold": canon_number(scenario.method_config.cr_threshold),
            "relax_bound_pairing": scenario.method_config.relax_bound_pairing,
        },
    }
    if scenario.description:
        out["description"] = scenario.description
    if scenario.goals:
        out["goals"] = list(scenario.goals)
    for criterion in sorted(scenario.criteria, key=lambda c: c.id):
        entry: dict = {
            "id": criterion.id,
            "question": criterion.question,
            "kind": criterion.kind,
            "category": criterion.category,
            "data_source": criterion.data_source,
        }
        if criterion.scale is not None:
            entry["scale"] = _scale_to_dict(criterion.scale)
        if criterion.value_map is not None:
            entry["value_map"] = {
                label: canon_number(value) for label, value in sorted(criterion.value_map.items())
            }
        if criterion.attribute is not None:
            entry["attribute"] = criterion.attribute
        if criterion.requirement_only:
            entry["requirement_only"] = True
        out["criteria"].append(entry)
    if scenario.requirements:
        out["requirements"] = [
            {
                "criterion_id": req.criterion_id,
                "bound": req.bound,
                "threshold": canon_number(req.threshold),
            }
            for req in sorted(
                scenario.requirements, key=lambda r: (r.criterion_id, r.bound, r.threshold)
            )
        ]
    if scenario.network is not None:
        network = scenario.network
        out["network"] = {
            "clusters": [
                {
                    "id": cluster.id,
                    "name": cluster.name,
                    "kind": cluster.kind,
                    **({"category": cluster.category} if cluster.category else {}),
                    "nodes": sorted(cluster.nodes),
                }
                for cluster in sorted(network.clusters, key=lambda c: c.id)
            ],
            "links": [
                {"source": source, "target": target}
                for source, target in sorted(network.links)
            ],
            "cluster_weights": {
                target: {
                    source: canon_number(weight) for source, weight in sorted(sources.items())
                }
                for target, sources in sorted(network.cluster_weights.items())
            },
        }
    if scenario.judgments:
        out["judgments"] = {
            key: [
                {"i": j.i, "j": j.j, "ratio": canon_number(j.ratio)}
                for j in sorted(judgments, key=lambda j: (j.i, j.j))
            ]
            for key, judgments in sorted(scenario.judgments.items())
            if judgments
        }
    if scenario.method_config.bocr_weights is not None:
        out["method"]["bocr_weights"] = {
            key: canon_number(value)
            for key, value in sorted(scenario.method_config.bocr_weights.items())
        }
    if scenario.method_config.bocr_formula is not None:
        out["method"]["bocr_formula"] = scenario.method_config.bocr_formula
    return out


def serialize_scenario(scenario: Scenario) -> bytes:
    return canonical_bytes(scenario_to_dict(scenario))


@dataclass(frozen=True)
class JudgmentEdit:
    matrix: str
    i: str
    j: str
    ratio: float
    ts: str = ""

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix,
            "i": self.i,
            "j": self.j,
            "ratio": canon_number(self.ratio),
            "ts": self.ts,
        }


def _edit_from_dict(data: dict, path: str) -> JudgmentEdit:
    parsed = _obj(data, path, required={"matrix", "i", "j", "ratio"}, optional={"ts"})
    return JudgmentEdit(
        matrix=_str(parsed["matrix"], f"{path}.matrix"),
        i=_str(parsed["i"], f"{path}.i"),
        j=_str(parsed["j"], f"{path}.j"),
        ratio=_num(parsed["ratio"], f"{path}.ratio"),
        ts=_str(parsed.get("ts", ""), f"{path}.ts"),
    )


def apply_edits(scenario: Scenario, edits: tuple[JudgmentEdit, ...]) -> Scenario:
    """Fold the edit history into the scenario's judgment set.

    Later edits replace earlier judgments of the same unordered pair, so
    any history replays to exactly one judgment state.
    """
    merged: dict[str, dict[frozenset, Judgment]] = {}
    for key, judgments in scenario.judgments.items():
        merged[key] = {frozenset((j.i, j.j)): j for j in judgments}
    for edit in edits:
        merged.setdefault(edit.matrix, {})[frozenset((edit.i, edit.j))] = Judgment(
            edit.i, edit.j, edit.ratio
        )
    folded = {
        key: tuple(sorted(by_pair.values(), key=lambda j: (j.i, j.j)))
        for key, by_pair in merged.items()
        if by_pair
    }
    return replace(scenario, judgments=folded)


@dataclass(frozen=True)
class SessionRecord:
    session_id: str
    scenario: Scenario  # base document as submitted
    history: tuple[JudgmentEdit, ...]
    result: dict | None

    @property
    def revision(self) -> int:
        return len(self.history)

    def current_scenario(self) -> Scenario:
        return apply_edits(self.scenario, self.history)


def _atomic_write(path: Path, payload: bytes) -> None:
    tmp = path.with_name(f"{path.name}.tmp-{uuid.uuid4().hex}")
    tmp.write_bytes(payload)
    os.replace(tmp, path)


class SessionStore:
    """Directory-per-session persistence with optimistic concurrency.

    Layout: <root>/<session-id>/scenario.json, history.log (one canonical
    JSON edit per line), result.json. All writes go through a temp file
    and an atomic rename, so a crash never leaves a torn document.
    """

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _dir(self, session_id: str) -> Path:
        return self.root / session_id

    def create(self, scenario: Scenario) -> str:
        session_id = uuid.uuid4().hex[:12]
        directory = self._dir(session_id)
        directory.mkdir(parents=True)
        _atomic_write(directory / "scenario.json", serialize_scenario(scenario))
        _atomic_write(directory / "history.log", b"")
        return session_id

    def load(self, session_id: str) -> SessionRecord:
        directory = self._dir(session_id)
        scenario_path = directory / "scenario.json"
        if not scenario_path.is_file():
            raise SessionNotFound(session_id)
        scenario = parse_scenario(scenario_path.read_bytes(), check=False)
        history = []
        history_path = directory / "history.log"
        if history_path.is_file():
            for k, line in enumerate(history_path.read_text("utf-8").splitlines()):
                if not line.strip():
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"history.log:line {k + 1}", exc.msg) from exc
                history.append(_edit_from_dict(data, f"history.log:line {k + 1}"))
        result = None
        result_path = directory / "result.json"
        if result_path.is_file():
            result = json.loads(result_path.read_text("utf-8"))
        return SessionRecord(
            session_id=session_id,
            scenario=scenario,
            history=tuple(history),
            result=result,
        )

    def append_judgment(
        self, session_id: str, edit: JudgmentEdit, expected_revision: int
    ) -> SessionRecord:
        with self._lock:
            record = self.load(session_id)
            if record.revision != expected_revision:
                raise ConcurrentModification(expected_revision, record.revision)
            if not edit.ts:
                edit = replace(edit, ts=datetime.now(timezone.utc).isoformat())
            lines = [e.to_dict() for e in record.history] + [edit.to_dict()]
            payload = "".join(
                canonical_bytes(line).decode("utf-8") + "\n" for line in lines
            ).encode("utf-8")
            _atomic_write(self._dir(session_id) / "history.log", payload)
        return self.load(session_id)

    def save_result(self, session_id: str, revision: int, result: dict) -> None:
        if not self._dir(session_id).is_dir():
            raise SessionNotFound(session_id)
        payload = canonical_bytes({"revision": revision, "body": result})
        _atomic_write(self._dir(session_id) / "result.json", payload)

    def list_sessions(self) -> tuple[str, ...]:
        return tuple(
            sorted(p.name for p in self.root.iterdir() if (p / "scenario.json").is_file())
        )
