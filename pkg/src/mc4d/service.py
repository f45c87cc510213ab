"""HTTP API for interactive elicitation, evaluation and what-if exploration.

Sessions wrap a scenario document plus an append-only judgment history;
mutations carry the client's expected revision and fail with 409 when
stale, so concurrent tabs cannot clobber each other. All bodies are
canonical JSON, which makes evaluation responses byte-stable.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from mc4d.canonical import canonical_dumps
from mc4d.errors import (
    ConcurrentModification,
    DegenerateWeights,
    IncompleteJudgments,
    InvalidScenario,
    Mc4dError,
    ParseError,
    SessionNotFound,
)
from mc4d.methods import evaluate, required_judgment_matrices
from mc4d.model import SAATY_MAX, SAATY_MIN, Scenario, validate_scenario
from mc4d.priorities import (
    derive_priorities,
    judgments_to_matrix,
    missing_pairs,
    most_inconsistent_triad,
)
from mc4d.sensitivity import weight_sweep
from mc4d.storage import JudgmentEdit, SessionStore, parse_scenario, scenario_to_dict


class JudgmentBody(BaseModel):
    matrix: str
    i: str
    j: str
    ratio: float
    expected_revision: int


class SensitivityBody(BaseModel):
    criterion_id: str
    steps: int = 11


def _json(payload, status: int = 200) -> Response:
    return Response(
        content=canonical_dumps(payload),
        status_code=status,
        media_type="application/json",
    )


def _error(status: int, code: str, **detail) -> Response:
    return _json({"error": {"code": code, **detail}}, status=status)


def _elicitation_state(scenario: Scenario) -> dict:
    """Per-matrix progress and, once complete, a live consistency report."""
    threshold = scenario.method_config.cr_threshold
    state = {}
    for key, nodes in sorted(required_judgment_matrices(scenario).items()):
        judgments = [
            j for j in scenario.judgments.get(key, ()) if j.i in nodes and j.j in nodes
        ]
        missing = missing_pairs(judgments, nodes)
        required = len(nodes) * (len(nodes) - 1) // 2
        entry = {
            "nodes": list(nodes),
            "required": required,
            "given": required - len(missing),
            "missing_pairs": [list(pair) for pair in missing],
            "consistency": None,
            "worst_triad": None,
        }
        if not missing:
            matrix = judgments_to_matrix(judgments, nodes, matrix=key)
            _, report = derive_priorities(matrix, threshold)
            entry["consistency"] = report.to_dict()
            if not report.acceptable:
                triad = most_inconsistent_triad(matrix)
                entry["worst_triad"] = list(triad) if triad else None
        state[key] = entry
    return state


def _session_snapshot(store: SessionStore, session_id: str) -> dict:
    record = store.load(session_id)
    scenario = record.current_scenario()
    return {
        "session_id": record.session_id,
        "revision": record.revision,
        "scenario": scenario_to_dict(scenario),
        "elicitation": _elicitation_state(scenario),
        "result": record.result,
    }


def create_app(store_root: Path | str | None = None, cors_origin: str | None = None) -> FastAPI:
    if store_root is None:
        store_root = os.environ.get(
            "MC4D_STORE", os.path.join(tempfile.gettempdir(), "mc4d-sessions")
        )
    store = SessionStore(store_root)
    app = FastAPI(title="mc4d decision service", version="1.0")
    origin = cors_origin or os.environ.get("MC4D_UI_ORIGIN", "*")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/v1/health")
    def health() -> Response:
        return _json({"status": "ok"})

    @app.post("/v1/sessions")
    async def create_session(request: Request) -> Response:
        raw = await request.body()
        try:
            scenario = parse_scenario(raw, check=False)
        except ParseError as exc:
            return _error(400, "MALFORMED_SCENARIO", location=exc.location, message=exc.message)
        report = validate_scenario(scenario)
        if not report.ok:
            return _json(
                {
                    "error": {
                        "code": "INVALID_SCENARIO",
                        "violations": [v.to_dict() for v in report.violations],
                    }
                },
                status=422,
            )
        session_id = store.create(scenario)
        return _json({"session_id": session_id, "revision": 0}, status=201)

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> Response:
        try:
            return _json(_session_snapshot(store, session_id))
        except SessionNotFound:
            return _error(404, "SESSION_NOT_FOUND", session_id=session_id)

    @app.put("/v1/sessions/{session_id}/judgments")
    def put_judgment(session_id: str, body: JudgmentBody) -> Response:
        try:
            record = store.load(session_id)
        except SessionNotFound:
            return _error(404, "SESSION_NOT_FOUND", session_id=session_id)
        scenario = record.current_scenario()
        required = required_judgment_matrices(scenario)
        if body.matrix not in required:
            return _error(400, "UNKNOWN_MATRIX", matrix=body.matrix)
        nodes = required[body.matrix]
        if body.i not in nodes or body.j not in nodes or body.i == body.j:
            return _error(400, "UNKNOWN_PAIR", i=body.i, j=body.j)
        if not (SAATY_MIN - 1e-9 <= body.ratio <= SAATY_MAX + 1e-9):
            return _error(400, "RATIO_OUT_OF_SCALE", ratio=body.ratio)
        edit = JudgmentEdit(matrix=body.matrix, i=body.i, j=body.j, ratio=body.ratio)
        try:
            record = store.append_judgment(session_id, edit, body.expected_revision)
        except ConcurrentModification as exc:
            return _error(409, "STALE_REVISION", expected=exc.expected, revision=exc.actual)
        state = _elicitation_state(record.current_scenario())
        return _json(
            {
                "revision": record.revision,
                "matrix": body.matrix,
                "progress": state[body.matrix],
            }
        )

    @app.post("/v1/sessions/{session_id}/evaluate")
    def evaluate_session(session_id: str) -> Response:
        try:
            record = store.load(session_id)
        except SessionNotFound:
            return _error(404, "SESSION_NOT_FOUND", session_id=session_id)
        scenario = record.current_scenario()
        try:
            result = evaluate(scenario)
        except IncompleteJudgments as exc:
            return _json(
                {
                    "error": {
                        "code": "INCOMPLETE_JUDGMENTS",
                        "matrix": exc.matrix,
                        "missing_pairs": [list(pair) for pair in exc.missing],
                    }
                },
                status=422,
            )
        except InvalidScenario as exc:
            return _json(
                {
                    "error": {
                        "code": "INVALID_SCENARIO",
                        "violations": [v.to_dict() for v in exc.report.violations],
                    }
                },
                status=422,
            )
        body = result.to_dict()
        store.save_result(session_id, record.revision, body)
        return _json(body)

    @app.post("/v1/sessions/{session_id}/sensitivity")
    def sensitivity_session(session_id: str, body: SensitivityBody) -> Response:
        try:
            record = store.load(session_id)
        except SessionNotFound:
            return _error(404, "SESSION_NOT_FOUND", session_id=session_id)
        scenario = record.current_scenario()
        try:
            sweep = weight_sweep(scenario, body.criterion_id, body.steps)
        except KeyError as exc:
            return _error(400, "UNKNOWN_CRITERION", message=str(exc.args[0]))
        except (DegenerateWeights, ValueError) as exc:
            return _error(422, "DEGENERATE_SWEEP", message=str(exc))
        except IncompleteJudgments as exc:
            return _json(
                {
                    "error": {
                        "code": "INCOMPLETE_JUDGMENTS",
                        "matrix": exc.matrix,
                        "missing_pairs": [list(pair) for pair in exc.missing],
                    }
                },
                status=422,
            )
        except Mc4dError as exc:
            return _error(422, "EVALUATION_FAILED", message=str(exc))
        return _json(sweep.to_dict())

    return app
