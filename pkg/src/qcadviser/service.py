"""HTTP API over the recommendation workflow.

Endpoints mirror the wizard steps: problem discovery, recommendation, and
on-demand price lookup. All success payloads are built by the payload
helpers below, which the CLI reuses so that `--json` output and HTTP bodies
are byte-identical. Errors use title/status/detail problem bodies.
"""

from __future__ import annotations

import json
import math
from typing import Sequence

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .advisor import Recommendation, recommend
from .catalog import (
    Catalog,
    ParamSpec,
    ProblemDescriptor,
    ProblemInstance,
    default_catalog,
)
from .errors import (
    InvalidInstance,
    NoCandidates,
    NoFormula,
    ProviderUnavailable,
    SchemaError,
    UnknownClass,
)
from .registry import PriceEntry, Registry

DEFAULT_PORT = 8080
PORT_ENV = "QCADVISER_PORT"
REGISTRY_ENV = "QCADVISER_REGISTRY"


def dump_json(payload: object) -> str:
    """Canonical compact JSON; the single encoder for CLI and HTTP output."""
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def classes_payload(catalog: Catalog) -> list[dict]:
    return [
        {"id": c.id, "name": c.name, "description": c.description}
        for c in catalog.list_classes()
    ]


def _param_payload(param: ParamSpec) -> dict:
    entry: dict = {"name": param.name, "kind": param.kind, "required": param.required}
    if param.min is not None:
        entry["min"] = param.min
    return entry


def _problem_payload(descriptor: ProblemDescriptor) -> dict:
    return {
        "id": descriptor.id,
        "classId": descriptor.class_id,
        "name": descriptor.name,
        "description": descriptor.description,
        "params": [_param_payload(p) for p in descriptor.params],
    }


def problems_payload(catalog: Catalog, class_id: str) -> list[dict]:
    return [_problem_payload(d) for d in catalog.list_problems(class_id)]


def recommend_payload(recommendation: Recommendation) -> dict:
    ranked = []
    for entry in recommendation.ranked:
        solver = entry.solver
        record: dict = {
            "rank": entry.rank,
            "id": solver.id,
            "name": solver.name,
            "kind": solver.kind,
        }
        if solver.topology_name is not None:
            record["topology"] = solver.topology_name
        record["maxQubits"] = solver.max_qubits
        record["maxVariables"] = solver.max_variables
        if entry.solution_quality is not None:
            record["solutionQuality"] = entry.solution_quality
        ranked.append(record)
    return {
        "numVar": recommendation.estimate.num_var,
        "numQubits": dict(recommendation.qubits_by_topology),
        "sortMode": recommendation.sort_mode,
        "noCandidates": False,
        "rankedSolvers": ranked,
    }


def no_candidates_payload(exc: NoCandidates) -> dict:
    return {
        "numVar": exc.num_var,
        "numQubits": dict(exc.qubits_by_topology),
        "sortMode": "default",
        "noCandidates": True,
        "rankedSolvers": [],
    }


def price_payload(entry: PriceEntry) -> dict:
    record: dict = {
        "priceRef": entry.price_ref,
        "amount": entry.amount,
        "currency": entry.currency,
        "unit": entry.unit,
    }
    if entry.fetched_at is not None:
        record["fetchedAt"] = entry.fetched_at
    return record


def _decode_distances(value: object, path: str) -> list[list[float]]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array of arrays")
    matrix: list[list[float]] = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise SchemaError(f"{path}[{i}]", "expected an array")
        cells: list[float] = []
        for j, cell in enumerate(row):
            if cell is None:
                # Missing edges cannot be expressed in JSON numbers.
                cells.append(math.inf)
            elif isinstance(cell, bool) or not isinstance(cell, (int, float)):
                raise SchemaError(f"{path}[{i}][{j}]", "expected a number or null")
            else:
                cells.append(float(cell))
        matrix.append(cells)
    return matrix


def parse_recommend_request(body: object, catalog: Catalog) -> ProblemInstance:
    """Validate a recommend request body against the problem's parameter schema."""
    if not isinstance(body, dict):
        raise SchemaError("$", "expected a JSON object")
    problem_id = body.get("problemId")
    if not isinstance(problem_id, str) or not problem_id:
        raise SchemaError("$.problemId", "expected a non-empty string")
    descriptor = catalog.find_problem(problem_id)
    if descriptor is None:
        raise SchemaError("$.problemId", f"unknown problem {problem_id!r}")
    params = body.get("params", {})
    if not isinstance(params, dict):
        raise SchemaError("$.params", "expected an object")

    known = {p.name for p in descriptor.params}
    for name in params:
        if name not in known:
            raise SchemaError(f"$.params.{name}", "not a parameter of this problem")

    main_size: int | None = None
    distances: list[list[float]] | None = None
    for param in descriptor.params:
        value = params.get(param.name)
        if value is None:
            if param.required:
                raise SchemaError(f"$.params.{param.name}", "required parameter missing")
            continue
        path = f"$.params.{param.name}"
        if param.kind == "positive-integer":
            if isinstance(value, bool) or not isinstance(value, int):
                raise SchemaError(path, "expected an integer")
            if value < max(1, param.min or 1):
                raise SchemaError(path, f"must be at least {max(1, param.min or 1)}")
            if main_size is None:
                main_size = value
        else:
            distances = _decode_distances(value, path)
    if main_size is None:
        raise SchemaError("$.params", "no size parameter given")
    return ProblemInstance(problem_id=problem_id, n=main_size, distances=distances)


def _problem_response(status: int, title: str, detail: str, **extra: object) -> JSONResponse:
    body: dict = {"title": title, "status": status, "detail": detail}
    body.update(extra)
    return JSONResponse(body, status_code=status, media_type="application/problem+json")


def _json_response(payload: object, status: int = 200, *, head: bool = False) -> Response:
    if head:
        return Response(content=b"", status_code=status, media_type="application/json")
    return Response(
        content=dump_json(payload),
        status_code=status,
        media_type="application/json",
    )


def create_app(
    registry: Registry,
    catalog: Catalog | None = None,
    *,
    cors_origins: Sequence[str] = ("*",),
) -> FastAPI:
    """Build the API application over a registry and problem catalog."""
    if catalog is None:
        catalog = default_catalog()
    app = FastAPI(title="qcadviser", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["GET", "POST", "HEAD"],
        allow_headers=["*"],
    )

    @app.api_route("/api/classes", methods=["GET", "HEAD"])
    def get_classes(request: Request) -> Response:
        return _json_response(classes_payload(catalog), head=request.method == "HEAD")

    @app.api_route("/api/classes/{class_id}/problems", methods=["GET", "HEAD"])
    def get_problems(class_id: str, request: Request) -> Response:
        try:
            payload = problems_payload(catalog, class_id)
        except UnknownClass as exc:
            return _problem_response(404, "UnknownClass", str(exc))
        return _json_response(payload, head=request.method == "HEAD")

    @app.post("/api/recommend")
    async def post_recommend(request: Request) -> Response:
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            return _problem_response(400, "SchemaError", f"invalid JSON body: {exc}")
        try:
            instance = parse_recommend_request(body, catalog)
            recommendation = recommend(instance, registry.snapshot, catalog)
        except (SchemaError, InvalidInstance) as exc:
            return _problem_response(400, type(exc).__name__, str(exc))
        except NoFormula as exc:
            return _problem_response(422, "NoFormula", str(exc))
        except NoCandidates as exc:
            return _json_response(no_candidates_payload(exc))
        return _json_response(recommend_payload(recommendation))

    @app.get("/api/solvers/{solver_id}/price")
    def get_price(solver_id: str) -> Response:
        solver = registry.snapshot.solver_by_id(solver_id)
        if solver is None:
            return _problem_response(404, "UnknownSolver", f"unknown solver {solver_id!r}")
        if solver.price_ref is None:
            return _problem_response(404, "NoPrice", f"solver {solver_id!r} has no price reference")
        try:
            entry = registry.refresh_price(solver.price_ref)
        except ProviderUnavailable as exc:
            stale = registry.snapshot.prices.get(solver.price_ref)
            extra: dict = {"stalePrice": price_payload(stale)} if stale is not None else {}
            return _problem_response(503, "ProviderUnavailable", str(exc), **extra)
        return _json_response(price_payload(entry))

    return app
