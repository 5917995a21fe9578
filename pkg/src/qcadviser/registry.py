"""Loading, validation, and serialization of the solver registry.

The registry is four flat JSON documents: solver records, benchmark sets,
topology definitions, and price entries. Loading produces an immutable
snapshot; refreshing produces a new snapshot that replaces the old one in
a single assignment, so readers never observe a half-updated registry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping, Protocol, Sequence

from .advisor import BenchmarkRow, BenchmarkSet, Solver
from .errors import (
    DuplicateId,
    ProviderUnavailable,
    SchemaError,
    UnknownTopology,
)
from .estimator import Topology

SOLVERS_FILE = "solvers.json"
BENCHMARKS_FILE = "benchmarks.json"
TOPOLOGIES_FILE = "topologies.json"
PRICES_FILE = "prices.json"


@dataclass(frozen=True)
class PriceEntry:
    """Usage price for one solver offering.

    fetched_at is the time of the last successful provider fetch, or None
    for an entry that has only ever been read from the prices file.
    """

    price_ref: str
    amount: float
    currency: str
    unit: str
    fetched_at: str | None = None

    def __post_init__(self) -> None:
        if self.amount < 0:
            raise ValueError("price amount must be non-negative")


@dataclass(frozen=True)
class RegistrySnapshot:
    """Validated, read-only view of the four registry documents.

    Treated as a value: fields are never mutated after construction, and
    every refresh builds a fresh snapshot.
    """

    solvers: tuple[Solver, ...]
    benchmarks: Mapping[str, BenchmarkSet]
    topologies: Mapping[str, Topology]
    prices: Mapping[str, PriceEntry]
    warnings: tuple[str, ...] = ()

    def solver_by_id(self, solver_id: str) -> Solver | None:
        for solver in self.solvers:
            if solver.id == solver_id:
                return solver
        return None


class PriceProvider(Protocol):
    """Seam for vendor price lookups; raises ProviderUnavailable on failure."""

    def fetch(self, price_ref: str) -> PriceEntry: ...


class FilePriceProvider:
    """Price provider backed by a prices file, re-read on every fetch."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def fetch(self, price_ref: str) -> PriceEntry:
        try:
            doc = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ProviderUnavailable(f"price source {self.path}: {exc}") from exc
        try:
            prices = load_prices(doc, source=self.path.name)
        except SchemaError as exc:
            raise ProviderUnavailable(str(exc)) from exc
        entry = prices.get(price_ref)
        if entry is None:
            raise ProviderUnavailable(f"no price entry for {price_ref!r}")
        return entry


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _require_int(entry: dict, key: str, path: str, *, default: int | None = None,
                 minimum: int = 0) -> int:
    value = entry.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}.{key}", "expected an integer")
    if value < minimum:
        raise SchemaError(f"{path}.{key}", f"must be at least {minimum}")
    return value


def _require_str(entry: dict, key: str, path: str) -> str:
    value = entry.get(key)
    if not isinstance(value, str) or not value:
        raise SchemaError(f"{path}.{key}", "expected a non-empty string")
    return value


def _require_array(doc: object, source: str) -> Sequence:
    if not isinstance(doc, (list, tuple)):
        raise SchemaError(source, "expected a JSON array")
    return doc


def _require_object(entry: object, path: str) -> dict:
    if not isinstance(entry, dict):
        raise SchemaError(path, "expected an object")
    return entry


def load_solvers(doc: object, *, source: str = SOLVERS_FILE) -> tuple[Solver, ...]:
    solvers: list[Solver] = []
    seen: set[str] = set()
    for i, raw in enumerate(_require_array(doc, source)):
        path = f"{source}[{i}]"
        entry = _require_object(raw, path)
        solver_id = _require_str(entry, "id", path)
        if solver_id in seen:
            raise DuplicateId("solver", solver_id)
        seen.add(solver_id)
        kind = _require_str(entry, "kind", path)
        topology = entry.get("topology")
        if topology is not None and not isinstance(topology, str):
            raise SchemaError(f"{path}.topology", "expected a string")
        price_ref = entry.get("priceRef")
        if price_ref is not None and not isinstance(price_ref, str):
            raise SchemaError(f"{path}.priceRef", "expected a string")
        try:
            solvers.append(Solver(
                id=solver_id,
                name=_require_str(entry, "name", path),
                kind=kind,
                max_qubits=_require_int(entry, "maxQubits", path, default=0),
                max_variables=_require_int(entry, "maxVariables", path, default=0),
                topology_name=topology,
                price_ref=price_ref,
                description=str(entry.get("description", "")),
            ))
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from exc
    return tuple(solvers)


def load_benchmarks(doc: object, *, source: str = BENCHMARKS_FILE) -> dict[str, BenchmarkSet]:
    benchmarks: dict[str, BenchmarkSet] = {}
    for i, raw in enumerate(_require_array(doc, source)):
        path = f"{source}[{i}]"
        entry = _require_object(raw, path)
        problem_id = _require_str(entry, "problemId", path)
        if problem_id in benchmarks:
            raise DuplicateId("benchmark", problem_id)
        names = _require_array(entry.get("solverNames"), f"{path}.solverNames")
        for k, name in enumerate(names):
            if not isinstance(name, str) or not name:
                raise SchemaError(f"{path}.solverNames[{k}]", "expected a non-empty string")
        rows: list[BenchmarkRow] = []
        for k, raw_row in enumerate(_require_array(entry.get("rows"), f"{path}.rows")):
            row_path = f"{path}.rows[{k}]"
            row = _require_object(raw_row, row_path)
            scores = _require_array(row.get("scores"), f"{row_path}.scores")
            if len(scores) != len(names):
                raise SchemaError(
                    f"{row_path}.scores",
                    f"expected {len(names)} scores to match solverNames, got {len(scores)}",
                )
            for s, score in enumerate(scores):
                if isinstance(score, bool) or not isinstance(score, int):
                    raise SchemaError(f"{row_path}.scores[{s}]", "expected an integer")
                if not 0 <= score <= 100:
                    raise SchemaError(f"{row_path}.scores[{s}]", "must be within 0..100")
            rows.append(BenchmarkRow(
                main_param=_require_int(row, "mainParam", row_path, minimum=1),
                scores=tuple(scores),
            ))
        # Ascending-order check happens in the BenchmarkSet invariant and
        # raises UnsortedBenchmark with the offending row index.
        benchmarks[problem_id] = BenchmarkSet(
            problem_id=problem_id,
            solver_names=tuple(names),
            rows=tuple(rows),
        )
    return benchmarks


def load_topologies(doc: object, *, source: str = TOPOLOGIES_FILE) -> dict[str, Topology]:
    topologies: dict[str, Topology] = {}
    for i, raw in enumerate(_require_array(doc, source)):
        path = f"{source}[{i}]"
        entry = _require_object(raw, path)
        name = _require_str(entry, "name", path)
        if name in topologies:
            raise DuplicateId("topology", name)
        try:
            topologies[name] = Topology(
                name=name,
                clique_divisor=_require_int(entry, "cliqueDivisor", path, minimum=1),
                description=str(entry.get("description", "")),
            )
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from exc
    return topologies


def load_prices(doc: object, *, source: str = PRICES_FILE) -> dict[str, PriceEntry]:
    prices: dict[str, PriceEntry] = {}
    for i, raw in enumerate(_require_array(doc, source)):
        path = f"{source}[{i}]"
        entry = _require_object(raw, path)
        ref = _require_str(entry, "priceRef", path)
        if ref in prices:
            raise DuplicateId("price", ref)
        amount = entry.get("amount")
        if isinstance(amount, bool) or not isinstance(amount, (int, float)):
            raise SchemaError(f"{path}.amount", "expected a number")
        fetched_at = entry.get("fetchedAt")
        if fetched_at is not None and not isinstance(fetched_at, str):
            raise SchemaError(f"{path}.fetchedAt", "expected a timestamp string")
        try:
            prices[ref] = PriceEntry(
                price_ref=ref,
                amount=float(amount),
                currency=_require_str(entry, "currency", path),
                unit=_require_str(entry, "unit", path),
                fetched_at=fetched_at,
            )
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from exc
    return prices


def load_snapshot(
    solvers_doc: object,
    benchmarks_doc: object = (),
    topologies_doc: object = (),
    prices_doc: object = (),
) -> RegistrySnapshot:
    """Validate the four registry documents into one consistent snapshot.

    QPU topology references are resolved eagerly so that a snapshot that
    loads can never hit an unknown topology during filtering. Benchmark
    columns naming no known solver are reported as warnings, not errors,
    so score tables may keep referencing retired hardware.
    """
    solvers = load_solvers(solvers_doc)
    benchmarks = load_benchmarks(benchmarks_doc)
    topologies = load_topologies(topologies_doc)
    prices = load_prices(prices_doc)

    for solver in solvers:
        if solver.kind == "qpu" and solver.topology_name not in topologies:
            raise UnknownTopology(solver.id, solver.topology_name or "")

    warnings: list[str] = []
    known_names = {solver.name for solver in solvers}
    for benchmark in benchmarks.values():
        for name in benchmark.solver_names:
            if name not in known_names:
                warnings.append(
                    f"benchmark {benchmark.problem_id!r} references unknown solver name {name!r}"
                )

    return RegistrySnapshot(
        solvers=solvers,
        benchmarks=benchmarks,
        topologies=topologies,
        prices=prices,
        warnings=tuple(warnings),
    )


def _read_doc(directory: Path, filename: str, *, required: bool = False) -> object:
    path = directory / filename
    if not path.is_file():
        if required:
            raise SchemaError(str(path), "registry file not found")
        return []
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(str(path), f"invalid JSON: {exc}") from exc


def load_dir(directory: str | Path) -> RegistrySnapshot:
    """Load a registry from a directory of JSON files.

    solvers.json must exist; the other documents default to empty.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise SchemaError(str(directory), "registry directory not found")
    return load_snapshot(
        _read_doc(directory, SOLVERS_FILE, required=True),
        _read_doc(directory, BENCHMARKS_FILE),
        _read_doc(directory, TOPOLOGIES_FILE),
        _read_doc(directory, PRICES_FILE),
    )


def dump_solvers(solvers: Iterable[Solver]) -> list[dict]:
    doc = []
    for solver in solvers:
        entry: dict = {"id": solver.id, "name": solver.name, "kind": solver.kind,
                       "maxQubits": solver.max_qubits, "maxVariables": solver.max_variables}
        if solver.topology_name is not None:
            entry["topology"] = solver.topology_name
        if solver.price_ref is not None:
            entry["priceRef"] = solver.price_ref
        if solver.description:
            entry["description"] = solver.description
        doc.append(entry)
    return doc


def dump_benchmarks(benchmarks: Mapping[str, BenchmarkSet]) -> list[dict]:
    return [
        {
            "problemId": b.problem_id,
            "solverNames": list(b.solver_names),
            "rows": [{"mainParam": r.main_param, "scores": list(r.scores)} for r in b.rows],
        }
        for b in benchmarks.values()
    ]


def dump_topologies(topologies: Mapping[str, Topology]) -> list[dict]:
    return [
        {"name": t.name, "cliqueDivisor": t.clique_divisor, "description": t.description}
        for t in topologies.values()
    ]


def dump_prices(prices: Mapping[str, PriceEntry]) -> list[dict]:
    doc = []
    for entry in prices.values():
        record: dict = {"priceRef": entry.price_ref, "amount": entry.amount,
                        "currency": entry.currency, "unit": entry.unit}
        if entry.fetched_at is not None:
            record["fetchedAt"] = entry.fetched_at
        doc.append(record)
    return doc


def dump_snapshot(snapshot: RegistrySnapshot) -> dict[str, list[dict]]:
    """Serialize a snapshot back to its four documents.

    Feeding the result to load_snapshot reproduces an equal snapshot.
    """
    return {
        "solvers": dump_solvers(snapshot.solvers),
        "benchmarks": dump_benchmarks(snapshot.benchmarks),
        "topologies": dump_topologies(snapshot.topologies),
        "prices": dump_prices(snapshot.prices),
    }


def fetch_prices(
    client: PriceProvider,
    refs: Iterable[str],
    prior: Mapping[str, PriceEntry] = (),
) -> tuple[dict[str, PriceEntry], tuple[str, ...]]:
    """Refresh price entries through the provider client.

    Returns the merged price map and the refs that could not be fetched.
    A failed ref keeps its prior entry untouched (stale but served);
    fetched_at is stamped only on success.
    """
    prices: dict[str, PriceEntry] = dict(prior)
    failed: list[str] = []
    for ref in refs:
        try:
            entry = client.fetch(ref)
        except ProviderUnavailable:
            failed.append(ref)
            continue
        prices[ref] = replace(entry, price_ref=ref, fetched_at=_utc_now())
    return prices, tuple(failed)


class Registry:
    """Owns the current snapshot; every update swaps in a new one whole."""

    def __init__(self, snapshot: RegistrySnapshot, provider: PriceProvider | None = None):
        self._snapshot = snapshot
        self._provider = provider

    @classmethod
    def from_dir(cls, directory: str | Path) -> "Registry":
        directory = Path(directory)
        return cls(load_dir(directory), FilePriceProvider(directory / PRICES_FILE))

    @property
    def snapshot(self) -> RegistrySnapshot:
        return self._snapshot

    def reload(self, snapshot: RegistrySnapshot) -> None:
        self._snapshot = snapshot

    def refresh_price(self, price_ref: str) -> PriceEntry:
        """Fetch one price; on success the updated snapshot replaces the old.

        Raises ProviderUnavailable when no provider is configured or the
        fetch fails; the prior snapshot stays in place either way.
        """
        if self._provider is None:
            raise ProviderUnavailable("no price provider configured")
        current = self._snapshot
        prices, failed = fetch_prices(self._provider, [price_ref], current.prices)
        if failed:
            raise ProviderUnavailable(f"price fetch failed for {price_ref!r}")
        self._snapshot = replace(current, prices=prices)
        return prices[price_ref]
