"""Problem catalog: classes, problem descriptors, and variable-count formulas.

The catalog is assembled once at startup (built-ins plus optional JSON
extensions) and treated as immutable afterwards, so concurrent readers need
no locking.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .errors import InvalidInstance, NoFormula, SchemaError, UnknownClass

PARAM_KINDS = ("positive-integer", "distance-matrix")


@dataclass(frozen=True)
class ParamSpec:
    """One entry of a problem's parameter form."""

    name: str
    kind: str
    required: bool = True
    min: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in PARAM_KINDS:
            raise ValueError(f"unknown parameter kind: {self.kind!r}")


@dataclass(frozen=True)
class ProblemClass:
    id: str
    name: str
    description: str = ""


@dataclass(frozen=True)
class ProblemDescriptor:
    id: str
    class_id: str
    name: str
    description: str = ""
    params: tuple[ParamSpec, ...] = ()

    def __post_init__(self) -> None:
        names = [p.name for p in self.params]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate parameter names in descriptor {self.id!r}")


@dataclass(frozen=True)
class ProblemInstance:
    """A concrete instance of a catalog problem.

    ``n`` is the node count. ``distances`` is an optional symmetric matrix
    with zero diagonal; ``math.inf`` marks an edge that does not exist.
    When no matrix is given the instance describes a complete graph with
    unit distances.
    """

    problem_id: str
    n: int
    distances: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidInstance(f"node count must be an integer >= 2, got {self.n!r}")
        if self.distances is None:
            return
        rows = tuple(tuple(float(x) for x in row) for row in self.distances)
        object.__setattr__(self, "distances", rows)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise InvalidInstance(f"distance matrix must be {self.n}x{self.n}")
        for i in range(self.n):
            if rows[i][i] != 0.0:
                raise InvalidInstance("distance matrix must have a zero diagonal")
            for j in range(self.n):
                d = rows[i][j]
                if math.isnan(d) or d < 0.0:
                    raise InvalidInstance("distances must be non-negative")
                if rows[i][j] != rows[j][i]:
                    raise InvalidInstance("distance matrix must be symmetric")

    def distance(self, u: int, v: int) -> float:
        """Distance between two nodes; 1.0 everywhere on the implied unit graph."""
        if self.distances is None:
            return 0.0 if u == v else 1.0
        return self.distances[u][v]

    def max_finite_distance(self) -> float:
        """Largest existing edge distance, or 1.0 for the unit graph."""
        if self.distances is None:
            return 1.0
        finite = [
            d for i, row in enumerate(self.distances)
            for j, d in enumerate(row)
            if i != j and math.isfinite(d)
        ]
        return max(finite, default=1.0)


FormulaFn = Callable[[ProblemInstance], int]


class Catalog:
    """Registry of problem classes, descriptors and variable-count formulas.

    Register extensions during startup only; afterwards the catalog is
    read-only by convention.
    """

    def __init__(self) -> None:
        self._classes: dict[str, ProblemClass] = {}
        self._problems: dict[str, ProblemDescriptor] = {}
        self._formulas: dict[str, FormulaFn] = {}

    def register_class(self, problem_class: ProblemClass) -> None:
        self._classes[problem_class.id] = problem_class

    def register_problem(self, descriptor: ProblemDescriptor) -> None:
        if descriptor.class_id not in self._classes:
            raise UnknownClass(descriptor.class_id)
        self._problems[descriptor.id] = descriptor

    def register_formula(self, problem_id: str, formula: FormulaFn) -> None:
        self._formulas[problem_id] = formula

    def list_classes(self) -> list[ProblemClass]:
        return [self._classes[key] for key in sorted(self._classes)]

    def list_problems(self, class_id: str) -> list[ProblemDescriptor]:
        if class_id not in self._classes:
            raise UnknownClass(class_id)
        return [
            self._problems[key]
            for key in sorted(self._problems)
            if self._problems[key].class_id == class_id
        ]

    def find_problem(self, problem_id: str) -> ProblemDescriptor | None:
        return self._problems.get(problem_id)

    def variable_count(self, instance: ProblemInstance) -> int:
        """Number of binary variables the instance's QUBO formulation needs."""
        formula = self._formulas.get(instance.problem_id)
        if formula is None:
            raise NoFormula(instance.problem_id)
        return formula(instance)

    def merge_problems(self, doc: Sequence[dict], *, source: str = "problems.json") -> None:
        """Merge descriptor records parsed from a problems file; file entries win by id."""
        if not isinstance(doc, (list, tuple)):
            raise SchemaError(source, "expected a JSON array of problem descriptors")
        for i, entry in enumerate(doc):
            path = f"{source}[{i}]"
            if not isinstance(entry, dict):
                raise SchemaError(path, "expected an object")
            try:
                descriptor = ProblemDescriptor(
                    id=_required_str(entry, "id", path),
                    class_id=_required_str(entry, "classId", path),
                    name=_required_str(entry, "name", path),
                    description=str(entry.get("description", "")),
                    params=tuple(_parse_param(p, f"{path}.params[{k}]")
                                 for k, p in enumerate(entry.get("params", []))),
                )
                self.register_problem(descriptor)
            except UnknownClass as exc:
                raise SchemaError(path, f"classId {exc.class_id!r} is not a known class") from exc
            except ValueError as exc:
                raise SchemaError(path, str(exc)) from exc

    def merge_file(self, path: str | Path) -> None:
        text = Path(path).read_text(encoding="utf-8")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(str(path), f"invalid JSON: {exc}") from exc
        self.merge_problems(doc, source=Path(path).name)


def _required_str(entry: dict, key: str, path: str) -> str:
    value = entry.get(key)
    if not isinstance(value, str) or not value:
        raise SchemaError(f"{path}.{key}", "expected a non-empty string")
    return value


def _parse_param(entry: dict, path: str) -> ParamSpec:
    if not isinstance(entry, dict):
        raise SchemaError(path, "expected an object")
    minimum = entry.get("min")
    if minimum is not None and not isinstance(minimum, int):
        raise SchemaError(f"{path}.min", "expected an integer")
    try:
        return ParamSpec(
            name=_required_str(entry, "name", path),
            kind=_required_str(entry, "kind", path),
            required=bool(entry.get("required", True)),
            min=minimum,
        )
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def tsp_variable_count(instance: ProblemInstance) -> int:
    # One binary variable per (node, tour position) pair.
    return instance.n * instance.n


_BUILTIN_CLASSES = (
    ProblemClass(
        id="routing",
        name="Routing Problems",
        description="Finding optimal routes through a set of locations.",
    ),
    ProblemClass(
        id="sequencing",
        name="Sequencing Problems",
        description="Ordering jobs or tasks over time.",
    ),
    ProblemClass(
        id="general",
        name="General Problems",
        description=(
            "Base problems in their plain textbook form, carrying only the "
            "constraints implied by the problem definition itself."
        ),
    ),
)

_TSP_DESCRIPTOR = ProblemDescriptor(
    id="tsp",
    class_id="routing",
    name="Travelling Salesman Problem",
    description=(
        "Find the shortest closed tour that visits every node exactly once "
        "and returns to the start. Without a distance matrix the nodes form "
        "a complete graph with unit distances."
    ),
    params=(
        ParamSpec(name="n", kind="positive-integer", required=True, min=2),
        ParamSpec(name="distances", kind="distance-matrix", required=False),
    ),
)


def default_catalog(extension_file: str | Path | None = None) -> Catalog:
    """Fresh catalog with the built-in classes, the TSP descriptor and its formula."""
    catalog = Catalog()
    for problem_class in _BUILTIN_CLASSES:
        catalog.register_class(problem_class)
    catalog.register_problem(_TSP_DESCRIPTOR)
    catalog.register_formula("tsp", tsp_variable_count)
    if extension_file is not None and Path(extension_file).exists():
        catalog.merge_file(extension_file)
    return catalog
