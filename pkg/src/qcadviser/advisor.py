"""Solver filtering and ranking.

Candidates are filtered on capacity (physical qubits for QPU solvers,
logical variables for hybrid ones) and then ordered, either by a benchmark
score looked up through the nearest recorded problem size, or by raw
capacity when no benchmark applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Sequence

from .catalog import Catalog, ProblemInstance, default_catalog
from .errors import NoCandidates, UnknownTopology, UnsortedBenchmark
from .estimator import ResourceEstimate, estimate_qubits

if TYPE_CHECKING:
    from .registry import RegistrySnapshot

QPU = "qpu"
HYBRID = "hybrid"

SORT_BENCHMARKED = "benchmarked"
SORT_DEFAULT = "default"

# Relative distance, as (numerator, denominator), within which a benchmark
# row still counts as matching the requested problem size.
MATCH_TOLERANCE = (1, 10)


@dataclass(frozen=True)
class Solver:
    """One hardware offering from the registry."""

    id: str
    name: str
    kind: str
    max_qubits: int = 0
    max_variables: int = 0
    topology_name: str | None = None
    price_ref: str | None = None
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind not in (QPU, HYBRID):
            raise ValueError(f"solver kind must be {QPU!r} or {HYBRID!r}, got {self.kind!r}")
        if self.kind == QPU:
            if self.max_qubits <= 0:
                raise ValueError("qpu solvers need max_qubits > 0")
            if not self.topology_name:
                raise ValueError("qpu solvers need a topology")
        elif self.max_variables <= 0:
            raise ValueError("hybrid solvers need max_variables > 0")


@dataclass(frozen=True)
class BenchmarkRow:
    """Scores recorded for one problem size; scores are success percentages."""

    main_param: int
    scores: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "scores", tuple(self.scores))
        if self.main_param < 1:
            raise ValueError("main parameter must be a positive integer")
        for s in self.scores:
            if not 0 <= s <= 100:
                raise ValueError(f"benchmark score {s} outside 0..100")


@dataclass(frozen=True)
class BenchmarkSet:
    """All benchmark rows for one problem, with the column-to-solver mapping."""

    problem_id: str
    solver_names: tuple[str, ...]
    rows: tuple[BenchmarkRow, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "solver_names", tuple(self.solver_names))
        object.__setattr__(self, "rows", tuple(self.rows))
        for i, row in enumerate(self.rows):
            if i > 0 and row.main_param < self.rows[i - 1].main_param:
                raise UnsortedBenchmark(self.problem_id, i)
            if len(row.scores) != len(self.solver_names):
                raise ValueError(
                    f"row {i} of benchmark {self.problem_id!r} has {len(row.scores)} "
                    f"scores for {len(self.solver_names)} solver names"
                )


@dataclass(frozen=True)
class RankedSolver:
    solver: Solver
    solution_quality: int | None
    rank: int


@dataclass(frozen=True)
class Recommendation:
    estimate: ResourceEstimate
    ranked: tuple[RankedSolver, ...]
    sort_mode: str
    benchmark_row_used: BenchmarkRow | None
    qubits_by_topology: Mapping[str, int]


def filter_solvers(
    solvers: Sequence[Solver],
    num_var: int,
    num_qubits_by_topology: Mapping[str, int],
) -> list[Solver]:
    """Keep solvers whose capacity covers the instance; input order preserved."""
    kept: list[Solver] = []
    for solver in solvers:
        if solver.kind == QPU:
            assert solver.topology_name is not None
            if solver.topology_name not in num_qubits_by_topology:
                raise UnknownTopology(solver.id, solver.topology_name)
            if num_qubits_by_topology[solver.topology_name] <= solver.max_qubits:
                kept.append(solver)
        else:
            if num_var <= solver.max_variables:
                kept.append(solver)
    return kept


def nearest_benchmark(benchmark_set: BenchmarkSet, n: int) -> tuple[BenchmarkRow, int] | None:
    """Row whose main parameter lies closest to ``n``, if close enough to count.

    Ties on distance go to the first row scanned. The winner is returned only
    when its distance stays within 10% of ``n`` (inclusive); otherwise the
    caller falls back to the default sort.
    """
    best_index: int | None = None
    best_dist = 0
    for index, row in enumerate(benchmark_set.rows):
        dist = abs(row.main_param - n)
        if best_index is None or dist < best_dist:
            best_index, best_dist = index, dist
    if best_index is None:
        return None
    num, den = MATCH_TOLERANCE
    if best_dist * den <= n * num:
        return benchmark_set.rows[best_index], best_index
    return None


def assign_quality(
    row: BenchmarkRow,
    solver_names: Sequence[str],
    candidates: Sequence[Solver],
) -> list[tuple[Solver, int | None]]:
    """Attach the row's score to each candidate by matching display names.

    Candidates whose name does not appear in the header stay unscored; they
    sort after every scored one.
    """
    position: dict[str, int] = {}
    for index, name in enumerate(solver_names):
        position.setdefault(name, index)
    drafts: list[tuple[Solver, int | None]] = []
    for solver in candidates:
        index = position.get(solver.name)
        drafts.append((solver, row.scores[index] if index is not None else None))
    return drafts


def sort_default(candidates: Sequence[Solver]) -> list[Solver]:
    """Capacity order: descending by max variables, then max qubits; stable."""
    return sorted(candidates, key=lambda s: (-s.max_variables, -s.max_qubits))


def sort_benchmarked(
    drafts: Sequence[tuple[Solver, int | None]],
) -> list[tuple[Solver, int | None]]:
    """Quality order: descending by (score, max variables, max qubits); stable.

    Unscored drafts follow all scored ones, in default capacity order.
    """
    scored = [d for d in drafts if d[1] is not None]
    unscored = [d for d in drafts if d[1] is None]
    scored.sort(key=lambda d: (-d[1], -d[0].max_variables, -d[0].max_qubits))
    unscored.sort(key=lambda d: (-d[0].max_variables, -d[0].max_qubits))
    return scored + unscored


def recommend(
    instance: ProblemInstance,
    snapshot: RegistrySnapshot,
    catalog: Catalog | None = None,
) -> Recommendation:
    """Full pipeline: estimate resources, filter solvers, rank them.

    Raises NoCandidates when filtering leaves nothing, carrying the resource
    numbers so they can still be reported.
    """
    if catalog is None:
        catalog = default_catalog()
    num_var = catalog.variable_count(instance)
    qubits_by_topology = {
        name: estimate_qubits(num_var, topology)
        for name, topology in snapshot.topologies.items()
    }
    candidates = filter_solvers(snapshot.solvers, num_var, qubits_by_topology)
    if not candidates:
        raise NoCandidates(num_var, qubits_by_topology)

    benchmark_set = snapshot.benchmarks.get(instance.problem_id)
    match = nearest_benchmark(benchmark_set, instance.n) if benchmark_set else None

    if match is not None:
        row, _ = match
        assert benchmark_set is not None
        ordered = sort_benchmarked(assign_quality(row, benchmark_set.solver_names, candidates))
        ranked = tuple(
            RankedSolver(solver, quality, position + 1)
            for position, (solver, quality) in enumerate(ordered)
        )
        sort_mode: str = SORT_BENCHMARKED
        row_used: BenchmarkRow | None = row
    else:
        ranked = tuple(
            RankedSolver(solver, None, position + 1)
            for position, solver in enumerate(sort_default(candidates))
        )
        sort_mode = SORT_DEFAULT
        row_used = None

    headline_qubits = max(qubits_by_topology.values(), default=num_var)
    return Recommendation(
        estimate=ResourceEstimate(num_var=num_var, num_qubits=headline_qubits),
        ranked=ranked,
        sort_mode=sort_mode,
        benchmark_row_used=row_used,
        qubits_by_topology=qubits_by_topology,
    )
