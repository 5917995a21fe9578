"""QUBO construction for the TSP plus the classical oracles used to check it.

The tour encoding uses one binary variable per (node, position) pair,
flattened as ``index = node * n + position``. A tour assignment sets exactly
one variable per node row and one per position column. The energy of such an
assignment is the weighted tour cost plus a constant that is identical for
every valid tour (see :func:`tour_energy_offset`), so minimising the QUBO
minimises the tour cost.

Penalty structure, with weights ``c1`` (constraints) and ``c2`` (cost):

* one-hot penalty per node row: being at exactly one position,
* one-hot penalty per position column: holding exactly one node,
* a per-step penalty for consecutive positions joined by a non-existing
  edge (distance ``inf``); complete graphs contribute nothing here,
* the tour cost itself over consecutive positions, wrapping around.

A QUBO holds no constant term, so the expanded one-hot squares leave the
constant ``-2 * n * c1`` on every feasible assignment.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .catalog import ProblemInstance
from .errors import InvalidInstance, LengthMismatch, TooLarge, ZeroOptimum

BRUTE_FORCE_LIMIT = 10

DistanceMatrix = Sequence[Sequence[float]]


@dataclass(frozen=True)
class Qubo:
    """Upper-triangular quadratic form over binary variables.

    ``coeffs`` maps index pairs ``(i, j)`` with ``i <= j`` to coefficients;
    diagonal entries are the linear terms. Treat as read-only.
    """

    size: int
    coeffs: Mapping[tuple[int, int], float]

    def __post_init__(self) -> None:
        for (i, j) in self.coeffs:
            if not (0 <= i <= j < self.size):
                raise ValueError(f"coefficient index ({i}, {j}) out of range for size {self.size}")


@dataclass(frozen=True)
class Tour:
    """A cyclic visiting order over nodes 0..n-1; cost includes the closing edge."""

    order: tuple[int, ...]
    cost: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"tour order must be a permutation of 0..{len(self.order) - 1}")


@dataclass(frozen=True)
class SampleResult:
    bits: tuple[int, ...]
    energy: float
    decoded: Tour | None = None


def tour_cost(order: Sequence[int], distances: DistanceMatrix | None = None) -> float:
    """Cost of a cyclic tour; ``distances=None`` means the unit-distance graph."""
    n = len(order)
    if distances is None:
        return float(n)
    return float(sum(distances[order[i]][order[(i + 1) % n]] for i in range(n)))


def tour_energy_offset(n: int, c1: float) -> float:
    """Constant energy contribution of the one-hot penalties on any feasible assignment."""
    return -2.0 * n * c1


def default_penalty_weight(instance: ProblemInstance) -> float:
    """Constraint weight large enough that no constraint violation can ever pay off.

    Twice the largest possible single-edge gain, scaled by the node count;
    floored at ``2 * n`` so degenerate all-zero matrices stay sound.
    """
    return 2.0 * instance.n * max(1.0, instance.max_finite_distance())


def build_tsp_qubo(
    instance: ProblemInstance,
    c1: float | None = None,
    c2: float = 1.0,
) -> Qubo:
    """Encode a TSP instance as a QUBO with one variable per (node, position).

    ``c1`` defaults to :func:`default_penalty_weight`, which guarantees that
    every feasible assignment beats every infeasible one.
    """
    if instance.problem_id != "tsp":
        raise InvalidInstance(f"expected a tsp instance, got {instance.problem_id!r}")
    if c1 is None:
        c1 = default_penalty_weight(instance)
    if c1 <= 0 or c2 <= 0:
        raise ValueError("penalty weights must be positive")

    n = instance.n
    coeffs: dict[tuple[int, int], float] = {}

    def add(i: int, j: int, value: float) -> None:
        key = (i, j) if i <= j else (j, i)
        coeffs[key] = coeffs.get(key, 0.0) + value

    def idx(node: int, pos: int) -> int:
        return node * n + pos

    # One-hot rows: each node sits at exactly one position.
    for node in range(n):
        for p in range(n):
            add(idx(node, p), idx(node, p), -c1)
            for q in range(p + 1, n):
                add(idx(node, p), idx(node, q), 2.0 * c1)

    # One-hot columns: each position holds exactly one node.
    for p in range(n):
        for node in range(n):
            add(idx(node, p), idx(node, p), -c1)
            for other in range(node + 1, n):
                add(idx(node, p), idx(other, p), 2.0 * c1)

    # Step terms between consecutive positions: cost for existing edges,
    # a flat penalty for missing ones.
    for p in range(n):
        succ = (p + 1) % n
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                d = instance.distance(u, v)
                if math.isinf(d):
                    add(idx(u, p), idx(v, succ), c1)
                else:
                    add(idx(u, p), idx(v, succ), c2 * d)

    return Qubo(size=n * n, coeffs=coeffs)


def evaluate(qubo: Qubo, bits: Sequence[int]) -> float:
    """Energy of a bit assignment: the sum of coefficients over set index pairs."""
    if len(bits) != qubo.size:
        raise LengthMismatch(qubo.size, len(bits))
    return float(sum(c for (i, j), c in qubo.coeffs.items() if bits[i] and bits[j]))


def encode_tour(order: Sequence[int]) -> list[int]:
    """Bit assignment with the variable of (order[p], p) set for each position p."""
    n = len(order)
    bits = [0] * (n * n)
    for p, node in enumerate(order):
        bits[node * n + p] = 1
    return bits


def decode_tour(
    bits: Sequence[int],
    n: int,
    distances: DistanceMatrix | None = None,
) -> Tour | None:
    """Read a tour out of a bit assignment, or None if any one-hot constraint fails."""
    if len(bits) != n * n:
        raise LengthMismatch(n * n, len(bits))
    order: list[int] = [-1] * n
    for node in range(n):
        if sum(bits[node * n : (node + 1) * n]) != 1:
            return None
    for p in range(n):
        column = [node for node in range(n) if bits[node * n + p]]
        if len(column) != 1:
            return None
        order[p] = column[0]
    return Tour(order=tuple(order), cost=tour_cost(order, distances))


def brute_force_tsp(instance: ProblemInstance) -> Tour:
    """Exact minimum-cost tour by enumerating permutations with node 0 fixed first.

    Ties go to the lexicographically smallest order. Bounded at
    ``BRUTE_FORCE_LIMIT`` nodes.
    """
    n = instance.n
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(n, BRUTE_FORCE_LIMIT)
    best_order: tuple[int, ...] | None = None
    best_cost = math.inf
    for rest in itertools.permutations(range(1, n)):
        order = (0,) + rest
        cost = tour_cost(order, instance.distances)
        if best_order is None or cost < best_cost:
            best_order, best_cost = order, cost
    assert best_order is not None
    return Tour(order=best_order, cost=best_cost)


def sample(
    qubo: Qubo,
    seed: int,
    sweeps: int = 1000,
    restarts: int = 10,
    *,
    instance: ProblemInstance | None = None,
) -> SampleResult:
    """Best sample found by restarted single-flip simulated annealing.

    Deterministic for a fixed seed: each restart runs on its own RNG stream
    derived from ``(seed, restart)``, and ties between restarts go to the
    lower restart index. Temperatures follow a geometric schedule from
    ``10 * max|coefficient|`` down to 0.01. When ``instance`` is given and its
    variable grid matches the QUBO, the best bits are decoded into a tour.
    """
    if sweeps < 1 or restarts < 1:
        raise ValueError("sweeps and restarts must be >= 1")

    linear = [0.0] * qubo.size
    neighbors: list[list[tuple[int, float]]] = [[] for _ in range(qubo.size)]
    max_abs = 0.0
    for (i, j), c in qubo.coeffs.items():
        max_abs = max(max_abs, abs(c))
        if i == j:
            linear[i] += c
        else:
            neighbors[i].append((j, c))
            neighbors[j].append((i, c))

    t_start = 10.0 * max_abs if max_abs > 0 else 1.0
    t_end = 0.01
    if sweeps == 1:
        temps = [t_start]
    else:
        ratio = (t_end / t_start) ** (1.0 / (sweeps - 1))
        temps = [t_start * ratio**k for k in range(sweeps)]

    best_bits: list[int] | None = None
    best_energy = math.inf
    for restart in range(restarts):
        rng = random.Random(f"{seed}:{restart}")
        bits = [rng.randrange(2) for _ in range(qubo.size)]
        for temp in temps:
            for i in range(qubo.size):
                local = linear[i] + sum(c * bits[j] for j, c in neighbors[i])
                delta = local if not bits[i] else -local
                if delta <= 0.0 or rng.random() < math.exp(-delta / temp):
                    bits[i] = 1 - bits[i]
        energy = evaluate(qubo, bits)
        if energy < best_energy:
            best_bits, best_energy = bits, energy

    assert best_bits is not None
    decoded = None
    if instance is not None and instance.n * instance.n == qubo.size:
        decoded = decode_tour(best_bits, instance.n, instance.distances)
    return SampleResult(bits=tuple(best_bits), energy=best_energy, decoded=decoded)


def deviation_pct(candidate: Tour, optimum: Tour) -> float:
    """Relative cost excess of a candidate tour over the optimum, in percent."""
    if optimum.cost == 0:
        raise ZeroOptimum()
    return 100.0 * (candidate.cost - optimum.cost) / optimum.cost
