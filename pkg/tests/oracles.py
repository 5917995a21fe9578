"""Independent oracles for property and acceptance tests.

Everything here recomputes expected results from first principles, using
different mechanisms than the package (full-permutation scans, exhaustive
assignment enumeration), so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


def cycle_cost(order: Sequence[int], distances: Sequence[Sequence[float]]) -> float:
    total = 0.0
    for k in range(len(order)):
        total += distances[order[k]][order[(k + 1) % len(order)]]
    return total


def exhaustive_tsp(distances: Sequence[Sequence[float]]) -> tuple[float, tuple[int, ...]]:
    """Scan all n! visiting orders; return the best cost and, among orders
    that start at node 0 and attain it, the lexicographically smallest."""
    n = len(distances)
    best_cost = min(
        cycle_cost(order, distances)
        for order in itertools.permutations(range(n))
    )
    best_order = min(
        (0,) + rest
        for rest in itertools.permutations(range(1, n))
        if cycle_cost((0,) + rest, distances) == best_cost
    )
    return best_cost, best_order


def qubo_upper(qubo) -> np.ndarray:
    """Dense upper-triangular coefficient matrix (diagonal = linear terms)."""
    upper = np.zeros((qubo.size, qubo.size))
    for (i, j), c in qubo.coeffs.items():
        upper[i, j] += c
    return upper


def exhaustive_qubo_min(qubo) -> tuple[float, tuple[int, ...]]:
    """Pure-Python scan of all assignments; first-found argmin on ties.

    Kept independent of the numpy route below so the two enumeration
    oracles can cross-check each other on small sizes.
    """
    items = sorted(qubo.coeffs.items())
    best_energy = None
    best_bits = None
    for bits in itertools.product((0, 1), repeat=qubo.size):
        energy = sum(c for (i, j), c in items if bits[i] and bits[j])
        if best_energy is None or energy < best_energy:
            best_energy, best_bits = energy, bits
    return float(best_energy), best_bits


@dataclass(frozen=True)
class EnumerationResult:
    """Summary of a full 2^size sweep of one TSP QUBO."""

    min_energy: float
    argmin_bits: tuple[int, ...]
    min_valid: float
    max_valid: float
    min_invalid: float
    valid_count: int


def _patterns(width: int) -> np.ndarray:
    """All binary patterns of the given width, one per row, bit k in column k."""
    count = 1 << width
    indices = np.arange(count, dtype=np.int64)
    return ((indices[:, None] >> np.arange(width)) & 1).astype(np.float64)


def enumerate_tsp_qubo(qubo, n: int, block: int = 1024) -> EnumerationResult:
    """Evaluate every assignment of an n-node TSP QUBO.

    The assignment space is split into low and high bit halves so energies
    come from three vectorized pieces: two per-half quadratic forms and one
    cross-term matrix product. Validity (every row and column of the n by n
    bit grid summing to one) is tested through base-6 digit keys: per-half
    row and column sums become digits, and a pair of halves is a permutation
    grid exactly when the keys add up to the all-ones target. Digit sums
    never reach 6 for n <= 5, so plain integer addition cannot carry.

    Exactness: with integer coefficients all energies are integers far below
    2^53, so float64 arithmetic introduces no rounding anywhere.
    """
    if n > 5:
        raise ValueError("enumeration oracle is sized for n <= 5")
    size = qubo.size
    assert size == n * n
    upper = qubo_upper(qubo)

    low = min(12, size)
    high = size - low
    low_patterns = _patterns(low)
    high_patterns = _patterns(high)

    e_low = np.einsum("ni,ij,nj->n", low_patterns, upper[:low, :low], low_patterns)
    e_high = np.einsum("ni,ij,nj->n", high_patterns, upper[low:, low:], high_patterns)
    cross = upper[:low, low:]
    low_cross = low_patterns @ cross

    # Base-6 key: variable v*n+p contributes to row digit v and column digit n+p.
    weights = np.array(
        [6 ** (k // n) + 6 ** (n + k % n) for k in range(size)], dtype=np.int64
    )
    key_low = (low_patterns.astype(np.int64) @ weights[:low]).astype(np.int64)
    key_high = (high_patterns.astype(np.int64) @ weights[low:]).astype(np.int64)
    target = int(sum(6**d for d in range(2 * n)))

    min_energy = np.inf
    argmin_flat = -1
    min_valid = np.inf
    max_valid = -np.inf
    min_invalid = np.inf
    valid_count = 0
    for start in range(0, len(high_patterns), block):
        stop = min(start + block, len(high_patterns))
        energies = (
            e_high[start:stop, None]
            + e_low[None, :]
            + high_patterns[start:stop] @ low_cross.T
        )
        valid = key_high[start:stop, None] + key_low[None, :] == target
        valid_count += int(valid.sum())

        block_min = energies.min()
        if block_min < min_energy:
            min_energy = float(block_min)
            local = int(energies.argmin())
            argmin_flat = (start + local // len(low_patterns)) * len(low_patterns) + (
                local % len(low_patterns)
            )
        if valid.any():
            min_valid = min(min_valid, float(energies[valid].min()))
            max_valid = max(max_valid, float(energies[valid].max()))
        if not valid.all():
            min_invalid = min(min_invalid, float(energies[~valid].min()))

    high_index, low_index = divmod(argmin_flat, len(low_patterns))
    bits = tuple(
        (low_index >> k) & 1 for k in range(low)
    ) + tuple((high_index >> k) & 1 for k in range(high))
    return EnumerationResult(
        min_energy=min_energy,
        argmin_bits=bits,
        min_valid=min_valid,
        max_valid=max_valid,
        min_invalid=min_invalid,
        valid_count=valid_count,
    )


def nearest_row_oracle(rows: Sequence[int], n: int) -> int | None:
    """Index of the first row whose size is nearest to n, accepted only when
    the relative deviation is at most one tenth, checked in exact rationals."""
    best_index = None
    best_dist = None
    for index, main_param in enumerate(rows):
        dist = abs(main_param - n)
        if best_dist is None or dist < best_dist:
            best_index, best_dist = index, dist
    if best_index is None:
        return None
    if Fraction(best_dist, n) <= Fraction(1, 10):
        return best_index
    return None
