import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_matrix
from oracles import (
    enumerate_tsp_qubo,
    exhaustive_qubo_min,
    exhaustive_tsp,
)
from qcadviser import (
    InvalidInstance,
    LengthMismatch,
    ProblemInstance,
    Qubo,
    TooLarge,
    Tour,
    ZeroOptimum,
    brute_force_tsp,
    build_tsp_qubo,
    decode_tour,
    deviation_pct,
    encode_tour,
    evaluate,
    sample,
    tour_cost,
)
from qcadviser.qubo import default_penalty_weight, tour_energy_offset

M4 = [[0, 1, 2, 3], [1, 0, 4, 5], [2, 4, 0, 6], [3, 5, 6, 0]]


def test_qubo_rejects_lower_triangle():
    with pytest.raises(ValueError):
        Qubo(size=2, coeffs={(1, 0): 1.0})


def test_build_requires_tsp():
    with pytest.raises(InvalidInstance):
        build_tsp_qubo(ProblemInstance(problem_id="vrp", n=3))


def test_build_rejects_nonpositive_penalties():
    instance = ProblemInstance(problem_id="tsp", n=3)
    with pytest.raises(ValueError):
        build_tsp_qubo(instance, c1=0.0)
    with pytest.raises(ValueError):
        build_tsp_qubo(instance, c2=-1.0)


def test_build_n3_unit_minimum_is_a_tour():
    instance = ProblemInstance(problem_id="tsp", n=3)
    qubo = build_tsp_qubo(instance, c1=10.0, c2=1.0)
    assert qubo.size == 9
    min_energy, bits = exhaustive_qubo_min(qubo)
    tour = decode_tour(list(bits), 3)
    assert tour is not None
    assert tour.cost == 3.0
    assert min_energy == tour_energy_offset(3, 10.0) + 3.0


def test_build_n2_minimum_is_the_only_tour():
    instance = ProblemInstance(problem_id="tsp", n=2)
    qubo = build_tsp_qubo(instance)
    assert qubo.size == 4
    _, bits = exhaustive_qubo_min(qubo)
    tour = decode_tour(list(bits), 2)
    # both rotations encode the single 2-node cycle
    assert tour is not None
    assert sorted(tour.order) == [0, 1]
    assert tour.cost == 2.0


def test_build_n4_matrix_minimum_matches_brute_force():
    instance = ProblemInstance(problem_id="tsp", n=4, distances=M4)
    qubo = build_tsp_qubo(instance, c1=2.0 * 4 * 6, c2=1.0)
    result = enumerate_tsp_qubo(qubo, 4)
    best = brute_force_tsp(instance)
    decoded = decode_tour(list(result.argmin_bits), 4, M4)
    assert decoded is not None
    assert decoded.cost == best.cost
    assert result.min_energy == tour_energy_offset(4, 48.0) + best.cost


def test_missing_edges_are_penalized():
    # Edge 0-1 absent: the only usable undirected triangle tour would need it,
    # so every assignment crossing it pays the constraint weight.
    distances = [[0, math.inf, 1], [math.inf, 0, 1], [1, 1, 0]]
    instance = ProblemInstance(problem_id="tsp", n=3, distances=distances)
    qubo = build_tsp_qubo(instance)
    c1 = default_penalty_weight(instance)
    min_energy, bits = exhaustive_qubo_min(qubo)
    # n=3 has a single undirected tour and it uses the missing edge, so even
    # the best assignment carries at least one missing-edge penalty.
    assert min_energy >= tour_energy_offset(3, c1) + c1


def test_brute_force_unit_n4():
    tour = brute_force_tsp(ProblemInstance(problem_id="tsp", n=4))
    assert tour.cost == 4.0
    assert tuple(tour.order) == (0, 1, 2, 3)


def test_brute_force_n3_single_tour():
    matrix = random_matrix(3, seed="n3")
    tour = brute_force_tsp(ProblemInstance(problem_id="tsp", n=3, distances=matrix))
    assert tuple(tour.order) == (0, 1, 2)
    assert tour.cost == matrix[0][1] + matrix[1][2] + matrix[2][0]


def test_brute_force_matches_permutation_oracle():
    matrix = random_matrix(5, seed="bf5")
    tour = brute_force_tsp(ProblemInstance(problem_id="tsp", n=5, distances=matrix))
    best_cost, best_order = exhaustive_tsp(matrix)
    assert tour.cost == best_cost
    assert tuple(tour.order) == best_order


def test_brute_force_size_limit():
    with pytest.raises(TooLarge) as info:
        brute_force_tsp(ProblemInstance(problem_id="tsp", n=11))
    assert info.value.n == 11
    assert info.value.limit == 10


def test_evaluate_zero_bits_is_zero():
    qubo = build_tsp_qubo(ProblemInstance(problem_id="tsp", n=3))
    assert evaluate(qubo, [0] * 9) == 0.0


def test_evaluate_single_coefficient():
    assert evaluate(Qubo(size=1, coeffs={(0, 0): 2.5}), [1]) == 2.5


def test_evaluate_length_mismatch():
    qubo = Qubo(size=2, coeffs={})
    with pytest.raises(LengthMismatch) as info:
        evaluate(qubo, [1])
    assert (info.value.expected, info.value.got) == (2, 1)


def test_valid_tour_energy_is_cost_plus_constant_offset():
    matrix = random_matrix(3, seed="offset")
    instance = ProblemInstance(problem_id="tsp", n=3, distances=matrix)
    c1 = default_penalty_weight(instance)
    qubo = build_tsp_qubo(instance)
    offset = tour_energy_offset(3, c1)
    import itertools

    for order in itertools.permutations(range(3)):
        bits = encode_tour(list(order))
        cost = tour_cost(list(order), matrix)
        assert evaluate(qubo, bits) == cost + offset


@given(st.integers(min_value=2, max_value=8), st.randoms(use_true_random=False))
def test_decode_inverts_encode(n, rng):
    order = list(range(n))
    rng.shuffle(order)
    tour = decode_tour(encode_tour(order), n)
    assert tour is not None
    assert list(tour.order) == order


def test_decode_all_zero_is_none():
    assert decode_tour([0] * 9, 3) is None


def test_decode_duplicate_position_is_none():
    # nodes 0 and 1 both claim position 0
    bits = [0] * 9
    bits[0] = 1
    bits[3] = 1
    bits[8] = 1
    assert decode_tour(bits, 3) is None


def test_decode_identity_assignment():
    bits = [1 if v == p else 0 for v in range(4) for p in range(4)]
    tour = decode_tour(bits, 4)
    assert tour is not None
    assert tuple(tour.order) == (0, 1, 2, 3)


def test_decode_length_mismatch():
    with pytest.raises(LengthMismatch):
        decode_tour([0, 1], 3)


def test_sample_reaches_exhaustive_minimum():
    qubo = build_tsp_qubo(ProblemInstance(problem_id="tsp", n=3), c1=10.0, c2=1.0)
    result = sample(qubo, seed=42, sweeps=1000, restarts=20)
    min_energy, _ = exhaustive_qubo_min(qubo)
    assert result.energy == min_energy


def test_sample_is_deterministic():
    qubo = build_tsp_qubo(ProblemInstance(problem_id="tsp", n=4, distances=M4))
    first = sample(qubo, seed=9, sweeps=200, restarts=5)
    second = sample(qubo, seed=9, sweeps=200, restarts=5)
    assert first == second


def test_sample_zero_coefficients():
    assert sample(Qubo(size=6, coeffs={}), seed=1, sweeps=10, restarts=2).energy == 0.0


def test_sample_validates_budgets():
    qubo = Qubo(size=2, coeffs={})
    with pytest.raises(ValueError):
        sample(qubo, seed=1, sweeps=0)
    with pytest.raises(ValueError):
        sample(qubo, seed=1, restarts=0)


def test_sample_energy_consistent_with_evaluate():
    qubo = build_tsp_qubo(ProblemInstance(problem_id="tsp", n=4, distances=M4))
    result = sample(qubo, seed=3, sweeps=300, restarts=5)
    assert result.energy == evaluate(qubo, list(result.bits))


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_sampled_tours_never_beat_brute_force(seed):
    matrix = random_matrix(5, seed=("sa", seed))
    instance = ProblemInstance(problem_id="tsp", n=5, distances=matrix)
    qubo = build_tsp_qubo(instance)
    result = sample(qubo, seed=seed, sweeps=400, restarts=6, instance=instance)
    best = brute_force_tsp(instance)
    if result.decoded is not None:
        assert best.cost <= result.decoded.cost


def test_deviation_zero_for_equal_tours():
    tour = Tour(order=(0, 1, 2), cost=10.0)
    assert deviation_pct(tour, tour) == 0.0


def test_deviation_arithmetic():
    optimum = Tour(order=(0, 1, 2), cost=10.0)
    candidate = Tour(order=(0, 2, 1), cost=12.0)
    assert deviation_pct(candidate, optimum) == 20.0


def test_deviation_zero_optimum_guard():
    optimum = Tour(order=(0, 1), cost=0.0)
    with pytest.raises(ZeroOptimum):
        deviation_pct(Tour(order=(0, 1), cost=1.0), optimum)


@settings(deadline=None, max_examples=15)
@given(st.integers(min_value=0, max_value=10_000))
def test_penalty_soundness_n3(seed):
    matrix = random_matrix(3, seed=("soundness", seed))
    instance = ProblemInstance(problem_id="tsp", n=3, distances=matrix)
    qubo = build_tsp_qubo(instance)
    result = enumerate_tsp_qubo(qubo, 3)
    assert result.valid_count == 6
    assert result.max_valid < result.min_invalid
    best_cost, _ = exhaustive_tsp(matrix)
    c1 = default_penalty_weight(instance)
    assert result.min_valid == tour_energy_offset(3, c1) + best_cost
