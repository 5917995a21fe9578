from __future__ import annotations

import random
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN_REGISTRY = FIXTURES / "golden_registry"
GOLDEN_RECOMMEND = FIXTURES / "golden_recommend.json"


def random_matrix(n: int, seed: object, lo: int = 1, hi: int = 10) -> list[list[float]]:
    """Symmetric integer distance matrix; integer entries keep float sums exact."""
    rng = random.Random(str(seed))
    matrix = [[0.0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            matrix[u][v] = matrix[v][u] = float(rng.randint(lo, hi))
    return matrix


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_REGISTRY


@pytest.fixture
def golden_snapshot():
    from qcadviser import load_dir

    return load_dir(GOLDEN_REGISTRY)
