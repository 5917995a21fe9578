"""Solver recommendation for quantum annealing hardware.

Estimates QUBO resource needs for an optimization problem, filters a solver
catalog by capacity, and ranks the survivors by recorded benchmark quality,
with exact classical oracles for desk-scale validation.
"""

from .advisor import (
    BenchmarkRow,
    BenchmarkSet,
    RankedSolver,
    Recommendation,
    Solver,
    recommend,
)
from .catalog import (
    Catalog,
    ParamSpec,
    ProblemClass,
    ProblemDescriptor,
    ProblemInstance,
    default_catalog,
)
from .errors import (
    AdviserError,
    DuplicateId,
    InvalidInstance,
    LengthMismatch,
    NoCandidates,
    NoFormula,
    ProviderUnavailable,
    SchemaError,
    TooLarge,
    UnknownClass,
    UnknownTopology,
    UnsortedBenchmark,
    ZeroOptimum,
)
from .estimator import DEFAULT_TOPOLOGIES, ResourceEstimate, Topology, estimate, estimate_qubits
from .qubo import (
    Qubo,
    SampleResult,
    Tour,
    brute_force_tsp,
    build_tsp_qubo,
    decode_tour,
    deviation_pct,
    encode_tour,
    evaluate,
    sample,
    tour_cost,
)
from .registry import (
    FilePriceProvider,
    PriceEntry,
    Registry,
    RegistrySnapshot,
    dump_snapshot,
    fetch_prices,
    load_dir,
    load_snapshot,
)
from .service import create_app, dump_json

__version__ = "0.1.0"

__all__ = [
    "AdviserError",
    "BenchmarkRow",
    "BenchmarkSet",
    "Catalog",
    "DEFAULT_TOPOLOGIES",
    "DuplicateId",
    "FilePriceProvider",
    "InvalidInstance",
    "LengthMismatch",
    "NoCandidates",
    "NoFormula",
    "ParamSpec",
    "PriceEntry",
    "ProblemClass",
    "ProblemDescriptor",
    "ProblemInstance",
    "ProviderUnavailable",
    "Qubo",
    "RankedSolver",
    "Recommendation",
    "Registry",
    "RegistrySnapshot",
    "ResourceEstimate",
    "SampleResult",
    "SchemaError",
    "Solver",
    "TooLarge",
    "Topology",
    "Tour",
    "UnknownClass",
    "UnknownTopology",
    "UnsortedBenchmark",
    "ZeroOptimum",
    "brute_force_tsp",
    "build_tsp_qubo",
    "create_app",
    "decode_tour",
    "default_catalog",
    "deviation_pct",
    "dump_json",
    "dump_snapshot",
    "encode_tour",
    "estimate",
    "estimate_qubits",
    "evaluate",
    "fetch_prices",
    "load_dir",
    "load_snapshot",
    "recommend",
    "sample",
    "tour_cost",
]
