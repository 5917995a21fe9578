"""Command-line interface: recommend, evaluate, serve.

Exit codes: 0 success, 1 failed evaluation verdict, 2 configuration errors
(bad arguments, unreadable registry, unknown problems or solvers).
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from pathlib import Path

from .advisor import RankedSolver, Recommendation, recommend
from .catalog import Catalog, ProblemInstance, default_catalog
from .errors import AdviserError, NoCandidates
from .qubo import brute_force_tsp, build_tsp_qubo, deviation_pct, sample
from .registry import Registry, RegistrySnapshot, load_dir
from .service import (
    DEFAULT_PORT,
    PORT_ENV,
    REGISTRY_ENV,
    create_app,
    dump_json,
    no_candidates_payload,
    recommend_payload,
)

EVALUATE_MIN_NODES = 3
EVALUATE_MAX_NODES = 8
EVALUATE_RESTARTS = 10

_RANK_WORDS = {"top": 1, "second": 2, "third": 3}


class ConfigError(Exception):
    """CLI-level misconfiguration; maps to exit code 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcadviser",
        description="Recommend quantum annealing solvers for optimization problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recommend", help="estimate resources and rank solvers")
    rec.add_argument("--problem", required=True, help="problem id, e.g. tsp")
    rec.add_argument("--nodes", type=int, required=True, help="problem size (node count)")
    rec.add_argument("--registry", help=f"registry directory (default: ${REGISTRY_ENV})")
    rec.add_argument("--json", action="store_true",
                     help="print the JSON payload served by POST /api/recommend")

    ev = sub.add_parser("evaluate", help="compare ranked solvers against the exact optimum")
    ev.add_argument("--problem", required=True, help="problem id (tsp only)")
    ev.add_argument("--nodes", type=int, required=True,
                    help=f"node count, {EVALUATE_MIN_NODES}..{EVALUATE_MAX_NODES}")
    ev.add_argument("--seed", type=int, default=0, help="seed for instance and annealer")
    ev.add_argument("--solvers",
                    help="comma-separated ranks (top, second, third, or numbers) "
                         "or solver ids; default: all ranked")
    ev.add_argument("--sweeps", type=int, default=1000,
                    help="annealing sweep budget for a solver with quality 100")
    ev.add_argument("--registry", help=f"registry directory (default: ${REGISTRY_ENV})")

    srv = sub.add_parser("serve", help="run the HTTP API")
    srv.add_argument("--registry", help=f"registry directory (default: ${REGISTRY_ENV})")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=None,
                     help=f"listen port (default: ${PORT_ENV} or {DEFAULT_PORT})")
    srv.add_argument("--cors-origin", action="append", dest="cors_origins",
                     help="allowed CORS origin; repeatable (default: *)")
    return parser


def _registry_dir(arg: str | None) -> Path:
    value = arg or os.environ.get(REGISTRY_ENV)
    if not value:
        raise ConfigError(f"no registry directory: pass --registry or set ${REGISTRY_ENV}")
    return Path(value)


def _load_registry(arg: str | None) -> tuple[RegistrySnapshot, Catalog, Path]:
    directory = _registry_dir(arg)
    snapshot = load_dir(directory)
    catalog = default_catalog()
    extension = directory / "problems.json"
    if extension.is_file():
        catalog.merge_file(extension)
    return snapshot, catalog, directory


def _print_recommendation(instance: ProblemInstance, rec: Recommendation) -> None:
    print(f"problem {instance.problem_id}, n={instance.n}")
    print(f"variables needed (numVar): {rec.estimate.num_var}")
    per_topology = " ".join(f"{name}={q}" for name, q in rec.qubits_by_topology.items())
    print(f"estimated qubits by topology: {per_topology}")
    print(f"sort mode: {rec.sort_mode}")
    print()
    header = f"{'rank':<5} {'solver':<28} {'kind':<7} {'maxQubits':>9} {'maxVariables':>12} {'quality':>7}"
    print(header)
    print("-" * len(header))
    for entry in rec.ranked:
        s = entry.solver
        quality = str(entry.solution_quality) if entry.solution_quality is not None else "-"
        print(f"{entry.rank:<5} {s.name:<28} {s.kind:<7} {s.max_qubits:>9} "
              f"{s.max_variables:>12} {quality:>7}")


def _cmd_recommend(args: argparse.Namespace) -> int:
    snapshot, catalog, _ = _load_registry(args.registry)
    if catalog.find_problem(args.problem) is None:
        raise ConfigError(f"unknown problem {args.problem!r}")
    instance = ProblemInstance(problem_id=args.problem, n=args.nodes)
    try:
        recommendation = recommend(instance, snapshot, catalog)
    except NoCandidates as exc:
        if args.json:
            print(dump_json(no_candidates_payload(exc)))
        else:
            print(f"problem {instance.problem_id}, n={instance.n}")
            print(f"variables needed (numVar): {exc.num_var}")
            print("no suitable solver: every candidate was filtered out by capacity")
        return 0
    if args.json:
        print(dump_json(recommend_payload(recommendation)))
    else:
        _print_recommendation(instance, recommendation)
    return 0


def random_distances(n: int, seed: int) -> list[list[float]]:
    """Symmetric integer distance matrix in 1..10, reproducible from the seed."""
    rng = random.Random(seed)
    matrix = [[0.0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            matrix[u][v] = matrix[v][u] = float(rng.randint(1, 10))
    return matrix


def _select_ranked(recommendation: Recommendation, selector: str | None) -> list[RankedSolver]:
    ranked = list(recommendation.ranked)
    if selector is None:
        return ranked
    by_rank = {entry.rank: entry for entry in ranked}
    by_id = {entry.solver.id: entry for entry in ranked}
    selected: list[RankedSolver] = []
    for token in selector.split(","):
        token = token.strip()
        if not token:
            continue
        rank = _RANK_WORDS.get(token.lower())
        if rank is None and token.isdigit():
            rank = int(token)
        entry = by_rank.get(rank) if rank is not None else by_id.get(token)
        if entry is None:
            raise ConfigError(f"no ranked solver matches {token!r}")
        if entry not in selected:
            selected.append(entry)
    if not selected:
        raise ConfigError("no solvers selected")
    return sorted(selected, key=lambda entry: entry.rank)


def _cmd_evaluate(args: argparse.Namespace) -> int:
    if args.problem != "tsp":
        raise ConfigError("evaluation supports only the tsp problem")
    if not EVALUATE_MIN_NODES <= args.nodes <= EVALUATE_MAX_NODES:
        raise ConfigError(
            f"--nodes must be within {EVALUATE_MIN_NODES}..{EVALUATE_MAX_NODES} "
            "so the exact optimum stays computable"
        )
    if args.sweeps < 1:
        raise ConfigError("--sweeps must be >= 1")
    snapshot, catalog, _ = _load_registry(args.registry)
    instance = ProblemInstance(
        problem_id="tsp",
        n=args.nodes,
        distances=random_distances(args.nodes, args.seed),
    )
    try:
        recommendation = recommend(instance, snapshot, catalog)
    except NoCandidates:
        raise ConfigError("no candidate solvers to evaluate against this registry")
    selected = _select_ranked(recommendation, args.solvers)

    optimum = brute_force_tsp(instance)
    order = "-".join(str(v) for v in optimum.order)
    print(f"instance: tsp n={args.nodes} seed={args.seed}")
    print(f"exact optimum: cost {optimum.cost:g} (tour {order})")
    qubo = build_tsp_qubo(instance)

    deviations: list[float] = []
    for entry in selected:
        quality = entry.solution_quality if entry.solution_quality is not None else 100
        sweeps = max(1, round(args.sweeps * quality / 100))
        result = sample(qubo, seed=args.seed, sweeps=sweeps,
                        restarts=EVALUATE_RESTARTS, instance=instance)
        if result.decoded is None:
            deviations.append(math.inf)
            print(f"rank {entry.rank}  {entry.solver.name}: quality {quality}, "
                  f"sweeps {sweeps}, no valid tour found")
            continue
        deviation = deviation_pct(result.decoded, optimum)
        deviations.append(deviation)
        print(f"rank {entry.rank}  {entry.solver.name}: quality {quality}, "
              f"sweeps {sweeps}, cost {result.decoded.cost:g}, "
              f"deviation {deviation:.2f}%")

    if len(selected) < 2:
        return 0
    monotone = all(a <= b or (math.isinf(a) and math.isinf(b))
                   for a, b in zip(deviations, deviations[1:]))
    print(f"verdict: {'PASS' if monotone else 'FAIL'}")
    return 0 if monotone else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    directory = _registry_dir(args.registry)
    registry = Registry.from_dir(directory)
    catalog = default_catalog()
    extension = directory / "problems.json"
    if extension.is_file():
        catalog.merge_file(extension)
    port = args.port
    if port is None:
        port = int(os.environ.get(PORT_ENV, DEFAULT_PORT))
    origins = tuple(args.cors_origins) if args.cors_origins else ("*",)
    app = create_app(registry, catalog, cors_origins=origins)
    uvicorn.run(app, host=args.host, port=port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "recommend":
            return _cmd_recommend(args)
        if args.command == "evaluate":
            return _cmd_evaluate(args)
        return _cmd_serve(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AdviserError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
