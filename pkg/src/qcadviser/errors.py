"""Exception types shared across the adviser packages."""

from __future__ import annotations


class AdviserError(Exception):
    """Base class for all domain errors raised by this package."""


class UnknownClass(AdviserError):
    def __init__(self, class_id: str):
        super().__init__(f"unknown problem class: {class_id!r}")
        self.class_id = class_id


class NoFormula(AdviserError):
    def __init__(self, problem_id: str):
        super().__init__(f"no variable-count formula registered for problem {problem_id!r}")
        self.problem_id = problem_id


class InvalidInstance(AdviserError):
    """The problem instance violates its own constraints."""


class TooLarge(AdviserError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"instance with n={n} exceeds the enumeration bound of {limit} nodes")
        self.n = n
        self.limit = limit


class LengthMismatch(AdviserError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"expected a bit vector of length {expected}, got {got}")
        self.expected = expected
        self.got = got


class ZeroOptimum(AdviserError):
    def __init__(self) -> None:
        super().__init__("relative deviation is undefined for an optimum of cost 0")


class UnknownTopology(AdviserError):
    def __init__(self, solver_id: str, topology_name: str):
        super().__init__(
            f"solver {solver_id!r} references unknown topology {topology_name!r}"
        )
        self.solver_id = solver_id
        self.topology_name = topology_name


class NoCandidates(AdviserError):
    """Filtering removed every solver; the problem fits none of them.

    Carries the resource numbers computed before filtering so callers can
    still report them.
    """

    def __init__(self, num_var: int, qubits_by_topology: dict[str, int]):
        super().__init__("no solver in the registry can accommodate this instance")
        self.num_var = num_var
        self.qubits_by_topology = dict(qubits_by_topology)


class SchemaError(AdviserError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class DuplicateId(AdviserError):
    def __init__(self, kind: str, value: str):
        super().__init__(f"duplicate {kind} id: {value!r}")
        self.kind = kind
        self.value = value


class UnsortedBenchmark(AdviserError):
    def __init__(self, problem_id: str, row_index: int):
        super().__init__(
            f"benchmark rows for {problem_id!r} are not ascending by main parameter "
            f"(first violation at row {row_index})"
        )
        self.problem_id = problem_id
        self.row_index = row_index


class ProviderUnavailable(AdviserError):
    """The price provider could not be reached; prior data stays valid."""
