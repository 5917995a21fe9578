"""Physical-qubit estimation from logical variable counts.

Embedding a fully connected problem onto annealer hardware stretches each
logical variable over a chain of physical qubits. The chain length grows
roughly linearly with the variable count, at a rate set by the hardware
topology; each topology therefore carries a clique divisor ``D`` and the
estimate is ``numVar * (floor((numVar - 1) / D) + 1)``. Hybrid solvers are
gated on the variable count alone and never consult this estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import Catalog, ProblemInstance, default_catalog


@dataclass(frozen=True)
class Topology:
    """A qubit-connectivity graph family with its clique-embedding divisor."""

    name: str
    clique_divisor: int
    description: str = ""

    def __post_init__(self) -> None:
        if self.clique_divisor < 1:
            raise ValueError("clique divisor must be >= 1")


@dataclass(frozen=True)
class ResourceEstimate:
    num_var: int
    num_qubits: int


DEFAULT_TOPOLOGIES: tuple[Topology, ...] = (
    Topology("chimera", 4, "Sparse 4-regular cell layout; chains grow quickly."),
    Topology("pegasus", 12, "Denser successor layout with degree 15."),
    Topology("zephyr", 16, "Highest-connectivity layout currently shipped."),
)


def estimate_qubits(num_var: int, topology: Topology) -> int:
    """Physical qubits needed to embed ``num_var`` logical variables."""
    if num_var < 1:
        raise ValueError("variable count must be >= 1")
    chain_len = (num_var - 1) // topology.clique_divisor + 1
    return num_var * chain_len


def estimate(
    instance: ProblemInstance,
    topology: Topology,
    catalog: Catalog | None = None,
) -> ResourceEstimate:
    """Resource estimate for one instance on one topology."""
    if catalog is None:
        catalog = default_catalog()
    num_var = catalog.variable_count(instance)
    return ResourceEstimate(num_var=num_var, num_qubits=estimate_qubits(num_var, topology))
