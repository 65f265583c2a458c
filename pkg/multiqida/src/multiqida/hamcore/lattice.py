from __future__ import annotations

from enum import Enum

from multiqida.hamcore.pauli import PauliString, PauliSum


class LatticeTopology(str, Enum):
    CHAIN = "chain"
    RING = "ring"


def lattice_edges(n_qubits: int, topology: LatticeTopology | str) -> list[tuple[int, int]]:
    topology = LatticeTopology(topology)
    edges = [(i, i + 1) for i in range(n_qubits - 1)]
    if topology is LatticeTopology.RING and n_qubits > 2:
        edges.append((0, n_qubits - 1))
    return edges


def heisenberg_hamiltonian(
    n_qubits: int, coupling: float, topology: LatticeTopology | str = LatticeTopology.CHAIN
) -> PauliSum:
    """``J * sum_<u,v> (X_u X_v + Y_u Y_v + Z_u Z_v)`` over a chain or ring."""
    if n_qubits < 2:
        raise ValueError("a Heisenberg lattice needs at least two sites")
    terms = []
    for u, v in lattice_edges(n_qubits, topology):
        for letter in "XYZ":
            terms.append((coupling, PauliString.from_ops(n_qubits, {u: letter, v: letter})))
    return PauliSum.from_terms(n_qubits, terms)
