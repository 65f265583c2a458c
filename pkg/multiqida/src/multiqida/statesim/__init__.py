from multiqida.statesim.exact import exact_ground_state, exact_spectrum
from multiqida.statesim.gates import (
    Circuit,
    CircuitBuilder,
    GateKind,
    GateOp,
    magic_basis_gates,
    so4_unitary,
)
from multiqida.statesim.simulator import (
    apply_circuit,
    circuit_unitary,
    dense_matrix,
    expectation,
    pauli_apply,
)
from multiqida.statesim.state import StateVector, basis_state, fidelity, overlap

__all__ = [
    "Circuit",
    "CircuitBuilder",
    "GateKind",
    "GateOp",
    "StateVector",
    "apply_circuit",
    "basis_state",
    "circuit_unitary",
    "dense_matrix",
    "exact_ground_state",
    "exact_spectrum",
    "expectation",
    "fidelity",
    "magic_basis_gates",
    "overlap",
    "pauli_apply",
    "so4_unitary",
]
