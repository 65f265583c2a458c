from multiqida.hamcore.fcidump import load_fcidump, parse_fcidump, write_fcidump
from multiqida.hamcore.fermion import (
    LadderKind,
    Spin,
    excitation_operator,
    jw_ladder,
    number_operator,
    spin_orbital,
    total_number_operator,
)
from multiqida.hamcore.integrals import (
    MolecularIntegrals,
    build_qubit_hamiltonian,
    hf_bitstring,
    neel_bitstring,
)
from multiqida.hamcore.lattice import LatticeTopology, heisenberg_hamiltonian, lattice_edges
from multiqida.hamcore.pauli import (
    PauliString,
    PauliSum,
    pauli_add,
    pauli_multiply,
    pauli_simplify,
)

__all__ = [
    "LadderKind",
    "LatticeTopology",
    "MolecularIntegrals",
    "PauliString",
    "PauliSum",
    "Spin",
    "build_qubit_hamiltonian",
    "excitation_operator",
    "heisenberg_hamiltonian",
    "hf_bitstring",
    "jw_ladder",
    "lattice_edges",
    "load_fcidump",
    "neel_bitstring",
    "number_operator",
    "parse_fcidump",
    "pauli_add",
    "pauli_multiply",
    "pauli_simplify",
    "spin_orbital",
    "total_number_operator",
    "write_fcidump",
]
