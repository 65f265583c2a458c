from __future__ import annotations

import logging

import numpy as np

from multiqida.errors import NumericalInconsistencyError, QubitCountMismatchError
from multiqida.hamcore.pauli import PauliSum
from multiqida.statesim import kernels
from multiqida.statesim.gates import (
    PAULI_Y,
    Circuit,
    GateKind,
    Primitive,
    ry_matrix,
    so4_unitary,
)
from multiqida.statesim.state import StateVector, basis_indices, basis_state

log = logging.getLogger(__name__)

IMAG_DISCARD_TOL = 1e-10
IMAG_FAIL_TOL = 1e-8


def _apply_rotation(psi: np.ndarray, n: int, kind: GateKind, q: int, theta: float) -> None:
    if kind is GateKind.RZ:
        kernels.apply_diag_1q(psi, n, q, np.exp(-0.5j * theta), np.exp(0.5j * theta))
    else:
        kernels.apply_1q(psi, n, q, ry_matrix(theta))


def _run_gates(psi: np.ndarray, circuit: Circuit, params: np.ndarray) -> None:
    n = circuit.n_qubits
    for op in circuit.gates:
        if op.kind is GateKind.CNOT:
            kernels.apply_cnot(psi, n, op.qubits[0], op.qubits[1])
        elif op.kind is GateKind.SO4:
            kernels.apply_2q(psi, n, op.qubits[0], op.qubits[1], so4_unitary(params[list(op.slots)]))
        else:
            _apply_rotation(psi, n, op.kind, op.qubits[0], params[op.slots[0]])


def apply_circuit(
    circuit: Circuit, params: np.ndarray, *, initial: StateVector | None = None
) -> StateVector:
    """Prepare the circuit state from its reference bitstring, or from ``initial``."""
    theta = circuit.check_params(params)
    if initial is None:
        psi = basis_state(circuit.n_qubits, circuit.reference_bitstring).amplitudes
    else:
        if initial.n_qubits != circuit.n_qubits:
            raise QubitCountMismatchError(circuit.n_qubits, initial.n_qubits, "initial state")
        psi = initial.amplitudes.copy()
    _run_gates(psi, circuit, theta)
    return StateVector(circuit.n_qubits, psi)


def apply_primitive(psi: np.ndarray, n: int, p: Primitive, theta: float, *, inverse: bool = False) -> None:
    if p.kind is GateKind.CNOT:
        kernels.apply_cnot(psi, n, p.qubits[0], p.qubits[1])
        return
    _apply_rotation(psi, n, p.kind, p.qubits[0], -theta if inverse else theta)


def primitive_angle(p: Primitive, params: np.ndarray) -> float:
    return float(params[p.slot]) if p.slot is not None else p.angle


def apply_generator(psi: np.ndarray, n: int, p: Primitive) -> np.ndarray:
    """Return ``P psi`` for the Pauli generator of a rotation primitive."""
    out = psi.copy()
    if p.kind is GateKind.RZ:
        kernels.apply_diag_1q(out, n, p.qubits[0], 1.0, -1.0)
    else:
        kernels.apply_1q(out, n, p.qubits[0], PAULI_Y)
    return out


def pauli_apply(obs: PauliSum, amplitudes: np.ndarray | StateVector) -> np.ndarray:
    """``H |psi>`` through the grouped term table."""
    psi = amplitudes.amplitudes if isinstance(amplitudes, StateVector) else np.asarray(amplitudes)
    if psi.size != 1 << obs.n_qubits:
        raise QubitCountMismatchError(obs.n_qubits, max(psi.size.bit_length() - 1, 0), "state")
    idx = basis_indices(obs.n_qubits)
    out = np.zeros_like(psi, dtype=complex)
    for m, d in obs.grouped:
        out[idx ^ m] += d * psi
    return out


def expectation_complex(amplitudes: np.ndarray, obs: PauliSum) -> complex:
    idx = basis_indices(obs.n_qubits)
    total = 0j
    for m, d in obs.grouped:
        total += np.vdot(amplitudes[idx ^ m], d * amplitudes)
    return complex(total)


def expectation(state: StateVector, obs: PauliSum) -> float:
    if state.n_qubits != obs.n_qubits:
        raise QubitCountMismatchError(obs.n_qubits, state.n_qubits, "state")
    value = expectation_complex(state.amplitudes, obs)
    if abs(value.imag) > IMAG_FAIL_TOL:
        raise NumericalInconsistencyError(
            f"expectation has imaginary part {value.imag:.3e}; observable is not Hermitian"
        )
    if abs(value.imag) > IMAG_DISCARD_TOL:
        log.warning("expectation imaginary residue=%s discarded", value.imag)
    return float(value.real)


def dense_matrix(obs: PauliSum) -> np.ndarray:
    return obs.to_dense()


def circuit_unitary(circuit: Circuit, params: np.ndarray) -> np.ndarray:
    """Full ``2**n`` matrix of the gate sequence (reference state ignored)."""
    theta = circuit.check_params(params)
    dim = 1 << circuit.n_qubits
    out = np.empty((dim, dim), dtype=complex)
    for k in range(dim):
        col = np.zeros(dim, dtype=complex)
        col[k] = 1.0
        _run_gates(col, circuit, theta)
        out[:, k] = col
    return out
