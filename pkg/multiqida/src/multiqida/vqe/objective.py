"""Energy and its analytic gradient.

The gradient is a reverse sweep over the expanded primitive sequence: with
``lambda = H psi`` carried backwards, a rotation ``exp(-i t P / 2)`` contributes
``Im <lambda|P psi>`` to its slot.
"""

from __future__ import annotations

import numpy as np

from multiqida.errors import NumericalInconsistencyError, QubitCountMismatchError
from multiqida.hamcore.pauli import PauliSum
from multiqida.statesim.gates import Circuit
from multiqida.statesim.simulator import (
    IMAG_FAIL_TOL,
    apply_circuit,
    apply_generator,
    apply_primitive,
    expectation,
    pauli_apply,
    primitive_angle,
)
from multiqida.statesim.state import StateVector, basis_state


def _start(circuit: Circuit, hamiltonian: PauliSum, initial: StateVector | None) -> np.ndarray:
    if hamiltonian.n_qubits != circuit.n_qubits:
        raise QubitCountMismatchError(circuit.n_qubits, hamiltonian.n_qubits, "Hamiltonian")
    if initial is None:
        return basis_state(circuit.n_qubits, circuit.reference_bitstring).amplitudes
    if initial.n_qubits != circuit.n_qubits:
        raise QubitCountMismatchError(circuit.n_qubits, initial.n_qubits, "initial state")
    return initial.amplitudes.copy()


def energy(
    circuit: Circuit,
    params: np.ndarray,
    hamiltonian: PauliSum,
    *,
    initial: StateVector | None = None,
) -> float:
    return expectation(apply_circuit(circuit, params, initial=initial), hamiltonian)


def energy_and_gradient(
    circuit: Circuit,
    params: np.ndarray,
    hamiltonian: PauliSum,
    *,
    initial: StateVector | None = None,
) -> tuple[float, np.ndarray]:
    theta = circuit.check_params(params)
    n = circuit.n_qubits
    psi = _start(circuit, hamiltonian, initial)
    prims = circuit.primitives()
    for p in prims:
        apply_primitive(psi, n, p, primitive_angle(p, theta))

    lam = pauli_apply(hamiltonian, psi)
    value = complex(np.vdot(psi, lam))
    if abs(value.imag) > IMAG_FAIL_TOL:
        raise NumericalInconsistencyError(f"energy has imaginary part {value.imag:.3e}")

    grad = np.zeros(circuit.n_parameters)
    for p in reversed(prims):
        angle = primitive_angle(p, theta)
        if p.slot is not None:
            grad[p.slot] += float(np.vdot(lam, apply_generator(psi, n, p)).imag)
        apply_primitive(psi, n, p, angle, inverse=True)
        apply_primitive(lam, n, p, angle, inverse=True)
    return float(value.real), grad


def gradient(
    circuit: Circuit,
    params: np.ndarray,
    hamiltonian: PauliSum,
    *,
    initial: StateVector | None = None,
) -> np.ndarray:
    return energy_and_gradient(circuit, params, hamiltonian, initial=initial)[1]


def finite_difference_gradient(
    circuit: Circuit,
    params: np.ndarray,
    hamiltonian: PauliSum,
    step: float = 1e-5,
    *,
    initial: StateVector | None = None,
) -> np.ndarray:
    """Central differences, one coordinate at a time."""
    theta = circuit.check_params(params).copy()
    out = np.zeros_like(theta)
    for k in range(theta.size):
        orig = theta[k]
        theta[k] = orig + step
        e_plus = energy(circuit, theta, hamiltonian, initial=initial)
        theta[k] = orig - step
        e_minus = energy(circuit, theta, hamiltonian, initial=initial)
        theta[k] = orig
        out[k] = (e_plus - e_minus) / (2.0 * step)
    return out
