"""Dense diagonalization oracle for reference energies and ground states."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg

from multiqida.errors import NumericalInconsistencyError, SizeLimitError
from multiqida.hamcore.pauli import PauliSum
from multiqida.statesim.state import StateVector

log = logging.getLogger(__name__)

DEFAULT_MAX_DENSE_QUBITS = 16


def _dense_hermitian(obs: PauliSum, max_qubits: int) -> np.ndarray:
    if obs.n_qubits > max_qubits:
        raise SizeLimitError(obs.n_qubits, max_qubits)
    mat = obs.to_dense()
    if not np.allclose(mat, mat.conj().T, atol=1e-12):
        raise NumericalInconsistencyError("observable matrix is not Hermitian")
    if np.abs(mat.imag).max(initial=0.0) < 1e-14:
        return mat.real
    return mat


def exact_ground_state(
    obs: PauliSum, max_qubits: int = DEFAULT_MAX_DENSE_QUBITS
) -> tuple[float, StateVector]:
    """Lowest eigenpair; the eigenvector is phased so its largest entry is real positive."""
    mat = _dense_hermitian(obs, max_qubits)
    evals, evecs = scipy.linalg.eigh(mat, subset_by_index=[0, 0])
    vec = np.asarray(evecs[:, 0], dtype=complex)
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[k]) / vec[k])
    vec /= np.linalg.norm(vec)
    energy = float(evals[0])
    log.debug("exact ground state n_qubits=%s energy=%s", obs.n_qubits, energy)
    return energy, StateVector(obs.n_qubits, vec)


def exact_spectrum(obs: PauliSum, max_qubits: int = DEFAULT_MAX_DENSE_QUBITS) -> np.ndarray:
    return scipy.linalg.eigvalsh(_dense_hermitian(obs, max_qubits))
