"""One- and two-qubit reduced density matrices and their entropies.

The local basis of a subset ``(q0, q1, ...)`` is indexed by
``bit_q0 + 2 * bit_q1 + ...``.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from multiqida.qmi.sparse import SparseState
from multiqida.statesim.state import StateVector

log = logging.getLogger(__name__)

EIGEN_NEG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Rdm:
    qubits: tuple[int, ...]
    matrix: np.ndarray

    @property
    def subset_size(self) -> int:
        return len(self.qubits)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def is_valid(self, atol: float = 1e-10) -> bool:
        m = self.matrix
        if not np.allclose(m, m.conj().T, atol=atol):
            return False
        if abs(self.trace() - 1.0) > atol:
            return False
        return bool(scipy.linalg.eigvalsh(m).min() >= -atol)


def _check_subset(n_qubits: int, qubits: tuple[int, ...]) -> None:
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"reduced density matrix needs distinct qubits, got {qubits}")
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit {q} out of range for {n_qubits} qubits")


def _sparse_rdm(state: SparseState, qubits: tuple[int, ...]) -> np.ndarray:
    mask = 0
    for q in qubits:
        mask |= 1 << q
    dim = 1 << len(qubits)
    groups: dict[int, np.ndarray] = defaultdict(lambda: np.zeros(dim, dtype=complex))
    for k, a in state.entries.items():
        local = 0
        for j, q in enumerate(qubits):
            local |= ((k >> q) & 1) << j
        groups[k & ~mask][local] = a
    rho = np.zeros((dim, dim), dtype=complex)
    for vec in groups.values():
        rho += np.outer(vec, vec.conj())
    return rho


def _dense_rdm(state: StateVector, qubits: tuple[int, ...]) -> np.ndarray:
    n = state.n_qubits
    m = len(qubits)
    tensor = state.amplitudes.reshape((2,) * n)
    # tensor axis of qubit q is n - 1 - q; the last axis must carry qubits[0]
    src = [n - 1 - q for q in reversed(qubits)]
    dst = list(range(n - m, n))
    mat = np.moveaxis(tensor, src, dst).reshape(-1, 1 << m)
    return mat.T @ mat.conj()


def reduced_density_matrix(state: SparseState | StateVector, qubits: tuple[int, ...]) -> Rdm:
    _check_subset(state.n_qubits, qubits)
    if isinstance(state, SparseState):
        return Rdm(qubits, _sparse_rdm(state, qubits))
    return Rdm(qubits, _dense_rdm(state, qubits))


def one_qubit_rdm(state: SparseState | StateVector, u: int) -> Rdm:
    return reduced_density_matrix(state, (u,))


def two_qubit_rdm(state: SparseState | StateVector, u: int, v: int) -> Rdm:
    if u == v:
        raise ValueError("two-qubit reduced density matrix needs u != v")
    return reduced_density_matrix(state, (u, v))


def von_neumann_entropy(rdm: Rdm) -> float:
    """``-sum l ln l`` over eigenvalues clamped to [0, 1]."""
    evals = scipy.linalg.eigvalsh(rdm.matrix)
    if evals.min() < -EIGEN_NEG_TOL:
        log.warning("rdm qubits=%s negative eigenvalue=%s clamped", rdm.qubits, evals.min())
    lam = np.clip(evals, 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(max(-np.sum(lam * np.log(lam)), 0.0))
