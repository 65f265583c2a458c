"""Dense state vectors.

Basis index ``k`` has qubit ``q`` set when bit ``q`` of ``k`` is set. Bitstrings
are written with the highest qubit leftmost, so ``int(bitstring, 2) == k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from multiqida.errors import NumericalInconsistencyError, QubitCountMismatchError

NORM_TOL = 1e-10


@lru_cache(maxsize=32)
def basis_indices(n_qubits: int) -> np.ndarray:
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    idx.flags.writeable = False
    return idx


def bitstring_to_index(bitstring: str) -> int:
    if not bitstring or set(bitstring) - {"0", "1"}:
        raise ValueError(f"invalid bitstring {bitstring!r}")
    return int(bitstring, 2)


def index_to_bitstring(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


@dataclass(eq=False)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.n_qubits <= 0:
            raise ValueError("n_qubits must be positive")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n_qubits,):
            raise QubitCountMismatchError(
                self.n_qubits, max(int(amps.size).bit_length() - 1, 0), "amplitude vector"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-8:
            raise NumericalInconsistencyError(f"state norm is {norm:.12g}, expected 1")
        self.amplitudes = amps

    @classmethod
    def from_amplitudes(cls, amplitudes: np.ndarray) -> StateVector:
        """Normalize and wrap an arbitrary nonzero vector of length ``2**n``."""
        amps = np.asarray(amplitudes, dtype=complex)
        n = int(amps.size).bit_length() - 1
        if amps.ndim != 1 or amps.size != 1 << n:
            raise ValueError(f"amplitude vector length {amps.size} is not a power of two")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise NumericalInconsistencyError("cannot normalize the zero vector")
        return cls(n, amps / norm)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> StateVector:
        return StateVector(self.n_qubits, self.amplitudes.copy())


def basis_state(n_qubits: int, bitstring: str | int) -> StateVector:
    index = bitstring_to_index(bitstring) if isinstance(bitstring, str) else int(bitstring)
    if isinstance(bitstring, str) and len(bitstring) != n_qubits:
        raise QubitCountMismatchError(n_qubits, len(bitstring), "reference bitstring")
    if not 0 <= index < 1 << n_qubits:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def _check_pair(a: StateVector, b: StateVector) -> None:
    if a.n_qubits != b.n_qubits:
        raise QubitCountMismatchError(a.n_qubits, b.n_qubits, "state")


def inner(a: StateVector, b: StateVector) -> complex:
    _check_pair(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def overlap(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|``."""
    return float(abs(inner(a, b)))


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|**2`` clipped to [0, 1]."""
    return float(min(max(abs(inner(a, b)) ** 2, 0.0), 1.0))
