"""Jordan-Wigner images of fermionic ladder operators.

Spin orbitals are laid out in two blocks: spatial orbital ``i`` with spin alpha
sits on qubit ``i`` and with spin beta on qubit ``i + n_spatial``.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

from multiqida.errors import PauliAlgebraError
from multiqida.hamcore.pauli import PauliString, PauliSum


class LadderKind(str, Enum):
    CREATION = "creation"
    ANNIHILATION = "annihilation"


class Spin(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"


def spin_orbital(spatial_index: int, spin: Spin, n_spatial: int) -> int:
    if not 0 <= spatial_index < n_spatial:
        raise PauliAlgebraError(
            f"spatial orbital {spatial_index} out of range for {n_spatial} orbitals"
        )
    return spatial_index if spin is Spin.ALPHA else spatial_index + n_spatial


@lru_cache(maxsize=4096)
def jw_ladder(orbital_index: int, kind: LadderKind, n_qubits: int) -> PauliSum:
    """``1/2 (X -/+ iY)`` on ``orbital_index`` with a Z string on every lower qubit."""
    if not 0 <= orbital_index < n_qubits:
        raise PauliAlgebraError(
            f"orbital index {orbital_index} out of range for {n_qubits} qubits"
        )
    target = 1 << orbital_index
    z_string = target - 1
    x_term = PauliString(n_qubits, target, z_string)
    y_term = PauliString(n_qubits, target, z_string | target)
    sign = -1.0 if kind is LadderKind.CREATION else 1.0
    return PauliSum.from_terms(n_qubits, [(0.5, x_term), (0.5j * sign, y_term)])


@lru_cache(maxsize=16384)
def excitation_operator(p: int, q: int, n_qubits: int) -> PauliSum:
    """``a+_p a_q``."""
    return jw_ladder(p, LadderKind.CREATION, n_qubits) * jw_ladder(
        q, LadderKind.ANNIHILATION, n_qubits
    )


def number_operator(p: int, n_qubits: int) -> PauliSum:
    return excitation_operator(p, p, n_qubits)


def total_number_operator(n_qubits: int) -> PauliSum:
    out = PauliSum.zero(n_qubits)
    for p in range(n_qubits):
        out = out + number_operator(p, n_qubits)
    return out
