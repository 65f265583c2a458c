"""Spin and particle-number observables.

Molecular runs use the fermionic operators on the alpha-block/beta-block
layout; spin-lattice runs use the collective spin of the qubits themselves.
"""

from __future__ import annotations

from typing import NamedTuple

from multiqida.hamcore.fermion import Spin, excitation_operator, spin_orbital
from multiqida.hamcore.pauli import PauliString, PauliSum
from multiqida.statesim.simulator import expectation
from multiqida.statesim.state import StateVector


class SymmetryOperators(NamedTuple):
    sz: PauliSum
    s2: PauliSum
    ne: PauliSum


def symmetry_operators(n_spatial: int) -> SymmetryOperators:
    nq = 2 * n_spatial
    n_alpha = PauliSum.zero(nq)
    n_beta = PauliSum.zero(nq)
    s_plus = PauliSum.zero(nq)
    for i in range(n_spatial):
        a = spin_orbital(i, Spin.ALPHA, n_spatial)
        b = spin_orbital(i, Spin.BETA, n_spatial)
        n_alpha = n_alpha + excitation_operator(a, a, nq)
        n_beta = n_beta + excitation_operator(b, b, nq)
        s_plus = s_plus + excitation_operator(a, b, nq)
    s_minus = s_plus.adjoint()
    sz = (n_alpha - n_beta).scale(0.5)
    s2 = s_minus * s_plus + sz * sz + sz
    return SymmetryOperators(sz=sz, s2=s2, ne=n_alpha + n_beta)


def spin_lattice_operators(n_qubits: int) -> SymmetryOperators:
    """Total ``S_z``, ``S^2`` and the count of flipped spins, ``sum (I - Z)/2``."""
    totals = []
    for letter in "XYZ":
        terms = [(0.5, PauliString.from_ops(n_qubits, {q: letter})) for q in range(n_qubits)]
        totals.append(PauliSum.from_terms(n_qubits, terms))
    sx, sy, sz = totals
    s2 = sx * sx + sy * sy + sz * sz
    flips = PauliSum.identity(n_qubits, 0.5 * n_qubits) - sz
    return SymmetryOperators(sz=sz, s2=s2, ne=flips)


def symmetry_expectations(state: StateVector, ops: SymmetryOperators) -> dict[str, float]:
    return {
        "sz": expectation(state, ops.sz),
        "s2": expectation(state, ops.s2),
        "n_e": expectation(state, ops.ne),
    }
