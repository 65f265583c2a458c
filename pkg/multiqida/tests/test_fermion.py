from __future__ import annotations

import numpy as np
import pytest

from multiqida.errors import PauliAlgebraError
from multiqida.hamcore.fermion import (
    LadderKind,
    Spin,
    excitation_operator,
    jw_ladder,
    number_operator,
    spin_orbital,
    total_number_operator,
)
from multiqida.hamcore.pauli import PauliString, PauliSum


@pytest.mark.parametrize("n_qubits", [1, 2, 3, 4, 5, 6])
def test_canonical_anticommutation(n_qubits: int) -> None:
    eye = PauliSum.identity(n_qubits)
    zero = PauliSum.zero(n_qubits)
    for i in range(n_qubits):
        a_i = jw_ladder(i, LadderKind.ANNIHILATION, n_qubits)
        for j in range(n_qubits):
            adag_j = jw_ladder(j, LadderKind.CREATION, n_qubits)
            a_j = jw_ladder(j, LadderKind.ANNIHILATION, n_qubits)
            expected = eye if i == j else zero
            assert a_i.anticommutator(adag_j).is_close(expected, atol=1e-12)
            assert a_i.anticommutator(a_j).is_zero(atol=1e-12)


def test_creation_is_adjoint_of_annihilation() -> None:
    for p in range(4):
        create = jw_ladder(p, LadderKind.CREATION, 4)
        annihilate = jw_ladder(p, LadderKind.ANNIHILATION, 4)
        assert create.adjoint().is_close(annihilate)


def test_number_operator_is_projector_on_occupied() -> None:
    n = number_operator(1, 3)
    # (I - Z_1) / 2
    expected = PauliSum.identity(3, 0.5) - PauliSum.from_label(3, "Z1", 0.5)
    assert n.is_close(expected)
    assert (n * n).is_close(n)


def test_total_number_counts_set_bits() -> None:
    dense = total_number_operator(3).to_dense()
    np.testing.assert_allclose(np.diag(dense).real, [bin(k).count("1") for k in range(8)], atol=1e-12)


def test_excitation_operator_moves_one_electron() -> None:
    # a+_2 a_0 takes |001> to |100> with no sign: nothing sits between the two modes
    dense = excitation_operator(2, 0, 3).to_dense()
    assert dense[0b100, 0b001] == pytest.approx(1.0)
    # a Z string on qubit 1 flips the sign when that mode is occupied
    assert dense[0b110, 0b011] == pytest.approx(-1.0)


def test_spin_orbital_blocks() -> None:
    assert spin_orbital(0, Spin.ALPHA, 3) == 0
    assert spin_orbital(2, Spin.ALPHA, 3) == 2
    assert spin_orbital(0, Spin.BETA, 3) == 3
    assert spin_orbital(2, Spin.BETA, 3) == 5
    with pytest.raises(PauliAlgebraError):
        spin_orbital(3, Spin.BETA, 3)
    with pytest.raises(PauliAlgebraError):
        jw_ladder(4, LadderKind.CREATION, 4)


def test_ladder_operators_as_pauli_terms() -> None:
    create = jw_ladder(0, LadderKind.CREATION, 2)
    assert create.as_dict() == {
        PauliString.from_letters("XI"): 0.5,
        PauliString.from_letters("YI"): -0.5j,
    }
    annihilate = jw_ladder(2, LadderKind.ANNIHILATION, 4)
    assert annihilate.as_dict() == {
        PauliString.from_letters("ZZXI"): 0.5,
        PauliString.from_letters("ZZYI"): 0.5j,
    }
