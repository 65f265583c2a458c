from __future__ import annotations

from functools import reduce

import numpy as np
import pytest

from multiqida.errors import PauliAlgebraError, QubitCountMismatchError
from multiqida.hamcore.pauli import PauliString, PauliSum, multiply_strings, pauli_simplify

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _kron_letters(letters: str) -> np.ndarray:
    # qubit 0 is the least significant bit, so it is the rightmost kron factor
    return reduce(np.kron, [_MATS[ch] for ch in reversed(letters)])


def test_single_qubit_products_follow_the_pauli_group() -> None:
    x = PauliString.from_letters("X")
    y = PauliString.from_letters("Y")
    z = PauliString.from_letters("Z")

    assert multiply_strings(x, y) == (1j, z)
    assert multiply_strings(y, x) == (-1j, z)
    assert multiply_strings(y, z) == (1j, x)
    assert multiply_strings(z, x) == (1j, y)
    assert multiply_strings(y, y) == (1, PauliString.identity(1))


def test_letters_and_str_use_qubit_order() -> None:
    s = PauliString.from_ops(4, {0: "Z", 2: "X"})
    assert s.letters == "ZIXI"
    assert str(s) == "Z0 X2"
    assert s.weight == 2
    assert PauliString.from_letters("IYI").n_y == 1


def test_unknown_letter_and_out_of_range_qubit_raise() -> None:
    with pytest.raises(PauliAlgebraError):
        PauliString.from_letters("XQ")
    with pytest.raises(PauliAlgebraError):
        PauliString.from_ops(2, {3: "X"})


def test_multiply_matches_dense_products(rng: np.random.Generator) -> None:
    for _ in range(50):
        a = "".join(rng.choice(list("IXYZ"), size=3))
        b = "".join(rng.choice(list("IXYZ"), size=3))
        phase, c = multiply_strings(PauliString.from_letters(a), PauliString.from_letters(b))
        np.testing.assert_allclose(
            _kron_letters(a) @ _kron_letters(b), phase * _kron_letters(c.letters), atol=1e-12
        )


def test_commutes_with_agrees_with_dense_commutator(rng: np.random.Generator) -> None:
    for _ in range(50):
        a = "".join(rng.choice(list("IXYZ"), size=3))
        b = "".join(rng.choice(list("IXYZ"), size=3))
        ma, mb = _kron_letters(a), _kron_letters(b)
        dense = np.allclose(ma @ mb, mb @ ma)
        assert PauliString.from_letters(a).commutes_with(PauliString.from_letters(b)) == dense


def test_to_dense_matches_kron(rng: np.random.Generator) -> None:
    terms = []
    expected = np.zeros((8, 8), dtype=complex)
    for _ in range(6):
        letters = "".join(rng.choice(list("IXYZ"), size=3))
        c = complex(rng.normal(), rng.normal())
        terms.append((c, PauliString.from_letters(letters)))
        expected += c * _kron_letters(letters)
    np.testing.assert_allclose(PauliSum.from_terms(3, terms).to_dense(), expected, atol=1e-12)


def test_simplify_merges_and_prunes() -> None:
    s = PauliString.from_letters("XZ")
    raw = PauliSum(2, ((0.5, s), (0.5, s), (1e-16, PauliString.from_letters("ZZ"))))
    out = pauli_simplify(raw)
    assert out.terms == ((1.0, s),)


def test_sum_algebra_and_hermiticity() -> None:
    a = PauliSum.from_label(2, "X0", 2.0) + PauliSum.from_label(2, "Z1")
    b = PauliSum.from_label(2, "Y0")

    assert (a - a).is_zero()
    assert a.is_hermitian()
    assert not (1j * a).is_hermitian()
    # [X, Y] = 2iZ on qubit 0
    assert a.commutator(b).is_close(PauliSum.from_label(2, "Z0", 4j))
    assert b.anticommutator(b).is_close(PauliSum.identity(2, 2.0))
    assert (a * b).adjoint().is_close(b.adjoint() * a.adjoint())


def test_term_order_is_deterministic() -> None:
    a = PauliSum.from_label(3, "Z2") + PauliSum.from_label(3, "X0") + PauliSum.identity(3)
    b = PauliSum.from_label(3, "X0") + PauliSum.identity(3) + PauliSum.from_label(3, "Z2")
    assert a.terms == b.terms


def test_mismatched_qubit_counts_raise() -> None:
    with pytest.raises(QubitCountMismatchError):
        PauliSum.from_label(2, "X0") + PauliSum.from_label(3, "X0")
