"""Pauli strings and weighted Pauli sums.

A Pauli string on ``n`` qubits is stored in symplectic form as two bitmasks
``(x, z)``: qubit ``q`` carries ``X`` when only bit ``q`` of ``x`` is set, ``Z``
when only bit ``q`` of ``z`` is set and ``Y`` when both are set. The operator
represented is ``prod_q i^(x_q z_q) X_q^(x_q) Z_q^(z_q)`` so that ``Y = iXZ``.

Qubit 0 is the least-significant bit of a computational basis index.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np

from multiqida.errors import PauliAlgebraError, QubitCountMismatchError

PRUNE_TOL = 1e-14

_PHASES: tuple[complex, ...] = (1 + 0j, 1j, -1 + 0j, -1j)
_LETTER_BITS: dict[str, tuple[int, int]] = {
    "I": (0, 0),
    "X": (1, 0),
    "Y": (1, 1),
    "Z": (0, 1),
}


@dataclass(frozen=True, order=True)
class PauliString:
    n_qubits: int
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.n_qubits <= 0:
            raise PauliAlgebraError("n_qubits must be positive")
        limit = 1 << self.n_qubits
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise PauliAlgebraError(f"masks exceed {self.n_qubits} qubits")

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls(n_qubits, 0, 0)

    @classmethod
    def from_letters(cls, letters: str) -> PauliString:
        """``letters[q]`` is the symbol on qubit ``q``."""
        x = z = 0
        for q, ch in enumerate(letters.upper()):
            try:
                bx, bz = _LETTER_BITS[ch]
            except KeyError:
                raise PauliAlgebraError(f"unknown Pauli letter {ch!r}") from None
            x |= bx << q
            z |= bz << q
        return cls(len(letters), x, z)

    @classmethod
    def from_ops(cls, n_qubits: int, ops: Mapping[int, str]) -> PauliString:
        """Sparse constructor, e.g. ``from_ops(4, {0: "Z", 2: "X"})``."""
        letters = ["I"] * n_qubits
        for q, ch in ops.items():
            if not 0 <= q < n_qubits:
                raise PauliAlgebraError(f"qubit {q} out of range for {n_qubits} qubits")
            letters[q] = ch
        return cls.from_letters("".join(letters))

    @property
    def letters(self) -> str:
        out = []
        for q in range(self.n_qubits):
            bx = (self.x >> q) & 1
            bz = (self.z >> q) & 1
            out.append("IZXY"[bx * 2 + bz])
        return "".join(out)

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    @property
    def n_y(self) -> int:
        return (self.x & self.z).bit_count()

    def commutes_with(self, other: PauliString) -> bool:
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0

    def __str__(self) -> str:
        parts = [f"{ch}{q}" for q, ch in enumerate(self.letters) if ch != "I"]
        return " ".join(parts) if parts else "I"


def multiply_strings(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Return ``(phase, c)`` with ``a * b = phase * c``."""
    if a.n_qubits != b.n_qubits:
        raise QubitCountMismatchError(a.n_qubits, b.n_qubits)
    x3 = a.x ^ b.x
    z3 = a.z ^ b.z
    k = (
        (a.x & a.z).bit_count()
        + (b.x & b.z).bit_count()
        + 2 * (a.z & b.x).bit_count()
        - (x3 & z3).bit_count()
    )
    return _PHASES[k % 4], PauliString(a.n_qubits, x3, z3)


def _clean(c: complex, tol: float) -> complex:
    re = c.real if abs(c.real) >= tol else 0.0
    im = c.imag if abs(c.imag) >= tol else 0.0
    return complex(re, im)


@dataclass(frozen=True)
class PauliSum:
    """Weighted sum of Pauli strings; ``terms`` holds ``(coefficient, string)`` pairs.

    Instances returned by the algebra below are always simplified: no duplicate
    strings, no coefficient below ``PRUNE_TOL``, terms in deterministic order.
    """

    n_qubits: int
    terms: tuple[tuple[complex, PauliString], ...] = ()

    def __post_init__(self) -> None:
        if self.n_qubits <= 0:
            raise PauliAlgebraError("n_qubits must be positive")
        for _, s in self.terms:
            if s.n_qubits != self.n_qubits:
                raise QubitCountMismatchError(self.n_qubits, s.n_qubits, "Pauli string")

    # --- construction ---

    @classmethod
    def zero(cls, n_qubits: int) -> PauliSum:
        return cls(n_qubits, ())

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> PauliSum:
        return cls.from_terms(n_qubits, [(coeff, PauliString.identity(n_qubits))])

    @classmethod
    def from_terms(
        cls,
        n_qubits: int,
        terms: Iterable[tuple[complex, PauliString]],
        tol: float = PRUNE_TOL,
    ) -> PauliSum:
        acc: dict[PauliString, complex] = defaultdict(complex)
        for c, s in terms:
            if s.n_qubits != n_qubits:
                raise QubitCountMismatchError(n_qubits, s.n_qubits, "Pauli string")
            acc[s] += complex(c)
        return cls._from_accumulator(n_qubits, acc, tol)

    @classmethod
    def from_label(cls, n_qubits: int, label: str, coeff: complex = 1.0) -> PauliSum:
        """``from_label(3, "Z0 X2")``; an empty label or ``"I"`` gives the identity."""
        ops: dict[int, str] = {}
        for tok in label.split():
            if tok.upper() == "I":
                continue
            ops[int(tok[1:])] = tok[0].upper()
        return cls.from_terms(n_qubits, [(coeff, PauliString.from_ops(n_qubits, ops))])

    @classmethod
    def _from_accumulator(
        cls, n_qubits: int, acc: Mapping[PauliString, complex], tol: float
    ) -> PauliSum:
        kept = []
        for s in sorted(acc):
            c = _clean(acc[s], tol)
            if abs(c) >= tol:
                kept.append((c, s))
        return cls(n_qubits, tuple(kept))

    # --- algebra ---

    def simplify(self, tol: float = PRUNE_TOL) -> PauliSum:
        return PauliSum.from_terms(self.n_qubits, self.terms, tol)

    def _check(self, other: PauliSum) -> None:
        if other.n_qubits != self.n_qubits:
            raise QubitCountMismatchError(self.n_qubits, other.n_qubits)

    def add(self, other: PauliSum) -> PauliSum:
        self._check(other)
        return PauliSum.from_terms(self.n_qubits, [*self.terms, *other.terms])

    def scale(self, factor: complex) -> PauliSum:
        return PauliSum.from_terms(self.n_qubits, [(factor * c, s) for c, s in self.terms])

    def multiply(self, other: PauliSum) -> PauliSum:
        self._check(other)
        acc: dict[PauliString, complex] = defaultdict(complex)
        for ca, sa in self.terms:
            for cb, sb in other.terms:
                phase, s = multiply_strings(sa, sb)
                acc[s] += ca * cb * phase
        return PauliSum._from_accumulator(self.n_qubits, acc, PRUNE_TOL)

    def adjoint(self) -> PauliSum:
        return PauliSum(self.n_qubits, tuple((c.conjugate(), s) for c, s in self.terms))

    def commutator(self, other: PauliSum) -> PauliSum:
        return self.multiply(other) - other.multiply(self)

    def anticommutator(self, other: PauliSum) -> PauliSum:
        return self.multiply(other) + other.multiply(self)

    def __add__(self, other: PauliSum) -> PauliSum:
        return self.add(other)

    def __sub__(self, other: PauliSum) -> PauliSum:
        return self.add(other.scale(-1.0))

    def __neg__(self) -> PauliSum:
        return self.scale(-1.0)

    def __mul__(self, other: PauliSum | complex | float | int) -> PauliSum:
        if isinstance(other, PauliSum):
            return self.multiply(other)
        return self.scale(other)

    def __rmul__(self, other: complex | float | int) -> PauliSum:
        return self.scale(other)

    # --- inspection ---

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[complex, PauliString]]:
        return iter(self.terms)

    def as_dict(self) -> dict[PauliString, complex]:
        return {s: c for c, s in self.terms}

    def coefficient(self, string: PauliString) -> complex:
        return self.as_dict().get(string, 0j)

    def is_zero(self, atol: float = 1e-12) -> bool:
        return all(abs(c) <= atol for c, _ in self.terms)

    def is_close(self, other: PauliSum, atol: float = 1e-12) -> bool:
        self._check(other)
        return (self - other).is_zero(atol)

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= atol for c, _ in self.terms)

    def max_imag(self) -> float:
        return max((abs(c.imag) for c, _ in self.terms), default=0.0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c:.6g})*{s}" for c, s in self.terms)

    # --- numeric views ---

    @cached_property
    def grouped(self) -> tuple[tuple[int, np.ndarray], ...]:
        """Terms grouped by X mask: ``((xmask, d), ...)`` with ``P|k> = d[k] |k ^ xmask>``.

        ``d`` is the summed, phase-resolved diagonal of all strings sharing ``xmask``,
        so ``H|psi>[k ^ m] += d[k] psi[k]``.
        """
        dim = 1 << self.n_qubits
        idx = np.arange(dim, dtype=np.int64)
        groups: dict[int, np.ndarray] = {}
        for c, s in self.terms:
            sign = 1.0 - 2.0 * parity(idx & s.z)
            d = c * _PHASES[s.n_y % 4] * sign
            if s.x in groups:
                groups[s.x] = groups[s.x] + d
            else:
                groups[s.x] = d.astype(complex)
        return tuple(sorted(groups.items(), key=lambda kv: kv[0]))

    def to_dense(self) -> np.ndarray:
        dim = 1 << self.n_qubits
        idx = np.arange(dim, dtype=np.int64)
        mat = np.zeros((dim, dim), dtype=complex)
        for m, d in self.grouped:
            mat[idx ^ m, idx] += d
        return mat


def parity(values: np.ndarray) -> np.ndarray:
    """Bit parity of each entry of an int64 array (0 or 1)."""
    v = values.astype(np.int64, copy=True)
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return (v & 1).astype(float)


def pauli_add(a: PauliSum, b: PauliSum) -> PauliSum:
    return a.add(b)


def pauli_multiply(a: PauliSum, b: PauliSum) -> PauliSum:
    return a.multiply(b)


def pauli_simplify(a: PauliSum, tol: float = PRUNE_TOL) -> PauliSum:
    return a.simplify(tol)
