"""Molecular integrals and their qubit Hamiltonian."""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from multiqida.errors import PauliAlgebraError
from multiqida.hamcore.fermion import Spin, excitation_operator, spin_orbital
from multiqida.hamcore.pauli import PauliString, PauliSum, multiply_strings

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10
_INTEGRAL_TOL = 1e-14


def eri_permutations(p: int, q: int, r: int, s: int) -> set[tuple[int, int, int, int]]:
    """The index tuples sharing the value of ``(ij|kl)`` for real orbitals."""
    return {
        (p, q, r, s),
        (q, p, r, s),
        (p, q, s, r),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, p, q),
        (r, s, q, p),
        (s, r, q, p),
    }


@dataclass(frozen=True, eq=False)
class MolecularIntegrals:
    """Spatial-orbital integrals.

    ``g`` is stored in chemist order, ``g[i, j, k, l] = (ij|kl)``. The physicist
    tensor of ``1/2 sum Gamma_ijkl a+_i a+_j a_k a_l`` is exposed as ``gamma``.
    """

    n_spatial_orbitals: int
    n_electrons: int
    core_energy: float
    h: np.ndarray
    g: np.ndarray
    spin_multiplicity: int = 1
    orbital_symmetries: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        n = self.n_spatial_orbitals
        if n <= 0:
            raise ValueError("n_spatial_orbitals must be positive")
        if self.n_electrons <= 0 or self.n_electrons > 2 * n:
            raise ValueError(f"n_electrons={self.n_electrons} does not fit {n} spatial orbitals")
        if self.spin_multiplicity < 1:
            raise ValueError("spin_multiplicity must be >= 1")
        h = np.array(self.h, dtype=float)
        g = np.array(self.g, dtype=float)
        if h.shape != (n, n):
            raise ValueError(f"h has shape {h.shape}, expected {(n, n)}")
        if g.shape != (n, n, n, n):
            raise ValueError(f"g has shape {g.shape}, expected {(n,) * 4}")
        if not np.allclose(h, h.T, atol=SYMMETRY_TOL):
            raise ValueError("one-body integrals are not symmetric")
        for perm in ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)):
            if not np.allclose(g, g.transpose(perm), atol=SYMMETRY_TOL):
                raise ValueError(f"two-body integrals break the {perm} permutational symmetry")
        h.flags.writeable = False
        g.flags.writeable = False
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_spatial_orbitals

    @property
    def ms2(self) -> int:
        return self.spin_multiplicity - 1

    @property
    def n_alpha(self) -> int:
        return (self.n_electrons + self.ms2) // 2

    @property
    def n_beta(self) -> int:
        return (self.n_electrons - self.ms2) // 2

    @property
    def gamma(self) -> np.ndarray:
        return self.g.transpose(0, 2, 3, 1)

    def hf_energy(self) -> float:
        """Energy of the lowest-orbital determinant, straight from the integrals."""
        occ_a = range(self.n_alpha)
        occ_b = range(self.n_beta)
        e = self.core_energy
        e += sum(self.h[i, i] for i in occ_a) + sum(self.h[i, i] for i in occ_b)
        for occ_s, occ_t, same in ((occ_a, occ_a, True), (occ_b, occ_b, True), (occ_a, occ_b, False)):
            scale = 0.5 if same else 1.0
            for i in occ_s:
                for j in occ_t:
                    e += scale * self.g[i, i, j, j]
                    if same:
                        e -= scale * self.g[i, j, j, i]
        return float(e)


def random_integrals(
    n_spatial: int, n_electrons: int, rng: np.random.Generator, scale: float = 1.0
) -> MolecularIntegrals:
    """Random real integrals with the full permutational symmetry."""
    a = rng.normal(scale=scale, size=(n_spatial, n_spatial))
    h = 0.5 * (a + a.T)
    g = np.zeros((n_spatial,) * 4)
    for idx in itertools.product(range(n_spatial), repeat=4):
        if g[idx] != 0.0:
            continue
        v = rng.normal(scale=scale)
        for perm in eri_permutations(*idx):
            g[perm] = v
    return MolecularIntegrals(
        n_spatial_orbitals=n_spatial,
        n_electrons=n_electrons,
        core_energy=float(rng.normal()),
        h=h,
        g=g,
    )


def _add_product(
    acc: dict[PauliString, complex], coeff: float, a: PauliSum, b: PauliSum
) -> None:
    for ca, sa in a.terms:
        for cb, sb in b.terms:
            phase, s = multiply_strings(sa, sb)
            acc[s] += coeff * ca * cb * phase


def _add_scaled(acc: dict[PauliString, complex], coeff: float, a: PauliSum) -> None:
    for c, s in a.terms:
        acc[s] += coeff * c


def build_qubit_hamiltonian(mo: MolecularIntegrals) -> PauliSum:
    """Jordan-Wigner image of the electronic Hamiltonian plus ``core_energy * I``.

    Two-body terms use ``a+_p a+_r a_s a_q = E_pq E_rs - delta_qr E_ps`` with
    ``E_pq = a+_p a_q`` so only cached excitation images are multiplied.
    """
    n = mo.n_spatial_orbitals
    nq = mo.n_qubits
    acc: dict[PauliString, complex] = defaultdict(complex)
    acc[PauliString.identity(nq)] += mo.core_energy

    spins = (Spin.ALPHA, Spin.BETA)
    for spin in spins:
        for p, q in itertools.product(range(n), repeat=2):
            if abs(mo.h[p, q]) < _INTEGRAL_TOL:
                continue
            sp, sq = spin_orbital(p, spin, n), spin_orbital(q, spin, n)
            _add_scaled(acc, mo.h[p, q], excitation_operator(sp, sq, nq))

    for sigma, tau in itertools.product(spins, repeat=2):
        for p, q, r, s in itertools.product(range(n), repeat=4):
            v = mo.g[p, q, r, s]
            if abs(v) < _INTEGRAL_TOL:
                continue
            sp, sq = spin_orbital(p, sigma, n), spin_orbital(q, sigma, n)
            sr, ss = spin_orbital(r, tau, n), spin_orbital(s, tau, n)
            if sp == sr or sq == ss:
                continue
            coeff = 0.5 * v
            _add_product(acc, coeff, excitation_operator(sp, sq, nq), excitation_operator(sr, ss, nq))
            if sq == sr:
                _add_scaled(acc, -coeff, excitation_operator(sp, ss, nq))

    ham = PauliSum.from_terms(nq, ((c, s) for s, c in acc.items()))
    if not ham.is_hermitian(atol=1e-12):
        raise PauliAlgebraError(
            f"qubit Hamiltonian has imaginary coefficients up to {ham.max_imag():.3e}"
        )
    log.debug("qubit hamiltonian n_qubits=%s n_terms=%s", nq, len(ham))
    return ham


def hf_bitstring(n_spatial: int, n_alpha: int, n_beta: int) -> str:
    """Reference determinant as a bitstring (leftmost character = highest qubit)."""
    if not (0 <= n_alpha <= n_spatial and 0 <= n_beta <= n_spatial):
        raise ValueError("occupations exceed the number of spatial orbitals")
    occupied = [spin_orbital(i, Spin.ALPHA, n_spatial) for i in range(n_alpha)]
    occupied += [spin_orbital(i, Spin.BETA, n_spatial) for i in range(n_beta)]
    bits = ["0"] * (2 * n_spatial)
    for q in occupied:
        bits[2 * n_spatial - 1 - q] = "1"
    return "".join(bits)


def neel_bitstring(n_qubits: int) -> str:
    """Alternating product state with the odd qubits flipped."""
    return "".join("1" if q % 2 else "0" for q in reversed(range(n_qubits)))
