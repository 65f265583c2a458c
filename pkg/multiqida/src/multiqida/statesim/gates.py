"""Gate set, circuits and the SO(4) correlator template."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce

import numpy as np

from multiqida.errors import ParameterCountError, QubitCountMismatchError

HALF_PI = np.pi / 2


class GateKind(str, Enum):
    RY = "ry"
    RZ = "rz"
    CNOT = "cnot"
    SO4 = "so4"


_ARITY = {GateKind.RY: 1, GateKind.RZ: 1, GateKind.CNOT: 2, GateKind.SO4: 2}
_SLOTS = {GateKind.RY: 1, GateKind.RZ: 1, GateKind.CNOT: 0, GateKind.SO4: 6}

SO4_PARAMS = 6


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz_matrix(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


# control on local bit 1, target on local bit 0
CNOT_10 = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=complex,
)
# control on local bit 0, target on local bit 1
CNOT_01 = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]],
    dtype=complex,
)

PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class GateOp:
    kind: GateKind
    qubits: tuple[int, ...]
    slots: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.qubits) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind.value} acts on {_ARITY[self.kind]} qubits, got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind.value} qubits must be distinct, got {self.qubits}")
        if len(self.slots) != _SLOTS[self.kind]:
            raise ValueError(
                f"{self.kind.value} takes {_SLOTS[self.kind]} parameters, got {len(self.slots)}"
            )


@dataclass(frozen=True)
class Primitive:
    """A single rotation or CNOT after template expansion.

    ``slot`` is the parameter index driving the angle; fixed rotations carry
    ``slot=None`` and their angle in ``angle``.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    slot: int | None = None
    angle: float = 0.0


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[GateOp, ...]
    n_parameters: int
    reference_bitstring: str

    def __post_init__(self) -> None:
        if len(self.reference_bitstring) != self.n_qubits or set(self.reference_bitstring) - {"0", "1"}:
            raise QubitCountMismatchError(self.n_qubits, len(self.reference_bitstring), "reference bitstring")
        for op in self.gates:
            if any(not 0 <= q < self.n_qubits for q in op.qubits):
                raise ValueError(f"gate {op} touches a qubit outside 0..{self.n_qubits - 1}")
            if any(not 0 <= s < self.n_parameters for s in op.slots):
                raise ValueError(f"gate {op} uses a slot outside 0..{self.n_parameters - 1}")

    @property
    def reference_index(self) -> int:
        return int(self.reference_bitstring, 2)

    def check_params(self, params: np.ndarray) -> np.ndarray:
        arr = np.asarray(params, dtype=float).reshape(-1)
        if arr.size != self.n_parameters:
            raise ParameterCountError(self.n_parameters, arr.size)
        return arr

    def count(self, kind: GateKind) -> int:
        return sum(1 for op in self.gates if op.kind is kind)

    def cnot_count(self) -> int:
        return self.count(GateKind.CNOT) + 2 * self.count(GateKind.SO4)

    def primitives(self) -> list[Primitive]:
        out: list[Primitive] = []
        for op in self.gates:
            if op.kind is GateKind.SO4:
                out.extend(expand_so4(op.qubits[0], op.qubits[1], op.slots))
            elif op.kind is GateKind.CNOT:
                out.append(Primitive(GateKind.CNOT, op.qubits))
            else:
                out.append(Primitive(op.kind, op.qubits, op.slots[0]))
        return out


@dataclass
class CircuitBuilder:
    """Appends gates and hands out consecutive parameter slots."""

    n_qubits: int
    gates: list[GateOp] = field(default_factory=list)
    n_parameters: int = 0

    def _take(self, k: int) -> tuple[int, ...]:
        slots = tuple(range(self.n_parameters, self.n_parameters + k))
        self.n_parameters += k
        return slots

    def ry(self, q: int) -> CircuitBuilder:
        self.gates.append(GateOp(GateKind.RY, (q,), self._take(1)))
        return self

    def rz(self, q: int) -> CircuitBuilder:
        self.gates.append(GateOp(GateKind.RZ, (q,), self._take(1)))
        return self

    def cnot(self, control: int, target: int) -> CircuitBuilder:
        self.gates.append(GateOp(GateKind.CNOT, (control, target)))
        return self

    def so4(self, a: int, b: int) -> CircuitBuilder:
        self.gates.append(GateOp(GateKind.SO4, (a, b), self._take(SO4_PARAMS)))
        return self

    def build(self, reference_bitstring: str | None = None) -> Circuit:
        ref = reference_bitstring if reference_bitstring is not None else "0" * self.n_qubits
        return Circuit(self.n_qubits, tuple(self.gates), self.n_parameters, ref)


def magic_basis_gates() -> tuple[list[Primitive], list[Primitive]]:
    """Fixed prefix and suffix of the SO(4) template on local qubits ``a=0, b=1``.

    The prefix is ``S_a S_b``, ``R_b`` then ``CNOT(b -> a)``; the suffix mirrors it
    with the inverse rotations. ``S = Rz(pi/2)`` and ``R = Ry(pi/2)``.
    """
    prefix = [
        Primitive(GateKind.RZ, (0,), angle=HALF_PI),
        Primitive(GateKind.RZ, (1,), angle=HALF_PI),
        Primitive(GateKind.RY, (1,), angle=HALF_PI),
        Primitive(GateKind.CNOT, (1, 0)),
    ]
    suffix = [
        Primitive(GateKind.CNOT, (1, 0)),
        Primitive(GateKind.RY, (1,), angle=-HALF_PI),
        Primitive(GateKind.RZ, (0,), angle=-HALF_PI),
        Primitive(GateKind.RZ, (1,), angle=-HALF_PI),
    ]
    return prefix, suffix


def expand_so4(a: int, b: int, slots: tuple[int, ...]) -> list[Primitive]:
    """Primitive sequence of one correlator; ``A = Rz(p0) Ry(p1) Rz(p2)`` on ``a``,
    ``B = Rz(p3) Ry(p4) Rz(p5)`` on ``b``."""
    qmap = (a, b)
    prefix, suffix = magic_basis_gates()

    def place(p: Primitive) -> Primitive:
        return Primitive(p.kind, tuple(qmap[q] for q in p.qubits), p.slot, p.angle)

    core = [
        Primitive(GateKind.RZ, (a,), slots[2]),
        Primitive(GateKind.RY, (a,), slots[1]),
        Primitive(GateKind.RZ, (a,), slots[0]),
        Primitive(GateKind.RZ, (b,), slots[5]),
        Primitive(GateKind.RY, (b,), slots[4]),
        Primitive(GateKind.RZ, (b,), slots[3]),
    ]
    return [place(p) for p in prefix] + core + [place(p) for p in suffix]


def _local_matrix(p: Primitive, theta: float) -> np.ndarray:
    if p.kind is GateKind.CNOT:
        return CNOT_10 if p.qubits == (1, 0) else CNOT_01
    g = ry_matrix(theta) if p.kind is GateKind.RY else rz_matrix(theta)
    eye = np.eye(2, dtype=complex)
    return np.kron(eye, g) if p.qubits == (0,) else np.kron(g, eye)


def so4_unitary(params: np.ndarray) -> np.ndarray:
    """4x4 matrix of the correlator on local basis ``bit_a + 2 * bit_b``."""
    p = np.asarray(params, dtype=float).reshape(-1)
    if p.size != SO4_PARAMS:
        raise ParameterCountError(SO4_PARAMS, p.size)
    seq = expand_so4(0, 1, tuple(range(SO4_PARAMS)))
    mats = [_local_matrix(g, p[g.slot] if g.slot is not None else g.angle) for g in seq]
    return reduce(lambda acc, m: m @ acc, mats, np.eye(4, dtype=complex))
