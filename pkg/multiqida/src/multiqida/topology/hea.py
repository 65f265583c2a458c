from __future__ import annotations

from dataclasses import dataclass

from multiqida.topology.layers import EntanglerMap, LayerPlan, ladder_layer


@dataclass(frozen=True)
class HeaPlan:
    """Rotation layer plus CNOT ladder, ``depth`` times, closed by a rotation layer."""

    n_qubits: int
    depth: int

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if self.depth < 1:
            raise ValueError("HEA depth must be >= 1")

    @property
    def entangler(self) -> EntanglerMap:
        return ladder_layer(self.n_qubits)

    @property
    def n_parameters(self) -> int:
        return 2 * self.n_qubits * (self.depth + 1)

    def cnot_count(self) -> int:
        return (self.n_qubits - 1) * self.depth


def hea_ladder_plan(n_qubits: int, depth: int) -> HeaPlan:
    return HeaPlan(n_qubits, depth)


def cnot_count(plan: LayerPlan | HeaPlan | None) -> int:
    if plan is None:
        return 0
    return plan.cnot_count()
