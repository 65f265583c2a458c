"""Circuit assembly for layered SO(4) ansatze and the HEA baseline."""

from __future__ import annotations

from dataclasses import dataclass

from multiqida.statesim.gates import SO4_PARAMS, Circuit, CircuitBuilder
from multiqida.topology.hea import HeaPlan
from multiqida.topology.layers import EntanglerMap, LayerPlan


@dataclass(frozen=True)
class AnsatzLayer:
    index: int
    entangler: EntanglerMap
    start: int
    stop: int

    @property
    def n_parameters(self) -> int:
        return self.stop - self.start


@dataclass(frozen=True)
class LayeredAnsatz:
    n_qubits: int
    reference_bitstring: str
    layers: tuple[AnsatzLayer, ...]

    def __post_init__(self) -> None:
        expected = 0
        for layer in self.layers:
            if layer.start != expected or layer.n_parameters != SO4_PARAMS * len(layer.entangler):
                raise ValueError(f"layer {layer.index} has a non-contiguous parameter range")
            expected = layer.stop

    @classmethod
    def from_plan(cls, plan: LayerPlan, reference_bitstring: str) -> LayeredAnsatz:
        """Empty QIDA layers are dropped; the ladder always closes the ansatz."""
        layers = []
        start = 0
        for entangler in plan.layers():
            if not len(entangler):
                continue
            stop = start + SO4_PARAMS * len(entangler)
            layers.append(AnsatzLayer(len(layers), entangler, start, stop))
            start = stop
        return cls(plan.n_qubits, reference_bitstring, tuple(layers))

    @property
    def n_parameters(self) -> int:
        return self.layers[-1].stop if self.layers else 0

    def circuit(self, upto: int | None = None) -> Circuit:
        """Circuit of layers ``0..upto`` inclusive (all layers by default)."""
        last = len(self.layers) - 1 if upto is None else upto
        builder = CircuitBuilder(self.n_qubits)
        for layer in self.layers[: last + 1]:
            for a, b in layer.entangler.pairs:
                builder.so4(a, b)
        return builder.build(self.reference_bitstring)

    def layer_circuit(self, index: int) -> Circuit:
        """Only layer ``index``, with its own slots numbered from zero."""
        builder = CircuitBuilder(self.n_qubits)
        for a, b in self.layers[index].entangler.pairs:
            builder.so4(a, b)
        return builder.build(self.reference_bitstring)

    def cnot_count(self) -> int:
        return self.circuit().cnot_count()


def hea_circuit(plan: HeaPlan, reference_bitstring: str) -> Circuit:
    n = plan.n_qubits
    builder = CircuitBuilder(n)

    def rotations() -> None:
        for q in range(n):
            builder.ry(q)
            builder.rz(q)

    for _ in range(plan.depth):
        rotations()
        for control, target in plan.entangler.pairs:
            builder.cnot(control, target)
    rotations()
    return builder.build(reference_bitstring)
