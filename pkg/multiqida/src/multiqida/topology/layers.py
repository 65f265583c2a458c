"""QMI-driven layer plans.

Finesse ratios ``[m0, m1, ..., m_{k-1}]`` cut the pair list into ``k`` chunks:
``[m0, inf)``, ``[m1, m0)``, ..., ``[m_{k-1}, m_{k-2})``. Pairs below the last
ratio are left to the closing ladder layer.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from multiqida.errors import FinesseRatioError
from multiqida.qmi.mutual_info import QmiMatrix
from multiqida.topology.graph import Objective, WeightedGraph, spanning_forest

log = logging.getLogger(__name__)

PROTOCOL_FLOOR = 0.2

Pair = tuple[int, int]


class SelectionCriterion(str, Enum):
    MAX_CORRELATION = "max_correlation"
    DISTANCE_REDUCTION = "distance_reduction"

    @classmethod
    def parse(cls, text: str | SelectionCriterion) -> SelectionCriterion:
        if isinstance(text, SelectionCriterion):
            return text
        key = text.strip().lower().replace("-", "_")
        aliases = {
            "max": cls.MAX_CORRELATION,
            "mcst": cls.MAX_CORRELATION,
            "emp": cls.DISTANCE_REDUCTION,
            "drst": cls.DISTANCE_REDUCTION,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)


@dataclass(frozen=True)
class EntanglerMap:
    pairs: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        for u, v in self.pairs:
            if u == v:
                raise ValueError(f"entangler pair ({u}, {v}) repeats a qubit")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> EntanglerMap:
        return cls(tuple((int(p[0]), int(p[1])) for p in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def qubits(self) -> set[int]:
        out: set[int] = set()
        for u, v in self.pairs:
            out.update((u, v))
        return out


def ladder_layer(n_qubits: int) -> EntanglerMap:
    return EntanglerMap(tuple((i, i + 1) for i in range(n_qubits - 1)))


def validate_finesse_ratios(ratios: Sequence[float]) -> tuple[float, ...]:
    out = tuple(float(r) for r in ratios)
    for r in out:
        if not math.isfinite(r) or r <= 0.0:
            raise FinesseRatioError(f"finesse ratio {r} must be a positive number")
    for a, b in zip(out, out[1:]):
        if not a > b:
            raise FinesseRatioError(f"finesse ratios must be strictly decreasing, got {a} then {b}")
    return out


@dataclass(frozen=True)
class LayerPlan:
    n_qubits: int
    qida_layers: tuple[EntanglerMap, ...]
    ladder_layer: EntanglerMap
    finesse_ratios: tuple[float, ...]
    criterion: SelectionCriterion | None = None

    def __post_init__(self) -> None:
        validate_finesse_ratios(self.finesse_ratios)
        for layer in self.layers():
            for q in layer.qubits():
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"layer touches qubit {q} outside 0..{self.n_qubits - 1}")
        covered = set().union(*(layer.qubits() for layer in self.layers()))
        if self.n_qubits > 1 and covered != set(range(self.n_qubits)):
            missing = sorted(set(range(self.n_qubits)) - covered)
            raise ValueError(f"qubits {missing} appear in no layer")

    def layers(self) -> list[EntanglerMap]:
        return [*self.qida_layers, self.ladder_layer]

    def n_correlators(self) -> int:
        return sum(len(layer) for layer in self.layers())

    def cnot_count(self) -> int:
        return 2 * self.n_correlators()


def chunk_pairs(qmi: QmiMatrix, finesse_ratios: Sequence[float]) -> list[WeightedGraph]:
    """One graph per ratio; edges carry the raw QMI value as weight."""
    ratios = validate_finesse_ratios(finesse_ratios)
    chunks: list[WeightedGraph] = []
    upper = math.inf
    for lower in ratios:
        edges = [(u, v, value) for u, v, value in qmi.pairs() if lower <= value < upper]
        chunks.append(WeightedGraph.from_edges(qmi.n_qubits, edges))
        upper = lower
    return chunks


def _select(chunk: WeightedGraph, criterion: SelectionCriterion) -> EntanglerMap:
    if criterion is SelectionCriterion.MAX_CORRELATION:
        graph = chunk
        objective = Objective.MAXIMIZE
    else:
        graph = WeightedGraph.from_edges(
            chunk.n_vertices, ((u, v, abs(u - v)) for u, v, _ in chunk.edges)
        )
        objective = Objective.MINIMIZE
    forest = spanning_forest(graph, objective)
    return EntanglerMap(tuple(sorted((u, v) for u, v, _ in forest)))


def build_layers(
    qmi: QmiMatrix,
    finesse_ratios: Sequence[float],
    criterion: SelectionCriterion | str = SelectionCriterion.MAX_CORRELATION,
) -> LayerPlan:
    criterion = SelectionCriterion.parse(criterion)
    chunks = chunk_pairs(qmi, finesse_ratios)
    layers = []
    for m, chunk in enumerate(chunks):
        layer = _select(chunk, criterion)
        log.info(
            "layer chunk=%s candidates=%s selected=%s criterion=%s",
            m,
            len(chunk),
            len(layer),
            criterion.value,
        )
        layers.append(layer)
    return LayerPlan(
        n_qubits=qmi.n_qubits,
        qida_layers=tuple(layers),
        ladder_layer=ladder_layer(qmi.n_qubits),
        finesse_ratios=validate_finesse_ratios(finesse_ratios),
        criterion=criterion,
    )


def check_finesse_protocol(
    qmi: QmiMatrix,
    finesse_ratios: Sequence[float],
    plan: LayerPlan,
    max_chunk_pairs: int | None = None,
) -> list[str]:
    """Advisory notes on a ratio choice; nothing here is enforced."""
    ratios = validate_finesse_ratios(finesse_ratios)
    notes: list[str] = []
    if ratios and ratios[-1] >= PROTOCOL_FLOOR:
        notes.append(f"last finesse ratio {ratios[-1]:g} stops above the {PROTOCOL_FLOOR:g} QMI floor")
    covered = set().union(*(layer.qubits() for layer in plan.qida_layers)) if plan.qida_layers else set()
    uncovered = sorted(set(range(plan.n_qubits)) - covered)
    if uncovered:
        notes.append(f"qubits {uncovered} are reached only by the ladder layer")
    for m, chunk in enumerate(chunk_pairs(qmi, ratios)):
        if len(chunk) == 0:
            notes.append(f"chunk {m} holds no pairs")
        elif max_chunk_pairs is not None and len(chunk) > max_chunk_pairs:
            notes.append(f"chunk {m} holds {len(chunk)} candidate pairs (limit {max_chunk_pairs})")
    return notes
