from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel, Field

from multiqida.topology.layers import EntanglerMap, LayerPlan, SelectionCriterion


class LayerPlanDocument(BaseModel):
    """JSON form of a layer plan; layers are arrays of ``[u, v]`` pairs."""

    n_qubits: int = Field(ge=1)
    criterion: str | None = None
    finesse_ratios: list[float] = Field(default_factory=list)
    qida_layers: list[list[tuple[int, int]]] = Field(default_factory=list)
    ladder_layer: list[tuple[int, int]] = Field(default_factory=list)
    cnot_count: int | None = None

    @classmethod
    def from_plan(cls, plan: LayerPlan) -> LayerPlanDocument:
        return cls(
            n_qubits=plan.n_qubits,
            criterion=plan.criterion.value if plan.criterion else None,
            finesse_ratios=list(plan.finesse_ratios),
            qida_layers=[list(layer.pairs) for layer in plan.qida_layers],
            ladder_layer=list(plan.ladder_layer.pairs),
            cnot_count=plan.cnot_count(),
        )

    def to_plan(self) -> LayerPlan:
        return LayerPlan(
            n_qubits=self.n_qubits,
            qida_layers=tuple(EntanglerMap.from_pairs(layer) for layer in self.qida_layers),
            ladder_layer=EntanglerMap.from_pairs(self.ladder_layer),
            finesse_ratios=tuple(self.finesse_ratios),
            criterion=SelectionCriterion.parse(self.criterion) if self.criterion else None,
        )


def dump_plan(plan: LayerPlan, path: str | Path) -> None:
    doc = LayerPlanDocument.from_plan(plan)
    Path(path).write_text(
        json.dumps(doc.model_dump(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_plan(path: str | Path) -> LayerPlan:
    raw = Path(path).read_text(encoding="utf-8-sig")
    return LayerPlanDocument.model_validate_json(raw).to_plan()
