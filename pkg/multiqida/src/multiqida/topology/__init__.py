from multiqida.topology.graph import Objective, UnionFind, WeightedGraph, spanning_forest
from multiqida.topology.hea import HeaPlan, cnot_count, hea_ladder_plan
from multiqida.topology.layers import (
    EntanglerMap,
    LayerPlan,
    SelectionCriterion,
    build_layers,
    check_finesse_protocol,
    chunk_pairs,
    ladder_layer,
)

__all__ = [
    "EntanglerMap",
    "HeaPlan",
    "LayerPlan",
    "Objective",
    "SelectionCriterion",
    "UnionFind",
    "WeightedGraph",
    "build_layers",
    "check_finesse_protocol",
    "chunk_pairs",
    "cnot_count",
    "hea_ladder_plan",
    "ladder_layer",
    "spanning_forest",
]
