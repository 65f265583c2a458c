from multiqida.vqe.ansatz import AnsatzLayer, LayeredAnsatz, hea_circuit
from multiqida.vqe.incremental import (
    LayerHistory,
    Phase,
    TrajectoryPoint,
    VqeRun,
    hea_vqe,
    incremental_vqe,
)
from multiqida.vqe.objective import energy, energy_and_gradient, finite_difference_gradient, gradient
from multiqida.vqe.optimizer import LayerInitMode, OptResult, VqeConfig, bfgs_minimize, minimize

__all__ = [
    "AnsatzLayer",
    "LayerHistory",
    "LayerInitMode",
    "LayeredAnsatz",
    "OptResult",
    "Phase",
    "TrajectoryPoint",
    "VqeConfig",
    "VqeRun",
    "bfgs_minimize",
    "energy",
    "energy_and_gradient",
    "finite_difference_gradient",
    "gradient",
    "hea_circuit",
    "hea_vqe",
    "incremental_vqe",
    "minimize",
]
