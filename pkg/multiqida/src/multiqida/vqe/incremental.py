"""Layer-by-layer VQE.

Layer 0 starts from angles drawn uniformly in ``[0, 2 pi)`` and is optimized
directly. Every later layer is first optimized alone on top of the cached
state of the previous layers (its angles start near zero, where the SO(4)
correlator is the identity), then the whole circuit is relaxed from the
concatenated parameters.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from multiqida.hamcore.pauli import PauliSum
from multiqida.statesim.gates import Circuit
from multiqida.statesim.simulator import apply_circuit
from multiqida.statesim.state import StateVector
from multiqida.topology.hea import HeaPlan
from multiqida.topology.layers import LayerPlan
from multiqida.vqe.ansatz import LayeredAnsatz, hea_circuit
from multiqida.vqe.objective import energy
from multiqida.vqe.optimizer import LayerInitMode, OptResult, VqeConfig, minimize

log = logging.getLogger(__name__)

MONOTONE_TOL = 1e-9
TWO_PI = 2.0 * np.pi


class Phase(str, Enum):
    INDEPENDENT = "independent"
    RELAXATION = "relaxation"


@dataclass(frozen=True)
class TrajectoryPoint:
    phase: Phase
    layer: int
    iteration: int
    energy: float


@dataclass
class LayerHistory:
    layer: int
    n_parameters: int
    energy_init: float
    energy_independent: float | None
    energy_relaxed: float
    iterations_independent: int = 0
    iterations_relaxation: int = 0
    flagged: bool = False


@dataclass
class VqeRun:
    result: OptResult
    circuit: Circuit
    history: list[LayerHistory] = field(default_factory=list)
    trajectory: list[TrajectoryPoint] = field(default_factory=list)

    def final_state(self) -> StateVector:
        return apply_circuit(self.circuit, self.result.final_params)


def _points(phase: Phase, layer: int, trace: list[float]) -> list[TrajectoryPoint]:
    return [TrajectoryPoint(phase, layer, i, e) for i, e in enumerate(trace)]


def draw_layer_offsets(rng: np.random.Generator, size: int, config: VqeConfig) -> np.ndarray:
    h = config.layer_init_halfwidth
    if config.layer_init_mode is LayerInitMode.SYMMETRIC:
        return rng.uniform(-h, h, size=size)
    return rng.uniform(0.0, h, size=size)


def incremental_vqe(
    plan: LayerPlan,
    hamiltonian: PauliSum,
    reference_bitstring: str,
    config: VqeConfig,
    rng: np.random.Generator | None = None,
) -> VqeRun:
    ansatz = LayeredAnsatz.from_plan(plan, reference_bitstring)
    if not ansatz.layers:
        raise ValueError("layer plan holds no correlators")
    rng = rng if rng is not None else np.random.default_rng(config.rng_seed)

    first = ansatz.layers[0]
    circuit = ansatz.circuit(upto=0)
    theta0 = rng.uniform(0.0, TWO_PI, size=first.n_parameters)
    res = minimize(circuit, theta0, hamiltonian, config)
    history = [
        LayerHistory(
            layer=0,
            n_parameters=first.n_parameters,
            energy_init=res.energy_trace[0],
            energy_independent=None,
            energy_relaxed=res.final_energy,
            iterations_relaxation=res.n_iterations,
        )
    ]
    trajectory = _points(Phase.RELAXATION, 0, res.energy_trace)
    trace = list(res.energy_trace)
    n_iter = res.n_iterations
    log.info("vqe layer=0 phase=relaxation energy=%s iterations=%s", res.final_energy, res.n_iterations)

    theta = res.final_params
    e_prev = res.final_energy
    state_prev = apply_circuit(circuit, theta)

    for layer in ansatz.layers[1:]:
        idx = layer.index
        layer_only = ansatz.layer_circuit(idx)
        offsets = draw_layer_offsets(rng, layer.n_parameters, config)
        e_init = energy(layer_only, offsets, hamiltonian, initial=state_prev)
        ind = minimize(layer_only, offsets, hamiltonian, config, initial=state_prev)
        trajectory += _points(Phase.INDEPENDENT, idx, ind.energy_trace)
        trace += ind.energy_trace
        n_iter += ind.n_iterations

        flagged = ind.final_energy > e_prev + MONOTONE_TOL
        new_params = ind.final_params
        if flagged:
            log.warning(
                "vqe layer=%s phase=independent energy=%s above previous=%s; restarting layer at identity",
                idx,
                ind.final_energy,
                e_prev,
            )
            new_params = np.zeros(layer.n_parameters)

        circuit = ansatz.circuit(upto=idx)
        res = minimize(circuit, np.concatenate([theta, new_params]), hamiltonian, config)
        trajectory += _points(Phase.RELAXATION, idx, res.energy_trace)
        trace += res.energy_trace
        n_iter += res.n_iterations
        log.info(
            "vqe layer=%s phase=relaxation energy=%s independent=%s iterations=%s",
            idx,
            res.final_energy,
            ind.final_energy,
            res.n_iterations,
        )
        history.append(
            LayerHistory(
                layer=idx,
                n_parameters=layer.n_parameters,
                energy_init=e_init,
                energy_independent=ind.final_energy,
                energy_relaxed=res.final_energy,
                iterations_independent=ind.n_iterations,
                iterations_relaxation=res.n_iterations,
                flagged=flagged,
            )
        )
        theta = res.final_params
        e_prev = res.final_energy
        state_prev = apply_circuit(circuit, theta)

    final = OptResult(
        final_energy=res.final_energy,
        final_params=theta,
        energy_trace=trace,
        n_iterations=n_iter,
        converged=res.converged,
        message=res.message,
    )
    return VqeRun(final, circuit, history, trajectory)


def hea_vqe(
    n_qubits: int,
    depth: int,
    hamiltonian: PauliSum,
    reference_bitstring: str,
    config: VqeConfig,
    rng: np.random.Generator | None = None,
) -> VqeRun:
    circuit = hea_circuit(HeaPlan(n_qubits, depth), reference_bitstring)
    rng = rng if rng is not None else np.random.default_rng(config.rng_seed)
    theta0 = rng.uniform(0.0, TWO_PI, size=circuit.n_parameters)
    res = minimize(circuit, theta0, hamiltonian, config)
    log.info("hea depth=%s energy=%s iterations=%s", depth, res.final_energy, res.n_iterations)
    return VqeRun(res, circuit, [], _points(Phase.RELAXATION, 0, res.energy_trace))
