from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
import scipy.optimize
from pydantic import BaseModel, ConfigDict, Field

from multiqida.hamcore.pauli import PauliSum
from multiqida.statesim.gates import Circuit
from multiqida.statesim.state import StateVector
from multiqida.vqe.objective import energy_and_gradient

log = logging.getLogger(__name__)

ObjectiveFn = Callable[[np.ndarray], tuple[float, np.ndarray]]


class LayerInitMode(str, Enum):
    ONE_SIDED = "one_sided"
    SYMMETRIC = "symmetric"


class VqeConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    gradient_tolerance: float = Field(default=1e-6, gt=0)
    max_iterations: int = Field(default=1000, ge=1)
    rng_seed: int = 0
    layer_init_halfwidth: float = Field(default=0.1, gt=0)
    layer_init_mode: LayerInitMode = LayerInitMode.ONE_SIDED
    layer0_init: str = Field(default="uniform_0_2pi", pattern="^uniform_0_2pi$")
    line_search_c1: float = Field(default=1e-4, gt=0, lt=1)
    line_search_c2: float = Field(default=0.9, gt=0, lt=1)


@dataclass
class OptResult:
    final_energy: float
    final_params: np.ndarray
    energy_trace: list[float] = field(default_factory=list)
    n_iterations: int = 0
    converged: bool = False
    message: str = ""


def bfgs_minimize(fun: ObjectiveFn, x0: np.ndarray, config: VqeConfig) -> OptResult:
    """BFGS with a strong-Wolfe line search; stops on the max-norm of the gradient."""
    x0 = np.asarray(x0, dtype=float).reshape(-1).copy()
    e0, _ = fun(x0)
    trace = [float(e0)]

    def callback(intermediate_result: scipy.optimize.OptimizeResult) -> None:
        trace.append(float(intermediate_result.fun))

    if x0.size == 0:
        return OptResult(float(e0), x0, trace, 0, True, "no parameters")

    res = scipy.optimize.minimize(
        fun,
        x0,
        jac=True,
        method="BFGS",
        callback=callback,
        options={
            "gtol": config.gradient_tolerance,
            "norm": np.inf,
            "maxiter": config.max_iterations,
            "c1": config.line_search_c1,
            "c2": config.line_search_c2,
        },
    )
    x_best = np.asarray(res.x, dtype=float)
    e_best = float(res.fun)
    if e_best > trace[0]:
        x_best, e_best = x0, trace[0]
    if trace[-1] != e_best:
        trace.append(e_best)
    if not res.success:
        log.info("bfgs stopped status=%s message=%s energy=%s", res.status, res.message, e_best)
    return OptResult(
        final_energy=e_best,
        final_params=x_best,
        energy_trace=trace,
        n_iterations=int(res.nit),
        converged=bool(res.success),
        message=str(res.message),
    )


def minimize(
    circuit: Circuit,
    init_params: np.ndarray,
    hamiltonian: PauliSum,
    config: VqeConfig,
    *,
    initial: StateVector | None = None,
) -> OptResult:
    theta0 = circuit.check_params(init_params)

    def fun(x: np.ndarray) -> tuple[float, np.ndarray]:
        return energy_and_gradient(circuit, x, hamiltonian, initial=initial)

    return bfgs_minimize(fun, theta0, config)
