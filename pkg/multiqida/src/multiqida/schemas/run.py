from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator


class RunRecord(BaseModel):
    model_config = ConfigDict(extra="ignore")

    run_id: int
    ansatz_label: str
    seed: int
    status: str = "ok"  # "ok" | "failed"

    final_energy: float | None = None
    epsilon: float | None = None
    fidelity: float | None = None
    overlap: float | None = None
    sz: float | None = None
    s2: float | None = None
    n_e: float | None = None

    cnot_count: int = 0
    n_parameters: int = 0
    n_iterations: int = 0
    converged: bool = False
    flagged_layers: list[int] = Field(default_factory=list)
    layer_energies: list[float] = Field(default_factory=list)

    error: str | None = None

    @field_validator("epsilon")
    @classmethod
    def _finite_epsilon(cls, v: float | None) -> float | None:
        if v is not None and not math.isfinite(v):
            raise ValueError("epsilon must be finite")
        return v

    @property
    def ok(self) -> bool:
        return self.status == "ok" and self.final_energy is not None


class TrajectoryRecord(BaseModel):
    run_id: int
    ansatz_label: str
    phase: str
    layer: int
    iteration: int
    energy: float


class SummaryStats(BaseModel):
    ansatz_label: str
    n_runs: int
    n_failed: int = 0
    cnot_count: int = 0

    epsilon_avg: float
    epsilon_std: float
    epsilon_best: float
    energy_avg: float
    energy_best: float
    mced_pct: float
    mced_hartree: float
    fidelity_avg: float | None = None

    e_reference: float
    e_exact: float


SUMMARY_COLUMNS: tuple[str, ...] = tuple(SummaryStats.model_fields)


class ReferenceEnergies(BaseModel):
    """Energies every epsilon of a batch is measured against."""

    system: str
    n_qubits: int
    reference_bitstring: str
    e_reference: float
    e_exact: float
