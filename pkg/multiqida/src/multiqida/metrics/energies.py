from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from multiqida.errors import UndefinedMetricError
from multiqida.schemas.run import RunRecord, SummaryStats

log = logging.getLogger(__name__)


def correlation_energy_pct(e_vqe: float, e_hf: float, e_exact: float) -> float:
    """``100 (E_vqe - E_ref) / (E_exact - E_ref)``; negative when E_vqe lies above E_ref."""
    denom = e_exact - e_hf
    if denom == 0.0:
        raise UndefinedMetricError("exact and reference energies coincide; correlation energy is undefined")
    return 100.0 * (e_vqe - e_hf) / denom


def mced(epsilons: Sequence[float]) -> float:
    """Mean absolute deviation of every run from the best (largest) epsilon."""
    if len(epsilons) == 0:
        raise UndefinedMetricError("MCED needs at least one run")
    eps = np.asarray(epsilons, dtype=float)
    return float(np.mean(np.abs(eps - eps.max())))


def summarize(records: Sequence[RunRecord], e_hf: float, e_exact: float) -> SummaryStats:
    if not records:
        raise UndefinedMetricError("no run records to summarize")
    labels = {r.ansatz_label for r in records}
    if len(labels) != 1:
        raise ValueError(f"records mix ansatz labels {sorted(labels)}")
    ok = [r for r in records if r.ok]
    if not ok:
        raise UndefinedMetricError(f"all {len(records)} runs of {records[0].ansatz_label} failed")

    energies = np.array([r.final_energy for r in ok], dtype=float)
    eps = np.array([correlation_energy_pct(e, e_hf, e_exact) for e in energies])
    fids = [r.fidelity for r in ok if r.fidelity is not None]
    e_best = float(energies.min())
    return SummaryStats(
        ansatz_label=records[0].ansatz_label,
        n_runs=len(records),
        n_failed=len(records) - len(ok),
        cnot_count=ok[0].cnot_count,
        epsilon_avg=float(eps.mean()),
        epsilon_std=float(eps.std(ddof=0)),
        epsilon_best=float(eps.max()),
        energy_avg=float(energies.mean()),
        energy_best=e_best,
        mced_pct=mced(eps),
        mced_hartree=float(np.mean(np.abs(energies - e_best))),
        fidelity_avg=float(np.mean(fids)) if fids else None,
        e_reference=e_hf,
        e_exact=e_exact,
    )
