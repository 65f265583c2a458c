from __future__ import annotations

import io
import json
from pathlib import Path

import numpy as np
import pytest

from multiqida.errors import UndefinedMetricError
from multiqida.hamcore.integrals import neel_bitstring
from multiqida.hamcore.pauli import PauliSum
from multiqida.metrics import (
    correlation_energy_pct,
    mced,
    read_summary_csv,
    spin_lattice_operators,
    summarize,
    summarize_records,
    summarize_records_file,
    symmetry_expectations,
    symmetry_operators,
    write_summary_csv,
)
from multiqida.schemas.run import SUMMARY_COLUMNS, RunRecord
from multiqida.statesim.exact import exact_ground_state
from multiqida.statesim.state import basis_state


def _record(run_id: int, energy: float | None, label: str = "qida-max", **kw) -> RunRecord:
    status = "ok" if energy is not None else "failed"
    return RunRecord(
        run_id=run_id, ansatz_label=label, seed=run_id, status=status, final_energy=energy, cnot_count=12, **kw
    )


def test_mced_of_three_runs() -> None:
    assert mced([100.0, 90.0, 80.0]) == pytest.approx(10.0)
    assert mced([42.0]) == 0.0
    with pytest.raises(UndefinedMetricError):
        mced([])


def test_correlation_energy() -> None:
    assert correlation_energy_pct(-2.0, -1.0, -2.0) == pytest.approx(100.0)
    assert correlation_energy_pct(-1.5, -1.0, -2.0) == pytest.approx(50.0)
    # above the reference energy
    assert correlation_energy_pct(-0.5, -1.0, -2.0) == pytest.approx(-50.0)
    with pytest.raises(UndefinedMetricError):
        correlation_energy_pct(-1.0, -1.0, -1.0)


def test_summary_statistics() -> None:
    records = [
        _record(0, -2.0, fidelity=1.0),
        _record(1, -1.9, fidelity=0.9),
        _record(2, -1.8, fidelity=0.8),
        _record(3, None, error="boom"),
    ]
    s = summarize(records, e_hf=-1.0, e_exact=-2.0)
    assert s.n_runs == 4
    assert s.n_failed == 1
    assert s.cnot_count == 12
    assert s.epsilon_best == pytest.approx(100.0)
    assert s.epsilon_avg == pytest.approx(90.0)
    assert s.epsilon_std == pytest.approx(np.std([100.0, 90.0, 80.0]))
    assert s.mced_pct == pytest.approx(10.0)
    assert s.mced_hartree == pytest.approx(0.1)
    assert s.energy_best == -2.0
    assert s.fidelity_avg == pytest.approx(0.9)


def test_summary_rejects_unusable_batches() -> None:
    with pytest.raises(UndefinedMetricError):
        summarize([], -1.0, -2.0)
    with pytest.raises(UndefinedMetricError):
        summarize([_record(0, None)], -1.0, -2.0)
    with pytest.raises(ValueError):
        summarize([_record(0, -1.5), _record(1, -1.5, label="hea")], -1.0, -2.0)


def test_summaries_group_by_label_in_order() -> None:
    records = [_record(0, -1.5, label="hea"), _record(0, -2.0), _record(1, -1.6, label="hea")]
    rows = summarize_records(records, -1.0, -2.0)
    assert [r.ansatz_label for r in rows] == ["hea", "qida-max"]
    assert rows[0].n_runs == 2


def test_summary_csv_recomputes_from_records(tmp_path: Path) -> None:
    records = [_record(i, -1.0 - 0.25 * i) for i in range(4)]
    path = tmp_path / "records.jsonl"
    path.write_text("".join(json.dumps(r.model_dump(mode="json")) + "\n" for r in records), encoding="utf-8")
    rows = summarize_records_file(path, -1.0, -2.0)

    buf = io.StringIO()
    write_summary_csv(rows, buf)
    header = buf.getvalue().splitlines()[0]
    assert header.split(",") == list(SUMMARY_COLUMNS)
    buf.seek(0)
    assert read_summary_csv(buf) == rows


def test_bad_record_line_is_reported(tmp_path: Path) -> None:
    path = tmp_path / "records.jsonl"
    path.write_text('{"run_id": 0, "ansatz_label": "hea", "seed": 0}\n{"run_id": "x"}\n', encoding="utf-8")
    with pytest.raises(ValueError, match=":2:"):
        summarize_records_file(path, -1.0, -2.0)


def test_non_finite_epsilon_is_rejected() -> None:
    with pytest.raises(ValueError):
        _record(0, -1.0, epsilon=float("inf"))


def test_h2_ground_state_symmetries(h2_hamiltonian: PauliSum) -> None:
    _, ground = exact_ground_state(h2_hamiltonian)
    sym = symmetry_expectations(ground, symmetry_operators(2))
    assert abs(sym["sz"]) <= 1e-10
    assert abs(sym["s2"]) <= 1e-10
    assert sym["n_e"] == pytest.approx(2.0, abs=1e-10)


def test_triplet_determinant_has_unit_spin() -> None:
    # both electrons alpha: qubits 0 and 1
    sym = symmetry_expectations(basis_state(4, "0011"), symmetry_operators(2))
    assert sym["sz"] == pytest.approx(1.0)
    assert sym["s2"] == pytest.approx(2.0)
    assert sym["n_e"] == pytest.approx(2.0)


def test_spin_lattice_observables(ring4_hamiltonian: PauliSum) -> None:
    ops = spin_lattice_operators(4)
    neel = symmetry_expectations(basis_state(4, neel_bitstring(4)), ops)
    assert neel == pytest.approx({"sz": 0.0, "s2": 2.0, "n_e": 2.0}, abs=1e-12)
    _, ground = exact_ground_state(ring4_hamiltonian)
    singlet = symmetry_expectations(ground, ops)
    assert abs(singlet["s2"]) <= 1e-10
    assert abs(singlet["sz"]) <= 1e-10
