"""Batch engine behind the CLI.

Output layout under ``out``::

    reference.json            energies epsilon is measured against
    qmi.csv, qmi_pairs.csv    QMI matrix and pairs in descending QMI
    summary.csv               one row per ansatz
    <ansatz>/plan.json        layer plan (Multi-QIDA ansaetze only)
    <ansatz>/records.jsonl    one run record per run, in run order
    <ansatz>/trajectories.jsonl
    <ansatz>/runs/            per-run files merged into the two above

Run ``i`` of a batch uses seed ``seed + i``.
"""

from __future__ import annotations

import logging
import shutil
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from multiqida.config import AnsatzKind, ExperimentConfig, Settings, settings
from multiqida.errors import QubitCountMismatchError, UndefinedMetricError
from multiqida.hamcore.fcidump import load_fcidump
from multiqida.hamcore.integrals import build_qubit_hamiltonian, hf_bitstring, neel_bitstring
from multiqida.hamcore.lattice import heisenberg_hamiltonian
from multiqida.hamcore.pauli import PauliSum
from multiqida.local_logging import merge_run_logs, run_log_paths, write_events
from multiqida.metrics.energies import correlation_energy_pct
from multiqida.metrics.export import read_run_records, summarize_records, write_summary_csv
from multiqida.metrics.symmetry import (
    SymmetryOperators,
    spin_lattice_operators,
    symmetry_expectations,
    symmetry_operators,
)
from multiqida.qmi.mutual_info import (
    QmiMatrix,
    load_qmi_csv,
    qmi_matrix,
    write_qmi_csv,
    write_ranked_pairs_csv,
)
from multiqida.qmi.sparse import dump_sparse_state, read_sparse_state, sparse_from_statevector
from multiqida.schemas.plan import dump_plan, load_plan
from multiqida.schemas.run import ReferenceEnergies, RunRecord, SummaryStats, TrajectoryRecord
from multiqida.statesim.exact import exact_ground_state
from multiqida.statesim.simulator import expectation
from multiqida.statesim.state import StateVector, basis_state, fidelity, overlap
from multiqida.topology.hea import HeaPlan
from multiqida.topology.layers import LayerPlan, SelectionCriterion, build_layers
from multiqida.vqe.incremental import VqeRun, hea_vqe, incremental_vqe
from multiqida.vqe.optimizer import VqeConfig

log = logging.getLogger(__name__)

REFERENCE_FILE = "reference.json"
SUMMARY_FILE = "summary.csv"
RECORDS_FILE = "records.jsonl"
TRAJECTORIES_FILE = "trajectories.jsonl"


@dataclass(frozen=True)
class Problem:
    system: str  # "molecular" | "spin"
    hamiltonian: PauliSum
    reference_bitstring: str
    e_reference: float
    e_exact: float
    exact_state: StateVector
    symmetry: SymmetryOperators

    @property
    def n_qubits(self) -> int:
        return self.hamiltonian.n_qubits

    def reference(self) -> ReferenceEnergies:
        return ReferenceEnergies(
            system=self.system,
            n_qubits=self.n_qubits,
            reference_bitstring=self.reference_bitstring,
            e_reference=self.e_reference,
            e_exact=self.e_exact,
        )


def load_problem(cfg: ExperimentConfig, env: Settings = settings) -> Problem:
    """Hamiltonian, reference determinant and the diagonalization oracle."""
    if cfg.fcidump is not None:
        mo = load_fcidump(cfg.fcidump)
        ham = build_qubit_hamiltonian(mo)
        ref = hf_bitstring(mo.n_spatial_orbitals, mo.n_alpha, mo.n_beta)
        system = "molecular"
        sym = symmetry_operators(mo.n_spatial_orbitals)
    else:
        spec = cfg.heisenberg
        assert spec is not None
        ham = heisenberg_hamiltonian(spec.n_qubits, spec.coupling, spec.topology)
        ref = neel_bitstring(spec.n_qubits)
        system = "spin"
        sym = spin_lattice_operators(spec.n_qubits)

    e_ref = expectation(basis_state(ham.n_qubits, ref), ham)
    e_exact, gs = exact_ground_state(ham, env.max_dense_qubits)
    log.info(
        "problem system=%s n_qubits=%s n_terms=%s e_reference=%s e_exact=%s",
        system,
        ham.n_qubits,
        len(ham.terms),
        e_ref,
        e_exact,
    )
    return Problem(system, ham, ref, e_ref, e_exact, gs, sym)


def hamiltonian_qubits(cfg: ExperimentConfig) -> int:
    """Qubit count of the configured Hamiltonian, without building it."""
    if cfg.fcidump is not None:
        return load_fcidump(cfg.fcidump).n_qubits
    assert cfg.heisenberg is not None
    return cfg.heisenberg.n_qubits


def resolve_qmi(cfg: ExperimentConfig, problem: Problem | None = None, env: Settings = settings) -> QmiMatrix:
    if cfg.qmi_matrix is not None or cfg.determinants is not None:
        if cfg.qmi_matrix is not None:
            qmi = load_qmi_csv(cfg.qmi_matrix)
            source = "QMI matrix"
        else:
            state = read_sparse_state(cfg.determinants, cfg.sd_cutoff, cfg.max_determinants)
            log.info("determinants loaded n_qubits=%s kept=%s", state.n_qubits, len(state))
            qmi = qmi_matrix(state)
            source = "determinant file"
        expected = problem.n_qubits if problem is not None else hamiltonian_qubits(cfg)
        if qmi.n_qubits != expected:
            raise QubitCountMismatchError(expected, qmi.n_qubits, source)
        return qmi
    problem = problem if problem is not None else load_problem(cfg, env)
    return qmi_matrix(sparse_from_statevector(problem.exact_state, cfg.sd_cutoff, cfg.max_determinants))


def write_qmi_outputs(
    cfg: ExperimentConfig, env: Settings = settings, problem: Problem | None = None
) -> QmiMatrix:
    """Write ``qmi.csv`` and ``qmi_pairs.csv`` (and ``ground_state.det`` for exact sources)."""
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    if cfg.qmi_exact and problem is None:
        problem = load_problem(cfg, env)
    qmi = resolve_qmi(cfg, problem, env)
    if cfg.qmi_exact:
        assert problem is not None
        sparse = sparse_from_statevector(problem.exact_state, cfg.sd_cutoff, cfg.max_determinants)
        with (out / "ground_state.det").open("w", encoding="utf-8", newline="\n") as f:
            dump_sparse_state(sparse, f)

    if cfg.qmi_matrix is not None:
        # external matrices pass through unchanged
        dest = out / "qmi.csv"
        if Path(cfg.qmi_matrix).resolve() != dest.resolve():
            shutil.copyfile(cfg.qmi_matrix, dest)
    else:
        with (out / "qmi.csv").open("w", encoding="utf-8", newline="\n") as f:
            write_qmi_csv(qmi, f)
    with (out / "qmi_pairs.csv").open("w", encoding="utf-8", newline="\n") as f:
        write_ranked_pairs_csv(qmi, f)
    log.info("qmi written out=%s n_qubits=%s max=%s", out, qmi.n_qubits, qmi.max_value())
    return qmi


def plan_for(
    cfg: ExperimentConfig, qmi: QmiMatrix, criterion: SelectionCriterion, n_qubits: int | None = None
) -> LayerPlan:
    """The plan file of the config when its criterion matches, else a fresh build from ``qmi``."""
    plan = None
    if cfg.plan is not None:
        loaded = load_plan(cfg.plan)
        if loaded.criterion in (None, criterion):
            plan = loaded
        else:
            log.info("plan file criterion=%s skipped for %s", loaded.criterion, criterion.value)
    if plan is None:
        plan = build_layers(qmi, cfg.finesse_ratios, criterion)
    if n_qubits is not None and plan.n_qubits != n_qubits:
        raise QubitCountMismatchError(n_qubits, plan.n_qubits, "layer plan")
    return plan


@dataclass(frozen=True)
class RunTask:
    run_id: int
    seed: int
    ansatz: AnsatzKind
    plan: LayerPlan | None
    hea_depth: int
    problem: Problem
    vqe: VqeConfig
    out_dir: Path


def _trajectory(task: RunTask, run: VqeRun) -> list[dict]:
    return [
        TrajectoryRecord(
            run_id=task.run_id,
            ansatz_label=task.ansatz.value,
            phase=p.phase.value,
            layer=p.layer,
            iteration=p.iteration,
            energy=p.energy,
        ).model_dump()
        for p in run.trajectory
    ]


def execute_run(task: RunTask) -> RunRecord:
    """One seeded VQE; failures become a ``failed`` record instead of raising."""
    problem = task.problem
    rng = np.random.default_rng(task.seed)
    record_path, trajectory_path = run_log_paths(task.out_dir, task.run_id)
    try:
        if task.ansatz is AnsatzKind.HEA:
            run = hea_vqe(
                problem.n_qubits, task.hea_depth, problem.hamiltonian, problem.reference_bitstring, task.vqe, rng
            )
            cnots = HeaPlan(problem.n_qubits, task.hea_depth).cnot_count()
        else:
            assert task.plan is not None
            run = incremental_vqe(task.plan, problem.hamiltonian, problem.reference_bitstring, task.vqe, rng)
            cnots = task.plan.cnot_count()

        state = run.final_state()
        e = run.result.final_energy
        try:
            eps: float | None = correlation_energy_pct(e, problem.e_reference, problem.e_exact)
        except UndefinedMetricError:
            eps = None
        sym = symmetry_expectations(state, problem.symmetry)
        record = RunRecord(
            run_id=task.run_id,
            ansatz_label=task.ansatz.value,
            seed=task.seed,
            final_energy=e,
            epsilon=eps,
            fidelity=fidelity(state, problem.exact_state),
            overlap=overlap(state, problem.exact_state),
            sz=sym["sz"],
            s2=sym["s2"],
            n_e=sym["n_e"],
            cnot_count=cnots,
            n_parameters=run.circuit.n_parameters,
            n_iterations=run.result.n_iterations,
            converged=run.result.converged,
            flagged_layers=[h.layer for h in run.history if h.flagged],
            layer_energies=[h.energy_relaxed for h in run.history] or [e],
        )
        trajectory = _trajectory(task, run)
        log.info(
            "run ansatz=%s run_id=%s seed=%s energy=%s epsilon=%s",
            task.ansatz.value,
            task.run_id,
            task.seed,
            e,
            eps,
        )
    except Exception as e:
        # a single failing run never stops the batch
        log.exception("run ansatz=%s run_id=%s seed=%s failed", task.ansatz.value, task.run_id, task.seed)
        record = RunRecord(
            run_id=task.run_id,
            ansatz_label=task.ansatz.value,
            seed=task.seed,
            status="failed",
            error=f"{type(e).__name__}: {e}",
        )
        trajectory = []

    write_events(record_path, [record.model_dump(mode="json")])
    write_events(trajectory_path, trajectory)
    return record


def _execute_all(tasks: list[RunTask], workers: int) -> list[RunRecord]:
    if workers <= 1 or len(tasks) <= 1:
        return [execute_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps run order
        return list(pool.map(execute_run, tasks))


@dataclass
class BatchResult:
    reference: ReferenceEnergies
    records: dict[str, list[RunRecord]]
    summaries: list[SummaryStats]


def run_batch(cfg: ExperimentConfig, env: Settings = settings) -> BatchResult:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    log.info("batch name=%s ansatz=%s runs=%s seed=%s", cfg.name, [a.value for a in cfg.ansatz], cfg.runs, cfg.seed)
    problem = load_problem(cfg, env)
    qmi: QmiMatrix | None = None
    if any(a is not AnsatzKind.HEA for a in cfg.ansatz):
        qmi = write_qmi_outputs(cfg, env, problem)
    reference = problem.reference()
    (out / REFERENCE_FILE).write_text(
        reference.model_dump_json(indent=2) + "\n", encoding="utf-8", newline="\n"
    )

    workers = cfg.workers if cfg.workers is not None else env.workers
    all_records: dict[str, list[RunRecord]] = {}
    for ansatz in dict.fromkeys(cfg.ansatz):
        label_dir = out / ansatz.value
        label_dir.mkdir(parents=True, exist_ok=True)
        plan = None
        if ansatz.criterion is not None:
            assert qmi is not None
            plan = plan_for(cfg, qmi, ansatz.criterion, problem.n_qubits)
            dump_plan(plan, label_dir / "plan.json")

        tasks = [
            RunTask(
                run_id=i,
                seed=cfg.seed + i,
                ansatz=ansatz,
                plan=plan,
                hea_depth=cfg.hea_depth,
                problem=problem,
                vqe=cfg.vqe_config(cfg.seed + i),
                out_dir=label_dir,
            )
            for i in range(cfg.runs)
        ]
        log.info("batch ansatz=%s runs=%s workers=%s", ansatz.value, cfg.runs, workers)
        records = _execute_all(tasks, workers)

        parts = [run_log_paths(label_dir, t.run_id) for t in tasks]
        merge_run_logs([p[0] for p in parts], label_dir / RECORDS_FILE)
        merge_run_logs([p[1] for p in parts], label_dir / TRAJECTORIES_FILE)
        n_failed = sum(1 for r in records if not r.ok)
        if n_failed:
            log.warning("batch ansatz=%s failed_runs=%s of %s", ansatz.value, n_failed, len(records))
        all_records[ansatz.value] = records

    summaries = summarize_output(out)
    return BatchResult(reference, all_records, summaries)


def load_reference(out: str | Path) -> ReferenceEnergies:
    raw = (Path(out) / REFERENCE_FILE).read_text(encoding="utf-8")
    return ReferenceEnergies.model_validate_json(raw)


def summarize_output(out: str | Path, dest: str | Path | None = None) -> list[SummaryStats]:
    """Recompute ``summary.csv`` from every ``<ansatz>/records.jsonl`` under ``out``."""
    out = Path(out)
    reference = load_reference(out)
    rows: list[SummaryStats] = []
    for ansatz in AnsatzKind:
        path = out / ansatz.value / RECORDS_FILE
        if not path.exists():
            continue
        records = read_run_records(path)
        try:
            rows += summarize_records(records, reference.e_reference, reference.e_exact)
        except UndefinedMetricError as e:
            log.error("summary ansatz=%s skipped: %s", ansatz.value, e)
    dest_path = Path(dest) if dest is not None else out / SUMMARY_FILE
    with dest_path.open("w", encoding="utf-8", newline="\n") as f:
        write_summary_csv(rows, f)
    return rows
