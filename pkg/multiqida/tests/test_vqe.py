from __future__ import annotations

import numpy as np
import pytest
import scipy.optimize

from conftest import H2_GROUND_ENERGY, H2_HF_BITSTRING, H2_HF_ENERGY
from multiqida.hamcore.integrals import neel_bitstring
from multiqida.hamcore.lattice import heisenberg_hamiltonian
from multiqida.hamcore.pauli import PauliString, PauliSum
from multiqida.metrics.energies import correlation_energy_pct
from multiqida.metrics.symmetry import symmetry_expectations, symmetry_operators
from multiqida.qmi.mutual_info import qmi_matrix
from multiqida.statesim.exact import exact_ground_state
from multiqida.statesim.gates import SO4_PARAMS, CircuitBuilder, so4_unitary
from multiqida.statesim.simulator import apply_circuit
from multiqida.statesim.state import StateVector, fidelity
from multiqida.topology.hea import HeaPlan
from multiqida.topology.layers import EntanglerMap, LayerPlan, build_layers, ladder_layer
from multiqida.vqe.ansatz import LayeredAnsatz, hea_circuit
from multiqida.vqe.incremental import (
    MONOTONE_TOL,
    Phase,
    draw_layer_offsets,
    hea_vqe,
    incremental_vqe,
)
from multiqida.vqe.objective import energy, energy_and_gradient, finite_difference_gradient, gradient
from multiqida.vqe.optimizer import LayerInitMode, VqeConfig, bfgs_minimize, minimize

FSWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]],
    dtype=float,
)


def _random_hamiltonian(n: int, rng: np.random.Generator, n_terms: int = 10) -> PauliSum:
    terms = []
    for _ in range(n_terms):
        letters = "".join(rng.choice(list("IXYZ"), size=n))
        terms.append((float(rng.normal()), PauliString.from_letters(letters)))
    return PauliSum.from_terms(n, terms)


def _random_layer_plan(rng: np.random.Generator) -> LayerPlan:
    n = int(rng.integers(2, 7))
    n_layers = int(rng.integers(0, 3))
    layers = []
    for _ in range(n_layers):
        k = int(rng.integers(1, n))
        pairs = set()
        while len(pairs) < k:
            a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
            pairs.add((min(a, b), max(a, b)))
        layers.append(sorted(pairs))
    return LayerPlan(
        n_qubits=n,
        qida_layers=tuple(EntanglerMap.from_pairs(p) for p in layers),
        ladder_layer=ladder_layer(n),
        finesse_ratios=tuple(0.5 / (i + 1) for i in range(n_layers)),
    )


@pytest.fixture(scope="module")
def h2_plan(h2_hamiltonian: PauliSum) -> LayerPlan:
    _, ground = exact_ground_state(h2_hamiltonian)
    return build_layers(qmi_matrix(ground), [0.05])


@pytest.fixture(scope="module")
def ring4_plan(ring4_hamiltonian: PauliSum) -> LayerPlan:
    _, ground = exact_ground_state(ring4_hamiltonian)
    return build_layers(qmi_matrix(ground), [0.5, 0.25, 0.1])


def test_analytic_gradient_matches_finite_differences(rng: np.random.Generator) -> None:
    for _ in range(50):
        plan = _random_layer_plan(rng)
        n = plan.n_qubits
        ref = "".join(rng.choice(["0", "1"], size=n))
        circuit = LayeredAnsatz.from_plan(plan, ref).circuit()
        ham = _random_hamiltonian(n, rng)
        theta = rng.uniform(0, 2 * np.pi, size=circuit.n_parameters)
        value, grad = energy_and_gradient(circuit, theta, ham)
        assert value == pytest.approx(energy(circuit, theta, ham), abs=1e-12)
        np.testing.assert_allclose(grad, finite_difference_gradient(circuit, theta, ham), atol=1e-6)


def test_gradient_on_top_of_a_prepared_state(rng: np.random.Generator) -> None:
    ham = _random_hamiltonian(4, rng)
    initial = StateVector.from_amplitudes(rng.normal(size=16) + 1j * rng.normal(size=16))
    circuit = CircuitBuilder(4).so4(0, 2).so4(1, 3).build()
    theta = rng.uniform(-0.1, 0.1, size=circuit.n_parameters)
    _, grad = energy_and_gradient(circuit, theta, ham, initial=initial)
    expected = finite_difference_gradient(circuit, theta, ham, initial=initial)
    np.testing.assert_allclose(grad, expected, atol=1e-6)
    np.testing.assert_allclose(gradient(circuit, theta, ham, initial=initial), grad, atol=1e-12)


def test_hea_gradient(rng: np.random.Generator) -> None:
    circuit = hea_circuit(HeaPlan(3, 2), "010")
    ham = _random_hamiltonian(3, rng)
    theta = rng.uniform(0, 2 * np.pi, size=circuit.n_parameters)
    _, grad = energy_and_gradient(circuit, theta, ham)
    np.testing.assert_allclose(grad, finite_difference_gradient(circuit, theta, ham), atol=1e-6)
    assert circuit.cnot_count() == 4
    assert circuit.n_parameters == HeaPlan(3, 2).n_parameters


def test_empty_circuit_gives_reference_energy(h2_hamiltonian: PauliSum) -> None:
    circuit = CircuitBuilder(4).build(H2_HF_BITSTRING)
    assert energy(circuit, np.zeros(0), h2_hamiltonian) == pytest.approx(H2_HF_ENERGY, abs=1e-8)


def test_variational_bound(h2_hamiltonian: PauliSum, h2_plan: LayerPlan) -> None:
    rng = np.random.default_rng(3)
    circuit = LayeredAnsatz.from_plan(h2_plan, H2_HF_BITSTRING).circuit()
    for _ in range(100):
        theta = rng.uniform(0, 2 * np.pi, size=circuit.n_parameters)
        assert energy(circuit, theta, h2_hamiltonian) >= H2_GROUND_ENERGY - 1e-9


def test_correlator_reaches_fermionic_swap() -> None:
    def residual(p: np.ndarray) -> np.ndarray:
        u = so4_unitary(p)
        return np.concatenate([(u.real - FSWAP).ravel(), u.imag.ravel()])

    rng = np.random.default_rng(11)
    best = np.inf
    for _ in range(50):
        res = scipy.optimize.least_squares(
            residual, rng.uniform(-np.pi, np.pi, SO4_PARAMS), method="lm", xtol=1e-15, ftol=1e-15
        )
        best = min(best, float(np.linalg.norm(res.fun)))
        if best < 1e-6:
            break
    assert best < 1e-6


def test_bfgs_on_a_quadratic() -> None:
    rng = np.random.default_rng(5)
    q = np.linalg.qr(rng.normal(size=(5, 5)))[0]
    a = q @ np.diag([1.0, 2.0, 3.0, 4.0, 5.0]) @ q.T
    b = rng.normal(size=5)

    def fun(x: np.ndarray) -> tuple[float, np.ndarray]:
        return float(0.5 * x @ a @ x - b @ x), a @ x - b

    res = bfgs_minimize(fun, np.zeros(5), VqeConfig(gradient_tolerance=1e-8))
    assert res.converged
    np.testing.assert_allclose(res.final_params, np.linalg.solve(a, b), atol=1e-6)
    assert res.n_iterations <= 20
    assert res.energy_trace[0] == 0.0
    assert res.energy_trace[-1] == res.final_energy


def test_bfgs_without_parameters() -> None:
    res = bfgs_minimize(lambda x: (1.5, np.zeros(0)), np.zeros(0), VqeConfig())
    assert res.final_energy == 1.5
    assert res.converged
    assert res.energy_trace == [1.5]


def test_minimize_reaches_a_stationary_point(h2_hamiltonian: PauliSum) -> None:
    circuit = CircuitBuilder(4).so4(0, 1).so4(2, 3).so4(1, 2).build(H2_HF_BITSTRING)
    rng = np.random.default_rng(2)
    res = minimize(circuit, rng.uniform(0, 2 * np.pi, circuit.n_parameters), h2_hamiltonian, VqeConfig())
    _, grad = energy_and_gradient(circuit, res.final_params, h2_hamiltonian)
    if res.converged:
        assert np.abs(grad).max() <= 1e-6
    assert res.final_energy <= res.energy_trace[0]


@pytest.mark.parametrize("mode", list(LayerInitMode))
def test_layer_offsets_stay_in_their_window(mode: LayerInitMode) -> None:
    config = VqeConfig(layer_init_halfwidth=0.05, layer_init_mode=mode)
    offsets = draw_layer_offsets(np.random.default_rng(0), 600, config)
    assert offsets.max() <= 0.05
    if mode is LayerInitMode.ONE_SIDED:
        assert offsets.min() >= 0.0
    else:
        assert offsets.min() >= -0.05
        assert offsets.min() < 0.0


def test_vqe_config_rejects_unknown_fields() -> None:
    with pytest.raises(ValueError):
        VqeConfig(gradient_tolerance=-1.0)
    with pytest.raises(ValueError):
        VqeConfig(tolerance=1e-6)


def _assert_monotone(run) -> None:
    relaxed = [h.energy_relaxed for h in run.history]
    for before, after in zip(relaxed, relaxed[1:]):
        assert after <= before + MONOTONE_TOL + 1e-12
    assert run.result.final_energy == relaxed[-1]


def test_incremental_run_is_monotone_on_h2(h2_hamiltonian: PauliSum, h2_plan: LayerPlan) -> None:
    ansatz = LayeredAnsatz.from_plan(h2_plan, H2_HF_BITSTRING)
    for seed in range(3):
        run = incremental_vqe(
            h2_plan, h2_hamiltonian, H2_HF_BITSTRING, VqeConfig(), np.random.default_rng(seed)
        )
        assert len(run.history) == len(ansatz.layers)
        assert run.circuit.n_parameters == ansatz.n_parameters
        _assert_monotone(run)
        phases = {p.phase for p in run.trajectory}
        assert phases == {Phase.INDEPENDENT, Phase.RELAXATION}
        assert run.history[0].energy_independent is None


def test_new_layer_starts_near_the_previous_optimum(h2_hamiltonian: PauliSum, h2_plan: LayerPlan) -> None:
    run = incremental_vqe(h2_plan, h2_hamiltonian, H2_HF_BITSTRING, VqeConfig(), np.random.default_rng(0))
    assert len(run.history) >= 2
    first, second = run.history[0], run.history[1]
    # small offsets around the identity keep the warm start close
    assert abs(second.energy_init - first.energy_relaxed) <= 0.05


def test_incremental_run_is_monotone_on_ring(ring4_hamiltonian: PauliSum, ring4_plan: LayerPlan) -> None:
    run = incremental_vqe(
        ring4_plan, ring4_hamiltonian, neel_bitstring(4), VqeConfig(), np.random.default_rng(0)
    )
    _assert_monotone(run)
    assert run.final_state().n_qubits == 4


def test_same_seed_same_run(h2_hamiltonian: PauliSum, h2_plan: LayerPlan) -> None:
    runs = [
        incremental_vqe(h2_plan, h2_hamiltonian, H2_HF_BITSTRING, VqeConfig(), np.random.default_rng(7))
        for _ in range(2)
    ]
    assert runs[0].result.final_energy == runs[1].result.final_energy
    assert np.array_equal(runs[0].result.final_params, runs[1].result.final_params)


def test_plan_without_correlators_is_rejected(h2_hamiltonian: PauliSum) -> None:
    plan = LayerPlan(n_qubits=1, qida_layers=(), ladder_layer=EntanglerMap(), finesse_ratios=())
    with pytest.raises(ValueError):
        incremental_vqe(plan, PauliSum.from_label(1, "Z0"), "0", VqeConfig())


@pytest.mark.slow
def test_h2_ground_state_recovery(h2_hamiltonian: PauliSum, h2_plan: LayerPlan) -> None:
    exact, ground = exact_ground_state(h2_hamiltonian)
    runs = [
        incremental_vqe(h2_plan, h2_hamiltonian, H2_HF_BITSTRING, VqeConfig(), np.random.default_rng(seed))
        for seed in range(20)
    ]
    best = min(runs, key=lambda r: r.result.final_energy)
    assert best.result.final_energy == pytest.approx(exact, abs=1e-6)

    state = best.final_state()
    assert fidelity(state, ground) > 0.999
    sym = symmetry_expectations(state, symmetry_operators(2))
    assert abs(sym["sz"]) <= 1e-3
    assert sym["s2"] <= 1e-3
    assert abs(sym["n_e"] - 2.0) <= 1e-3


@pytest.mark.slow
def test_heisenberg_ring_recovery(ring4_hamiltonian: PauliSum, ring4_plan: LayerPlan) -> None:
    neel = neel_bitstring(4)
    e_ref = energy(CircuitBuilder(4).build(neel), np.zeros(0), ring4_hamiltonian)
    exact, _ = exact_ground_state(ring4_hamiltonian)
    eps = []
    for seed in range(50):
        run = incremental_vqe(ring4_plan, ring4_hamiltonian, neel, VqeConfig(), np.random.default_rng(seed))
        eps.append(correlation_energy_pct(run.result.final_energy, e_ref, exact))
    assert sum(e >= 99.0 for e in eps) >= 45


def test_hea_recovers_the_two_site_singlet() -> None:
    ham = heisenberg_hamiltonian(2, 1.0)
    best = min(
        hea_vqe(2, 1, ham, "10", VqeConfig(), np.random.default_rng(seed)).result.final_energy
        for seed in range(10)
    )
    assert best == pytest.approx(-3.0, abs=1e-6)
    run = hea_vqe(2, 1, ham, "10", VqeConfig(), np.random.default_rng(0))
    assert run.circuit.cnot_count() == 1
    assert run.history == []
    assert apply_circuit(run.circuit, run.result.final_params).n_qubits == 2
