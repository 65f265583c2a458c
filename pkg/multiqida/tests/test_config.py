from __future__ import annotations

from pathlib import Path

import pytest

from conftest import CONFIGS
from multiqida.config import (
    AnsatzKind,
    ExperimentConfig,
    Settings,
    load_experiment_config,
)
from multiqida.errors import ConfigError
from multiqida.hamcore.lattice import LatticeTopology
from multiqida.topology.layers import SelectionCriterion
from multiqida.vqe.optimizer import LayerInitMode


def _write(path: Path, text: str, *, bom: bool = False) -> Path:
    data = text.encode("utf-8")
    path.write_bytes((b"\xef\xbb\xbf" if bom else b"") + data)
    return path


def test_bundled_configs_load() -> None:
    h2 = load_experiment_config(CONFIGS / "h2_sto3g.toml")
    assert h2.fcidump is not None and h2.fcidump.exists()
    assert h2.ansatz == [AnsatzKind.QIDA_MAX, AnsatzKind.QIDA_EMP, AnsatzKind.HEA]
    assert h2.finesse_ratios == [0.05]

    ring = load_experiment_config(CONFIGS / "heisenberg_ring4.toml")
    assert ring.heisenberg is not None
    assert ring.heisenberg.topology is LatticeTopology.RING
    assert ring.hea_depth == 3


def test_experiment_table_and_relative_paths(tmp_path: Path) -> None:
    sub = tmp_path / "cfg"
    sub.mkdir()
    path = _write(
        sub / "exp.toml",
        '[experiment]\nfcidump = "data/h2.fcidump"\nqmi_exact = true\nfinesse_ratios = [0.5, 0.1]\n'
        'criterion = "distance_reduction"\nlayer_init_mode = "symmetric"\n',
    )
    cfg = load_experiment_config(path)
    assert cfg.fcidump == sub / "data" / "h2.fcidump"
    assert cfg.out == Path("out")
    assert cfg.criterion is SelectionCriterion.DISTANCE_REDUCTION
    assert cfg.layer_init_mode is LayerInitMode.SYMMETRIC
    assert cfg.runs == 50


def test_top_level_keys_and_bom(tmp_path: Path) -> None:
    path = _write(
        tmp_path / "exp.toml",
        'fcidump = "/abs/h2.fcidump"\nqmi_matrix = "qmi.csv"\nruns = 3\nout = "results"\n',
        bom=True,
    )
    cfg = load_experiment_config(path)
    assert cfg.fcidump == Path("/abs/h2.fcidump")
    assert cfg.qmi_matrix == tmp_path / "qmi.csv"
    assert cfg.out == tmp_path / "results"
    assert cfg.runs == 3


def test_overrides_win_and_none_is_ignored(tmp_path: Path) -> None:
    path = _write(tmp_path / "exp.toml", 'fcidump = "h2.fcidump"\nqmi_exact = true\nruns = 3\nseed = 9\n')
    cfg = load_experiment_config(path, {"runs": 7, "seed": None})
    assert cfg.runs == 7
    assert cfg.seed == 9


def test_override_replaces_the_files_source(tmp_path: Path) -> None:
    path = _write(tmp_path / "exp.toml", 'fcidump = "h2.fcidump"\nqmi_exact = true\n')
    cfg = load_experiment_config(path, {"determinants": Path("bell.det"), "qmi_exact": None})
    assert cfg.determinants == Path("bell.det")
    assert cfg.qmi_exact is False
    assert cfg.fcidump == tmp_path / "h2.fcidump"


def test_lattice_override_merges_with_the_files_table() -> None:
    cfg = load_experiment_config(
        CONFIGS / "heisenberg_ring4.toml",
        {"heisenberg": {"coupling": 0.5}, "layer_init_halfwidth": 0.3, "name": "half"},
    )
    assert cfg.heisenberg is not None
    assert cfg.heisenberg.n_qubits == 4
    assert cfg.heisenberg.coupling == 0.5
    assert cfg.heisenberg.topology is LatticeTopology.RING
    assert cfg.layer_init_halfwidth == 0.3
    assert cfg.name == "half"


def test_lattice_override_drops_the_fcidump() -> None:
    cfg = load_experiment_config(CONFIGS / "h2_sto3g.toml", {"heisenberg": {"n_qubits": 6}})
    assert cfg.fcidump is None
    assert cfg.heisenberg is not None
    assert cfg.heisenberg.n_qubits == 6
    assert cfg.heisenberg.topology is LatticeTopology.RING


def test_every_issue_is_reported(tmp_path: Path) -> None:
    path = _write(tmp_path / "exp.toml", "runs = 0\nworkers = 0\nansatz = []\n")
    with pytest.raises(ConfigError) as exc:
        load_experiment_config(path)
    paths = {issue.path for issue in exc.value.errors}
    assert paths == {
        "fcidump|heisenberg",
        "determinants|qmi_matrix|qmi_exact",
        "runs",
        "workers",
        "ansatz",
    }


def test_validation_errors_name_the_field(tmp_path: Path) -> None:
    path = _write(tmp_path / "exp.toml", 'fcidump = "h2.fcidump"\nqmi_exact = true\nsd_cutoff = -1\nbogus = 1\n')
    with pytest.raises(ConfigError) as exc:
        load_experiment_config(path)
    paths = {issue.path for issue in exc.value.errors}
    assert paths == {"sd_cutoff", "bogus"}


def test_missing_and_malformed_files(tmp_path: Path) -> None:
    with pytest.raises(ConfigError, match="not found"):
        load_experiment_config(tmp_path / "nope.toml")
    bad = _write(tmp_path / "bad.toml", "runs = [\n")
    with pytest.raises(ConfigError):
        load_experiment_config(bad)


def test_vqe_config_follows_experiment() -> None:
    cfg = ExperimentConfig(fcidump=Path("x"), qmi_exact=True, gradient_tolerance=1e-5, max_iterations=50)
    vqe = cfg.vqe_config(17)
    assert vqe.rng_seed == 17
    assert vqe.gradient_tolerance == 1e-5
    assert vqe.max_iterations == 50


def test_ansatz_criteria() -> None:
    assert AnsatzKind.QIDA_MAX.criterion is SelectionCriterion.MAX_CORRELATION
    assert AnsatzKind.QIDA_EMP.criterion is SelectionCriterion.DISTANCE_REDUCTION
    assert AnsatzKind.HEA.criterion is None


def test_settings_read_the_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("QIDA_WORKERS", "4")
    monkeypatch.setenv("QIDA_LOG_JSON", "true")
    monkeypatch.setenv("QIDA_MAX_DENSE_QUBITS", "12")
    s = Settings()
    assert s.workers == 4
    assert s.log_json is True
    assert s.max_dense_qubits == 12
