from __future__ import annotations

import tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from multiqida.errors import ConfigError, ConfigIssue
from multiqida.hamcore.lattice import LatticeTopology
from multiqida.topology.layers import SelectionCriterion
from multiqida.vqe.optimizer import LayerInitMode, VqeConfig


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="QIDA_", env_file=".env", extra="ignore")

    log_level: str = "info"
    log_json: bool = False
    workers: int = 1
    # Dense diagonalization limit; 16 qubits is a 65536-dim matrix.
    max_dense_qubits: int = 16


settings = Settings()


class AnsatzKind(str, Enum):
    QIDA_MAX = "qida-max"
    QIDA_EMP = "qida-emp"
    HEA = "hea"

    @property
    def criterion(self) -> SelectionCriterion | None:
        if self is AnsatzKind.QIDA_MAX:
            return SelectionCriterion.MAX_CORRELATION
        if self is AnsatzKind.QIDA_EMP:
            return SelectionCriterion.DISTANCE_REDUCTION
        return None


class HeisenbergSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_qubits: int = Field(ge=2)
    coupling: float = 1.0
    topology: LatticeTopology = LatticeTopology.RING


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"

    # hamiltonian source: exactly one
    fcidump: Path | None = None
    heisenberg: HeisenbergSpec | None = None

    # QMI source: exactly one
    determinants: Path | None = None
    qmi_matrix: Path | None = None
    qmi_exact: bool = False

    sd_cutoff: float = Field(default=1e-12, ge=0)
    max_determinants: int = Field(default=100_000, ge=1)

    finesse_ratios: list[float] = Field(default_factory=list)
    criterion: SelectionCriterion = SelectionCriterion.MAX_CORRELATION
    plan: Path | None = None

    ansatz: list[AnsatzKind] = Field(default_factory=lambda: [AnsatzKind.QIDA_MAX])
    hea_depth: int = Field(default=1, ge=1)
    runs: int = 50
    seed: int = 0
    workers: int | None = None
    out: Path = Path("out")

    gradient_tolerance: float = Field(default=1e-6, gt=0)
    max_iterations: int = Field(default=1000, ge=1)
    layer_init_halfwidth: float = Field(default=0.1, gt=0)
    layer_init_mode: LayerInitMode = LayerInitMode.ONE_SIDED

    def issues(self) -> list[ConfigIssue]:
        out: list[ConfigIssue] = []
        n_ham = sum(x is not None for x in (self.fcidump, self.heisenberg))
        if n_ham != 1:
            out.append(ConfigIssue("fcidump|heisenberg", f"exactly one hamiltonian source required, found {n_ham}"))
        n_qmi = sum((self.determinants is not None, self.qmi_matrix is not None, self.qmi_exact))
        if n_qmi != 1:
            out.append(
                ConfigIssue("determinants|qmi_matrix|qmi_exact", f"exactly one QMI source required, found {n_qmi}")
            )
        if self.runs < 1:
            out.append(ConfigIssue("runs", "must be >= 1"))
        if self.workers is not None and self.workers < 1:
            out.append(ConfigIssue("workers", "must be >= 1"))
        if not self.ansatz:
            out.append(ConfigIssue("ansatz", "at least one ansatz is required"))
        return out

    def vqe_config(self, rng_seed: int) -> VqeConfig:
        return VqeConfig(
            gradient_tolerance=self.gradient_tolerance,
            max_iterations=self.max_iterations,
            rng_seed=rng_seed,
            layer_init_halfwidth=self.layer_init_halfwidth,
            layer_init_mode=self.layer_init_mode,
        )


_PATH_FIELDS = ("fcidump", "determinants", "qmi_matrix", "plan", "out")

# A flag selecting one source replaces whatever source the file named.
_SOURCE_GROUPS = (("fcidump", "heisenberg"), ("determinants", "qmi_matrix", "qmi_exact"))


def _read_toml(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise ConfigError([ConfigIssue(str(path), "config file not found")])
    # tolerate a UTF-8 BOM
    text = path.read_text(encoding="utf-8-sig")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError([ConfigIssue(str(path), f"invalid TOML: {e}")]) from None
    return data if isinstance(data, dict) else {}


def load_experiment_config(
    config_path: Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> ExperimentConfig:
    """
    Precedence (lowest -> highest):
      model defaults -> config file -> overrides (CLI flags)

    Relative paths in the file resolve against the file's directory; ``None``
    overrides are ignored.
    """
    raw: dict[str, Any] = {}
    if config_path is not None:
        raw = _read_toml(config_path)
        # Support either top-level keys or an [experiment] table
        table = raw.get("experiment")
        if isinstance(table, dict):
            raw = dict(table)
        base = config_path.parent
        for key in _PATH_FIELDS:
            val = raw.get(key)
            if isinstance(val, str) and not Path(val).is_absolute():
                raw[key] = str(base / val)

    for key, val in (overrides or {}).items():
        if val is None:
            continue
        if key == "heisenberg" and isinstance(val, Mapping):
            # lattice flags refine the file's lattice table
            current = raw.get("heisenberg")
            val = {**(current if isinstance(current, dict) else {}), **val}
        for group in _SOURCE_GROUPS:
            if key in group and val is not False:
                for other in group:
                    raw.pop(other, None)
        raw[key] = val

    try:
        cfg = ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        issues = [
            ConfigIssue(".".join(str(p) for p in err["loc"]) or "<root>", err["msg"]) for err in e.errors()
        ]
        raise ConfigError(issues) from None

    problems = cfg.issues()
    if problems:
        raise ConfigError(problems)
    return cfg
