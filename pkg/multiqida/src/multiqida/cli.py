from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Annotated, Any, Optional

import click
import typer
from rich.console import Console

from multiqida.config import AnsatzKind, ExperimentConfig, Settings, load_experiment_config
from multiqida.errors import ConfigError, ConfigIssue, QidaError
from multiqida.hamcore.lattice import LatticeTopology
from multiqida.local_logging import configure_logging
from multiqida.render import print_json, render_plan, render_qmi_pairs, render_summary
from multiqida.schemas.plan import dump_plan
from multiqida.services.experiments import (
    SUMMARY_FILE,
    load_reference,
    resolve_qmi,
    run_batch,
    summarize_output,
    write_qmi_outputs,
)
from multiqida.topology.layers import SelectionCriterion, build_layers, check_finesse_protocol
from multiqida.vqe.optimizer import LayerInitMode

app = typer.Typer(add_completion=False, help="Multi-QIDA experiment runner")
config_app = typer.Typer(add_completion=False, help="Configuration utilities")
app.add_typer(config_app, name="config")

_state: dict[str, Any] = {"settings": None}

ConfigOpt = Annotated[Optional[Path], typer.Option("--config", "-c", help="Experiment TOML file")]
FcidumpOpt = Annotated[Optional[Path], typer.Option("--fcidump", help="FCIDUMP integrals file")]
DeterminantsOpt = Annotated[Optional[Path], typer.Option("--determinants", help="Determinant file")]
QmiMatrixOpt = Annotated[Optional[Path], typer.Option("--qmi-matrix", help="External QMI CSV")]
QmiExactOpt = Annotated[
    Optional[bool], typer.Option("--qmi-exact/--no-qmi-exact", help="QMI of the exact ground state")
]
SdCutoffOpt = Annotated[Optional[float], typer.Option("--sd-cutoff", help="Drop |c| at or below this")]
MaxDetOpt = Annotated[Optional[int], typer.Option("--max-determinants", help="Keep the k largest determinants")]
RatiosOpt = Annotated[
    Optional[str], typer.Option("--finesse-ratios", help="Comma-separated, strictly decreasing (ex: 0.5,0.3,0.1)")
]
CriterionOpt = Annotated[Optional[str], typer.Option("--criterion", help="max_correlation | distance_reduction")]
PlanOpt = Annotated[Optional[Path], typer.Option("--plan", help="Layer plan JSON to use instead of building one")]
AnsatzOpt = Annotated[
    Optional[list[AnsatzKind]], typer.Option("--ansatz", help="Repeatable: qida-max, qida-emp, hea")
]
HeaDepthOpt = Annotated[Optional[int], typer.Option("--hea-depth", help="HEA ladder repetitions")]
RunsOpt = Annotated[Optional[int], typer.Option("--runs", help="Runs per ansatz")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Base seed; run i uses seed + i")]
WorkersOpt = Annotated[Optional[int], typer.Option("--workers", help="Worker processes")]
OutOpt = Annotated[Optional[Path], typer.Option("--out", "-o", help="Output directory")]
GtolOpt = Annotated[Optional[float], typer.Option("--gradient-tolerance", help="BFGS infinity-norm tolerance")]
MaxIterOpt = Annotated[Optional[int], typer.Option("--max-iterations", help="BFGS iterations per optimization")]
LatticeQubitsOpt = Annotated[
    Optional[int], typer.Option("--heisenberg-n-qubits", help="Heisenberg lattice sites (replaces --fcidump)")
]
CouplingOpt = Annotated[Optional[float], typer.Option("--coupling", help="Heisenberg exchange coupling J")]
TopologyOpt = Annotated[Optional[LatticeTopology], typer.Option("--topology", help="Heisenberg lattice: chain | ring")]
InitHalfwidthOpt = Annotated[
    Optional[float], typer.Option("--layer-init-halfwidth", help="Width of new-layer parameter draws")
]
InitModeOpt = Annotated[
    Optional[LayerInitMode], typer.Option("--layer-init-mode", help="one_sided: U(0, h); symmetric: U(-h, h)")
]
NameOpt = Annotated[Optional[str], typer.Option("--name", help="Experiment label")]


def _console() -> Console:
    # If output is redirected, avoid rich's color codes.
    no_color = not os.isatty(1)
    return Console(no_color=no_color)


def _settings() -> Settings:
    s = _state.get("settings")
    return s if s is not None else Settings()


def _ratios(text: str | None) -> list[float] | None:
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise typer.BadParameter(f"not a list of numbers: {text!r}", param_hint="--finesse-ratios") from None


def _criterion(text: str | None) -> SelectionCriterion | None:
    if text is None:
        return None
    try:
        return SelectionCriterion.parse(text)
    except ValueError:
        raise typer.BadParameter(f"unknown criterion {text!r}", param_hint="--criterion") from None


def _load(config: Path | None, **overrides: Any) -> ExperimentConfig:
    lattice = {
        key: value
        for key, value in (
            ("n_qubits", overrides.pop("heisenberg_n_qubits", None)),
            ("coupling", overrides.pop("coupling", None)),
            ("topology", overrides.pop("topology", None)),
        )
        if value is not None
    }
    if lattice:
        if overrides.get("fcidump") is not None:
            raise ConfigError([ConfigIssue("fcidump|heisenberg", "--fcidump cannot be combined with lattice flags")])
        overrides["heisenberg"] = lattice
    if "finesse_ratios" in overrides:
        overrides["finesse_ratios"] = _ratios(overrides["finesse_ratios"])
    if not overrides.get("ansatz", True):
        overrides["ansatz"] = None
    return load_experiment_config(config, overrides)


@app.callback()
def main_callback(
    log_level: Annotated[Optional[str], typer.Option("--log-level", help="debug | info | warning | error")] = None,
    log_json: Annotated[Optional[bool], typer.Option("--log-json/--no-log-json", help="JSON log lines")] = None,
) -> None:
    s = Settings()
    if log_level is not None:
        s.log_level = log_level
    if log_json is not None:
        s.log_json = log_json
    _state["settings"] = s
    configure_logging(s.log_level, s.log_json)


@app.command("qmi")
def cmd_qmi(
    config: ConfigOpt = None,
    fcidump: FcidumpOpt = None,
    heisenberg_n_qubits: LatticeQubitsOpt = None,
    coupling: CouplingOpt = None,
    topology: TopologyOpt = None,
    determinants: DeterminantsOpt = None,
    qmi_matrix: QmiMatrixOpt = None,
    qmi_exact: QmiExactOpt = None,
    sd_cutoff: SdCutoffOpt = None,
    max_determinants: MaxDetOpt = None,
    out: OutOpt = None,
) -> None:
    """Write the QMI matrix and its pairs in descending QMI."""
    cfg = _load(
        config,
        fcidump=fcidump,
        heisenberg_n_qubits=heisenberg_n_qubits,
        coupling=coupling,
        topology=topology,
        determinants=determinants,
        qmi_matrix=qmi_matrix,
        qmi_exact=qmi_exact,
        sd_cutoff=sd_cutoff,
        max_determinants=max_determinants,
        out=out,
    )
    qmi = write_qmi_outputs(cfg, _settings())
    console = _console()
    render_qmi_pairs(console, qmi)
    console.print(f"wrote {Path(cfg.out) / 'qmi.csv'}")


@app.command("build-layers")
def cmd_build_layers(
    config: ConfigOpt = None,
    fcidump: FcidumpOpt = None,
    heisenberg_n_qubits: LatticeQubitsOpt = None,
    coupling: CouplingOpt = None,
    topology: TopologyOpt = None,
    determinants: DeterminantsOpt = None,
    qmi_matrix: QmiMatrixOpt = None,
    qmi_exact: QmiExactOpt = None,
    sd_cutoff: SdCutoffOpt = None,
    max_determinants: MaxDetOpt = None,
    finesse_ratios: RatiosOpt = None,
    criterion: CriterionOpt = None,
    out: OutOpt = None,
) -> None:
    """Build the Multi-QIDA layer plan and report its CNOT count."""
    cfg = _load(
        config,
        fcidump=fcidump,
        heisenberg_n_qubits=heisenberg_n_qubits,
        coupling=coupling,
        topology=topology,
        determinants=determinants,
        qmi_matrix=qmi_matrix,
        qmi_exact=qmi_exact,
        sd_cutoff=sd_cutoff,
        max_determinants=max_determinants,
        finesse_ratios=finesse_ratios,
        criterion=_criterion(criterion),
        out=out,
    )
    qmi = resolve_qmi(cfg, env=_settings())
    plan = build_layers(qmi, cfg.finesse_ratios, cfg.criterion)
    notes = check_finesse_protocol(qmi, cfg.finesse_ratios, plan)

    dest = Path(cfg.out) / "plan.json"
    dest.parent.mkdir(parents=True, exist_ok=True)
    dump_plan(plan, dest)
    console = _console()
    render_plan(console, plan, notes)
    console.print(f"wrote {dest}")


@app.command("run")
def cmd_run(
    config: ConfigOpt = None,
    fcidump: FcidumpOpt = None,
    heisenberg_n_qubits: LatticeQubitsOpt = None,
    coupling: CouplingOpt = None,
    topology: TopologyOpt = None,
    determinants: DeterminantsOpt = None,
    qmi_matrix: QmiMatrixOpt = None,
    qmi_exact: QmiExactOpt = None,
    sd_cutoff: SdCutoffOpt = None,
    max_determinants: MaxDetOpt = None,
    finesse_ratios: RatiosOpt = None,
    plan: PlanOpt = None,
    ansatz: AnsatzOpt = None,
    hea_depth: HeaDepthOpt = None,
    runs: RunsOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    out: OutOpt = None,
    gradient_tolerance: GtolOpt = None,
    max_iterations: MaxIterOpt = None,
    layer_init_halfwidth: InitHalfwidthOpt = None,
    layer_init_mode: InitModeOpt = None,
    name: NameOpt = None,
) -> None:
    """Run seeded VQE batches and write records, trajectories and the summary."""
    cfg = _load(
        config,
        fcidump=fcidump,
        heisenberg_n_qubits=heisenberg_n_qubits,
        coupling=coupling,
        topology=topology,
        determinants=determinants,
        qmi_matrix=qmi_matrix,
        qmi_exact=qmi_exact,
        sd_cutoff=sd_cutoff,
        max_determinants=max_determinants,
        finesse_ratios=finesse_ratios,
        plan=plan,
        ansatz=ansatz,
        hea_depth=hea_depth,
        runs=runs,
        seed=seed,
        workers=workers,
        out=out,
        gradient_tolerance=gradient_tolerance,
        max_iterations=max_iterations,
        layer_init_halfwidth=layer_init_halfwidth,
        layer_init_mode=layer_init_mode,
        name=name,
    )
    result = run_batch(cfg, _settings())
    console = _console()
    render_summary(console, result.summaries, result.reference)
    console.print(f"wrote {Path(cfg.out) / SUMMARY_FILE}")
    if not result.summaries:
        raise typer.Exit(code=1)


@app.command("summarize")
def cmd_summarize(
    config: ConfigOpt = None,
    out: OutOpt = None,
    output: Annotated[
        Optional[Path], typer.Option("--output", help="Summary CSV path (default: <out>/summary.csv)")
    ] = None,
) -> None:
    """Recompute the summary CSV from the run-records JSONL of an output directory."""
    if config is not None:
        out_dir = Path(_load(config, out=out).out)
    else:
        out_dir = out if out is not None else ExperimentConfig.model_fields["out"].default
    rows = summarize_output(out_dir, output)
    render_summary(_console(), rows, load_reference(out_dir))


@config_app.command("show")
def cmd_config_show(
    config: ConfigOpt = None,
    fcidump: FcidumpOpt = None,
    heisenberg_n_qubits: LatticeQubitsOpt = None,
    coupling: CouplingOpt = None,
    topology: TopologyOpt = None,
    layer_init_halfwidth: InitHalfwidthOpt = None,
    layer_init_mode: InitModeOpt = None,
    name: NameOpt = None,
) -> None:
    """Print the resolved experiment configuration."""
    cfg = _load(
        config,
        fcidump=fcidump,
        heisenberg_n_qubits=heisenberg_n_qubits,
        coupling=coupling,
        topology=topology,
        layer_init_halfwidth=layer_init_halfwidth,
        layer_init_mode=layer_init_mode,
        name=name,
    )
    print_json(_console(), cfg.model_dump(mode="json"))


def main(argv: list[str] | None = None) -> int:
    console = Console(stderr=True, no_color=not os.isatty(2))
    try:
        rv = app(args=argv, prog_name="multiqida", standalone_mode=False)
    except ConfigError as e:
        console.print("[red]Error:[/red] invalid experiment configuration")
        for issue in e.errors:
            console.print(f"  {issue.path}: {issue.message}")
        return 1
    except (QidaError, OSError) as e:
        console.print(f"[red]Error:[/red] {e}")
        return 1
    except (KeyboardInterrupt, click.exceptions.Abort):
        console.print("Cancelled.")
        return 130
    except click.exceptions.ClickException as e:
        e.show(file=sys.stderr)
        return e.exit_code
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
