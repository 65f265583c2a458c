from __future__ import annotations

import json
from typing import Any, Sequence

from rich.console import Console
from rich.table import Table

from multiqida.qmi.mutual_info import QmiMatrix, ranked_pairs
from multiqida.schemas.run import ReferenceEnergies, SummaryStats
from multiqida.topology.layers import LayerPlan


def print_json(console: Console, obj: Any) -> None:
    console.print_json(json.dumps(obj, default=str))


def _num(v: float | None, fmt: str = ".6f") -> str:
    return "" if v is None else format(v, fmt)


def render_qmi_pairs(console: Console, qmi: QmiMatrix, *, limit: int = 20, title: str = "QMI pairs") -> None:
    t = Table(title=title)
    t.add_column("u", justify="right")
    t.add_column("v", justify="right")
    t.add_column("qmi", justify="right")
    t.add_column("ratio", justify="right")

    top = qmi.max_value()
    pairs = ranked_pairs(qmi)
    for u, v, w in pairs[:limit]:
        t.add_row(str(u), str(v), f"{w:.6f}", f"{w / top:.3f}" if top > 0 else "")
    console.print(t)
    if len(pairs) > limit:
        console.print(f"... {len(pairs) - limit} more pairs")


def render_plan(console: Console, plan: LayerPlan, notes: Sequence[str] = (), *, title: str = "Layer plan") -> None:
    t = Table(title=title)
    t.add_column("layer", justify="right")
    t.add_column("kind")
    t.add_column("pairs", overflow="fold")

    for i, layer in enumerate(plan.qida_layers):
        t.add_row(str(i), "qida", " ".join(f"{u}-{v}" for u, v in layer.pairs))
    t.add_row(str(len(plan.qida_layers)), "ladder", " ".join(f"{u}-{v}" for u, v in plan.ladder_layer.pairs))
    console.print(t)

    criterion = plan.criterion.value if plan.criterion else "-"
    console.print(
        f"criterion={criterion} correlators={plan.n_correlators()} cnot_count={plan.cnot_count()}"
    )
    for note in notes:
        console.print(f"[yellow]note:[/yellow] {note}")


def render_summary(
    console: Console,
    rows: Sequence[SummaryStats],
    reference: ReferenceEnergies | None = None,
    *,
    title: str = "Summary",
) -> None:
    t = Table(title=title)
    t.add_column("ansatz")
    t.add_column("runs", justify="right")
    t.add_column("failed", justify="right")
    t.add_column("cnots", justify="right")
    t.add_column("eps avg (std)", justify="right")
    t.add_column("eps best", justify="right")
    t.add_column("MCED %", justify="right")
    t.add_column("E best", justify="right")
    t.add_column("fidelity", justify="right")

    for r in rows:
        t.add_row(
            r.ansatz_label,
            str(r.n_runs),
            str(r.n_failed),
            str(r.cnot_count),
            f"{r.epsilon_avg:.2f} ({r.epsilon_std:.2f})",
            f"{r.epsilon_best:.2f}",
            f"{r.mced_pct:.2f}",
            _num(r.energy_best, ".8f"),
            _num(r.fidelity_avg, ".4f"),
        )
    console.print(t)
    if reference is not None:
        console.print(
            f"system={reference.system} n_qubits={reference.n_qubits} "
            f"reference={reference.reference_bitstring} "
            f"e_reference={reference.e_reference:.10f} e_exact={reference.e_exact:.10f}"
        )
