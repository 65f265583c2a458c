from __future__ import annotations

import csv
import json
from collections import defaultdict
from pathlib import Path
from typing import Iterable, TextIO

from multiqida.metrics.energies import summarize
from multiqida.schemas.run import SUMMARY_COLUMNS, RunRecord, SummaryStats


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_summary_csv(rows: Iterable[SummaryStats], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for row in rows:
        data = row.model_dump()
        writer.writerow([_cell(data[c]) for c in SUMMARY_COLUMNS])


def read_summary_csv(stream: TextIO) -> list[SummaryStats]:
    out = []
    for row in csv.DictReader(stream):
        out.append(SummaryStats.model_validate({k: (v if v != "" else None) for k, v in row.items()}))
    return out


def read_run_records(path: str | Path) -> list[RunRecord]:
    records = []
    with Path(path).open("r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                records.append(RunRecord.model_validate(json.loads(line)))
            except ValueError as e:
                raise ValueError(f"{path}:{line_no}: invalid run record: {e}") from None
    return records


def summarize_records(
    records: Iterable[RunRecord], e_reference: float, e_exact: float
) -> list[SummaryStats]:
    """One summary per ansatz label, in order of first appearance."""
    grouped: dict[str, list[RunRecord]] = defaultdict(list)
    for r in records:
        grouped[r.ansatz_label].append(r)
    return [summarize(rs, e_reference, e_exact) for rs in grouped.values()]


def summarize_records_file(path: str | Path, e_reference: float, e_exact: float) -> list[SummaryStats]:
    return summarize_records(read_run_records(path), e_reference, e_exact)
