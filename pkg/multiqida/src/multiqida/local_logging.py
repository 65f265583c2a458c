from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable

from pythonjsonlogger import jsonlogger

_TEXT_FORMAT = "%(levelname)s %(name)s %(message)s"
_JSON_FORMAT = "%(levelname)s %(name)s %(message)s"


def configure_logging(level: str = "info", json_format: bool = False) -> None:
    """Install a single stderr handler on the root logger."""
    handler = logging.StreamHandler(sys.stderr)
    if json_format:
        handler.setFormatter(jsonlogger.JsonFormatter(_JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(_TEXT_FORMAT))

    root = logging.getLogger()
    for h in list(root.handlers):
        root.removeHandler(h)
    root.addHandler(handler)
    root.setLevel(str(level).upper())


def ensure_run_log_dir(out_dir: str | Path) -> Path:
    d = Path(out_dir) / "runs"
    d.mkdir(parents=True, exist_ok=True)
    return d


def run_log_paths(out_dir: str | Path, run_id: int) -> tuple[Path, Path]:
    """(record path, trajectory path) of one run inside ``<out_dir>/runs``."""
    d = ensure_run_log_dir(out_dir)
    return d / f"run_{run_id:04d}.record.jsonl", d / f"run_{run_id:04d}.trajectory.jsonl"


def event_line(event: dict[str, Any]) -> str:
    return json.dumps(event, ensure_ascii=False, sort_keys=True)


def write_events(path: Path, events: Iterable[dict[str, Any]]) -> None:
    """Replace ``path`` with the given events, one JSON object per line."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for event in events:
            f.write(event_line(event) + "\n")


def merge_run_logs(parts: Iterable[Path], dest: Path) -> int:
    """
    Concatenate per-run JSONL files into ``dest`` in the given order.
    Missing parts are skipped. Returns the number of lines written.
    """
    dest.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with dest.open("w", encoding="utf-8", newline="\n") as out:
        for part in parts:
            if not part.exists():
                continue
            for line in part.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    out.write(line + "\n")
                    n += 1
    return n
