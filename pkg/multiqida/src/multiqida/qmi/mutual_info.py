from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import numpy as np

from multiqida.qmi.rdm import one_qubit_rdm, two_qubit_rdm, von_neumann_entropy
from multiqida.qmi.sparse import SparseState
from multiqida.statesim.state import StateVector

log = logging.getLogger(__name__)

QMI_MAX = 2.0 * math.log(2.0)
_NEG_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class QmiMatrix:
    n_qubits: int
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.n_qubits, self.n_qubits):
            raise ValueError(f"QMI matrix has shape {vals.shape}, expected {(self.n_qubits,) * 2}")
        if not np.allclose(vals, vals.T, atol=1e-12):
            raise ValueError("QMI matrix is not symmetric")
        if np.any(np.abs(np.diag(vals)) > 1e-12):
            raise ValueError("QMI matrix diagonal must be zero")
        if np.any(vals < -_NEG_TOL):
            raise ValueError("QMI matrix has negative entries")
        np.fill_diagonal(vals, 0.0)
        np.clip(vals, 0.0, None, out=vals)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __getitem__(self, pair: tuple[int, int]) -> float:
        return float(self.values[pair])

    def pairs(self) -> list[tuple[int, int, float]]:
        n = self.n_qubits
        return [(u, v, float(self.values[u, v])) for u in range(n) for v in range(u + 1, n)]

    def max_value(self) -> float:
        return float(self.values.max(initial=0.0))


def qmi_matrix(state: SparseState | StateVector) -> QmiMatrix:
    """``I_uv = S_u + S_v - S_uv`` for every pair, zero on the diagonal."""
    n = state.n_qubits
    if n < 2:
        raise ValueError("QMI needs at least two qubits")
    singles = [von_neumann_entropy(one_qubit_rdm(state, u)) for u in range(n)]
    values = np.zeros((n, n))
    for u in range(n):
        for v in range(u + 1, n):
            s_uv = von_neumann_entropy(two_qubit_rdm(state, u, v))
            i_uv = singles[u] + singles[v] - s_uv
            if i_uv < -_NEG_TOL:
                log.warning("qmi pair=(%s,%s) value=%s violates subadditivity", u, v, i_uv)
            i_uv = max(i_uv, 0.0)
            if i_uv > QMI_MAX + _NEG_TOL:
                log.warning("qmi pair=(%s,%s) value=%s exceeds 2 ln 2", u, v, i_uv)
            values[u, v] = values[v, u] = i_uv
    log.debug("qmi n_qubits=%s max=%s", n, values.max())
    return QmiMatrix(n, values)


def ranked_pairs(qmi: QmiMatrix) -> list[tuple[int, int, float]]:
    """Pairs ``u < v`` by descending QMI, ties in index order."""
    return sorted(qmi.pairs(), key=lambda p: (-p[2], p[0], p[1]))


def write_qmi_csv(qmi: QmiMatrix, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    for row in qmi.values:
        writer.writerow([repr(float(x)) for x in row])


def read_qmi_csv(source: str | TextIO) -> QmiMatrix:
    stream = io.StringIO(source) if isinstance(source, str) else source
    rows = [r for r in csv.reader(stream) if r and any(c.strip() for c in r)]
    try:
        values = np.array([[float(c) for c in r] for r in rows], dtype=float)
    except ValueError as e:
        raise ValueError(f"QMI file holds a non-numeric entry: {e}") from None
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError("QMI file must hold a square matrix")
    return QmiMatrix(values.shape[0], values)


def load_qmi_csv(path: str | Path) -> QmiMatrix:
    with Path(path).open("r", encoding="utf-8-sig", newline="") as f:
        return read_qmi_csv(f)


def write_ranked_pairs_csv(qmi: QmiMatrix, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["u", "v", "qmi"])
    for u, v, value in ranked_pairs(qmi):
        writer.writerow([u, v, repr(value)])
