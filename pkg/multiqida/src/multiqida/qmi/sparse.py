"""Sparse determinant expansions and the determinant file format.

File layout::

    # optional comments
    nqubits K            (optional header)
    bitstring re [im]    (K records)

Bitstrings put the highest qubit leftmost; character ``1`` marks an occupied
spin orbital. Coefficients are qubit-basis amplitudes with any fermionic sign
convention already applied by the producer.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, TextIO

import numpy as np

from multiqida.errors import DeterminantFileError
from multiqida.statesim.state import StateVector, index_to_bitstring

log = logging.getLogger(__name__)

DEFAULT_CUTOFF = 1e-12
DEFAULT_MAX_DETERMINANTS = 100_000


@dataclass(frozen=True, eq=False)
class SparseState:
    """``entries`` maps basis index to amplitude."""

    n_qubits: int
    entries: Mapping[int, complex]

    def __post_init__(self) -> None:
        if self.n_qubits <= 0:
            raise ValueError("n_qubits must be positive")
        if not self.entries:
            raise ValueError("sparse state has no determinants")
        limit = 1 << self.n_qubits
        if any(not 0 <= k < limit for k in self.entries):
            raise ValueError(f"determinant index exceeds {self.n_qubits} qubits")
        norm = sum(abs(a) ** 2 for a in self.entries.values())
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"sparse state norm is {norm:.12g}, expected 1")

    def __len__(self) -> int:
        return len(self.entries)

    def bitstrings(self) -> dict[str, complex]:
        return {index_to_bitstring(k, self.n_qubits): a for k, a in self.entries.items()}


def _select(
    n_qubits: int, raw: Mapping[int, complex], cutoff: float, max_determinants: int
) -> SparseState:
    kept = [(k, a) for k, a in raw.items() if abs(a) > cutoff]
    kept.sort(key=lambda kv: (-abs(kv[1]), kv[0]))
    kept = kept[:max_determinants]
    if not kept:
        raise DeterminantFileError(None, f"no determinant survives cutoff={cutoff:g}")
    norm = float(np.sqrt(sum(abs(a) ** 2 for _, a in kept)))
    dropped = len(raw) - len(kept)
    if dropped:
        log.info("sparse state kept=%s dropped=%s cutoff=%s", len(kept), dropped, cutoff)
    return SparseState(n_qubits, {k: a / norm for k, a in kept})


def _is_bitstring(tok: str) -> bool:
    return bool(tok) and not set(tok) - {"0", "1"}


def load_sparse_state(
    source: str | TextIO,
    cutoff: float = DEFAULT_CUTOFF,
    max_determinants: int = DEFAULT_MAX_DETERMINANTS,
) -> SparseState:
    """Keep the ``max_determinants`` largest coefficients above ``cutoff``, renormalized.

    A first line of two integers is a header when the next record's bitstring
    length equals its first integer; otherwise it is read as a record. For
    one qubit a leading ``1 1`` is therefore always a header.
    """
    if max_determinants < 1:
        raise ValueError("max_determinants must be >= 1")
    stream = io.StringIO(source) if isinstance(source, str) else source
    lines: list[tuple[int, list[str]]] = []
    for line_no, raw in enumerate(stream.read().splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            lines.append((line_no, tokens))
    if not lines:
        raise DeterminantFileError(None, "file holds no records")

    header: tuple[int, int] | None = None
    first_no, first = lines[0]
    if len(first) == 2 and all(t.lstrip("+-").isdigit() for t in first):
        following = lines[1][1][0] if len(lines) > 1 else None
        if following is not None and len(following) == int(first[0]):
            header = (int(first[0]), int(first[1]))
        elif following is None and not _is_bitstring(first[0]):
            raise DeterminantFileError(first_no, "header without records")
    records = lines[1:] if header else lines

    raw_entries: dict[int, complex] = {}
    n_qubits = header[0] if header else len(records[0][1][0])
    for line_no, tokens in records:
        if len(tokens) not in (2, 3):
            raise DeterminantFileError(line_no, f"expected 'bitstring re [im]', found {len(tokens)} fields")
        bits = tokens[0]
        if not _is_bitstring(bits):
            raise DeterminantFileError(line_no, f"invalid bitstring {bits!r}")
        if len(bits) != n_qubits:
            raise DeterminantFileError(line_no, f"bitstring has {len(bits)} qubits, expected {n_qubits}")
        try:
            re_part = float(tokens[1])
            im_part = float(tokens[2]) if len(tokens) == 3 else 0.0
        except ValueError:
            raise DeterminantFileError(line_no, "non-numeric coefficient") from None
        k = int(bits, 2)
        if k in raw_entries:
            raise DeterminantFileError(line_no, f"duplicate determinant {bits}")
        raw_entries[k] = complex(re_part, im_part)

    if header and header[1] != len(raw_entries):
        raise DeterminantFileError(first_no, f"header announces {header[1]} records, found {len(raw_entries)}")
    if n_qubits <= 0:
        raise DeterminantFileError(first_no, "number of qubits must be positive")
    return _select(n_qubits, raw_entries, cutoff, max_determinants)


def read_sparse_state(
    path: str | Path,
    cutoff: float = DEFAULT_CUTOFF,
    max_determinants: int = DEFAULT_MAX_DETERMINANTS,
) -> SparseState:
    with Path(path).open("r", encoding="utf-8-sig") as f:
        return load_sparse_state(f, cutoff, max_determinants)


def dump_sparse_state(state: SparseState, stream: TextIO) -> None:
    """Write the determinant file with a header, largest coefficients first."""
    items = sorted(state.entries.items(), key=lambda kv: (-abs(kv[1]), kv[0]))
    stream.write(f"{state.n_qubits} {len(items)}\n")
    for k, a in items:
        a = complex(a)
        stream.write(f"{index_to_bitstring(k, state.n_qubits)} {a.real!r} {a.imag!r}\n")


def sparse_from_statevector(
    state: StateVector,
    cutoff: float = DEFAULT_CUTOFF,
    max_determinants: int = DEFAULT_MAX_DETERMINANTS,
) -> SparseState:
    amps = state.amplitudes
    nz = np.flatnonzero(np.abs(amps) > cutoff)
    return _select(state.n_qubits, {int(k): complex(amps[k]) for k in nz}, cutoff, max_determinants)
