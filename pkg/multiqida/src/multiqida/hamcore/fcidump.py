"""FCIDUMP reader and writer.

Two-electron records are chemist-notation ``(ij|kl)`` with 1-based indices.
``value i j 0 0`` is a one-body integral and ``value 0 0 0 0`` the core energy.
"""

from __future__ import annotations

import io
import logging
import re
from pathlib import Path
from typing import TextIO

import numpy as np

from multiqida.errors import FcidumpParseError
from multiqida.hamcore.integrals import MolecularIntegrals, eri_permutations

log = logging.getLogger(__name__)

DEFAULT_FLOAT_FORMAT = " %.16g"
_KEY_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=")


def _header_fields(text: str, line_no: int, raw: str) -> dict[str, str]:
    body = re.sub(r"^\s*&FCI\w*", "", text, flags=re.IGNORECASE)
    body = re.sub(r"(&END|/)\s*$", "", body.strip(), flags=re.IGNORECASE)
    parts = _KEY_RE.split(body)
    if parts[0].strip(" ,"):
        raise FcidumpParseError(line_no, raw, f"unexpected header text {parts[0].strip()!r}")
    fields: dict[str, str] = {}
    for key, value in zip(parts[1::2], parts[2::2]):
        fields[key.upper()] = value.strip().strip(",").strip()
    return fields


def _header_int(fields: dict[str, str], key: str, line_no: int, raw: str, default: int | None = None) -> int:
    if key not in fields:
        if default is not None:
            return default
        raise FcidumpParseError(line_no, raw, f"header lacks {key}")
    first = fields[key].split(",")[0].strip()
    try:
        return int(first)
    except ValueError:
        raise FcidumpParseError(line_no, raw, f"{key}={fields[key]!r} is not an integer") from None


def parse_fcidump(source: str | TextIO) -> MolecularIntegrals:
    """Parse FCIDUMP text into integrals with the permutational closure applied."""
    stream = io.StringIO(source) if isinstance(source, str) else source
    lines = stream.read().splitlines()
    if not lines:
        raise FcidumpParseError(1, "", "empty file")

    header_parts: list[str] = []
    header_end = None
    for i, raw in enumerate(lines):
        if i == 0 and not raw.lstrip().upper().startswith("&FCI"):
            raise FcidumpParseError(1, raw, "header must start with &FCI")
        header_parts.append(raw)
        stripped = raw.strip().upper()
        if stripped.endswith("&END") or stripped.endswith("/"):
            header_end = i
            break
    if header_end is None:
        raise FcidumpParseError(len(lines), lines[-1], "header is not terminated by &END or /")

    fields = _header_fields(" ".join(header_parts), 1, lines[0])
    norb = _header_int(fields, "NORB", 1, lines[0])
    nelec = _header_int(fields, "NELEC", 1, lines[0])
    ms2 = _header_int(fields, "MS2", 1, lines[0], default=0)
    if norb <= 0:
        raise FcidumpParseError(1, lines[0], f"NORB={norb} must be positive")
    orbsym: tuple[int, ...] = ()
    if "ORBSYM" in fields:
        try:
            orbsym = tuple(int(t) for t in fields["ORBSYM"].split(",") if t.strip())
        except ValueError:
            raise FcidumpParseError(1, lines[0], "ORBSYM entries must be integers") from None

    h = np.zeros((norb, norb))
    g = np.zeros((norb,) * 4)
    core = 0.0
    n_records = 0
    for line_no, raw in enumerate(lines[header_end + 1 :], start=header_end + 2):
        tokens = raw.split()
        if not tokens:
            continue
        if len(tokens) != 5:
            raise FcidumpParseError(line_no, raw, f"expected 5 fields, found {len(tokens)}")
        try:
            value = float(tokens[0].replace("D", "E").replace("d", "e"))
            p, q, r, s = (int(t) for t in tokens[1:])
        except ValueError:
            raise FcidumpParseError(line_no, raw, "non-numeric field") from None
        if any(not 0 <= x <= norb for x in (p, q, r, s)):
            raise FcidumpParseError(line_no, raw, f"index exceeds NORB={norb}")
        n_records += 1

        if p == q == r == s == 0:
            core = value
        elif r == 0 and s == 0 and p > 0 and q > 0:
            h[p - 1, q - 1] = value
            h[q - 1, p - 1] = value
        elif q == r == s == 0 and p > 0:
            # orbital energy record; not part of the Hamiltonian
            continue
        elif min(p, q, r, s) > 0:
            for perm in eri_permutations(p - 1, q - 1, r - 1, s - 1):
                g[perm] = value
        else:
            raise FcidumpParseError(line_no, raw, "index pattern is neither one- nor two-body")

    log.info("fcidump parsed norb=%s nelec=%s ms2=%s records=%s", norb, nelec, ms2, n_records)
    try:
        return MolecularIntegrals(
            n_spatial_orbitals=norb,
            n_electrons=nelec,
            core_energy=core,
            h=h,
            g=g,
            spin_multiplicity=ms2 + 1,
            orbital_symmetries=orbsym,
        )
    except ValueError as e:
        raise FcidumpParseError(1, lines[0], str(e)) from None


def load_fcidump(path: str | Path) -> MolecularIntegrals:
    with Path(path).open("r", encoding="utf-8-sig") as f:
        return parse_fcidump(f)


def write_fcidump(
    mo: MolecularIntegrals,
    stream: TextIO,
    tol: float = 1e-15,
    float_format: str = DEFAULT_FLOAT_FORMAT,
) -> None:
    """Write the unique 8-fold record set, then one-body records, then the core energy."""
    n = mo.n_spatial_orbitals
    orbsym = mo.orbital_symmetries or (1,) * n
    stream.write(" &FCI NORB=%4d,NELEC=%2d,MS2=%d,\n" % (n, mo.n_electrons, mo.ms2))
    stream.write("  ORBSYM=%s\n" % "".join(f"{s}," for s in orbsym))
    stream.write("  ISYM=1,\n")
    stream.write(" &END\n")

    eri_format = float_format + " %4d %4d %4d %4d\n"
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(i + 1):
                for m in range(k + 1):
                    km = k * (k + 1) // 2 + m
                    if ij < km:
                        continue
                    v = mo.g[i, j, k, m]
                    if abs(v) > tol:
                        stream.write(eri_format % (v, i + 1, j + 1, k + 1, m + 1))

    h_format = float_format + " %4d %4d  0  0\n"
    for i in range(n):
        for j in range(i + 1):
            if abs(mo.h[i, j]) > tol:
                stream.write(h_format % (mo.h[i, j], i + 1, j + 1))
    stream.write((float_format + "  0  0  0  0\n") % mo.core_energy)
