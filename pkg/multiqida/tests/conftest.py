from __future__ import annotations

import logging
import sys
from pathlib import Path

import numpy as np
import pytest

# Ensure we import the in-repo multiqida package rather than an installed copy.
_SRC = Path(__file__).resolve().parents[1] / "src"
if str(_SRC) not in sys.path:
    sys.path.insert(0, str(_SRC))

from multiqida.hamcore.fcidump import load_fcidump
from multiqida.hamcore.integrals import MolecularIntegrals, build_qubit_hamiltonian
from multiqida.hamcore.lattice import LatticeTopology, heisenberg_hamiltonian
from multiqida.hamcore.pauli import PauliSum

FIXTURES = Path(__file__).resolve().parent / "fixtures"
CONFIGS = Path(__file__).resolve().parents[1] / "configs"

# Hand-derived from the fixture: the ground state mixes the HF determinant
# and the doubly excited one through the (12|12) exchange integral.
H2_HF_ENERGY = -1.1166843870
H2_GROUND_ENERGY = -1.1372659055
H2_HF_BITSTRING = "0101"


@pytest.fixture(autouse=True)
def _reset_root_logging():
    yield
    root = logging.getLogger()
    for h in list(root.handlers):
        root.removeHandler(h)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def h2_fcidump() -> Path:
    return FIXTURES / "h2_sto3g.fcidump"


@pytest.fixture(scope="session")
def h2_integrals(h2_fcidump: Path) -> MolecularIntegrals:
    return load_fcidump(h2_fcidump)


@pytest.fixture(scope="session")
def h2_hamiltonian(h2_integrals: MolecularIntegrals) -> PauliSum:
    return build_qubit_hamiltonian(h2_integrals)


@pytest.fixture(scope="session")
def ring4_hamiltonian() -> PauliSum:
    return heisenberg_hamiltonian(4, 1.0, LatticeTopology.RING)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
