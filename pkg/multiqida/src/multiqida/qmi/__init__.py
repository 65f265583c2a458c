"""QMI maps from sparse or dense states."""

from multiqida.qmi.mutual_info import (
    QmiMatrix,
    load_qmi_csv,
    qmi_matrix,
    ranked_pairs,
    read_qmi_csv,
    write_qmi_csv,
    write_ranked_pairs_csv,
)
from multiqida.qmi.rdm import Rdm, one_qubit_rdm, two_qubit_rdm, von_neumann_entropy
from multiqida.qmi.sparse import (
    SparseState,
    dump_sparse_state,
    load_sparse_state,
    read_sparse_state,
    sparse_from_statevector,
)

__all__ = [
    "QmiMatrix",
    "Rdm",
    "SparseState",
    "dump_sparse_state",
    "load_qmi_csv",
    "load_sparse_state",
    "one_qubit_rdm",
    "qmi_matrix",
    "ranked_pairs",
    "read_qmi_csv",
    "read_sparse_state",
    "sparse_from_statevector",
    "two_qubit_rdm",
    "von_neumann_entropy",
    "write_qmi_csv",
    "write_ranked_pairs_csv",
]
