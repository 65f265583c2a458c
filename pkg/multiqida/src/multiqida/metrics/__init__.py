from multiqida.metrics.energies import correlation_energy_pct, mced, summarize
from multiqida.metrics.export import (
    read_run_records,
    read_summary_csv,
    summarize_records,
    summarize_records_file,
    write_summary_csv,
)
from multiqida.metrics.symmetry import (
    SymmetryOperators,
    spin_lattice_operators,
    symmetry_expectations,
    symmetry_operators,
)

__all__ = [
    "SymmetryOperators",
    "correlation_energy_pct",
    "mced",
    "read_run_records",
    "read_summary_csv",
    "spin_lattice_operators",
    "summarize",
    "summarize_records",
    "summarize_records_file",
    "symmetry_expectations",
    "symmetry_operators",
    "write_summary_csv",
]
