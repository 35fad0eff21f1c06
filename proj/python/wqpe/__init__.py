"""Windowed phase estimation and filtered ground-state preparation."""

from ._core import (
    WqpeError,
    __version__,
    analytic_distribution,
    cbar,
    contamination_sweep,
    error_rate,
    filter_cosine,
    filter_cosine_plus,
    filter_rect,
    min_extra_qubits,
    run_cli,
    tail_bound,
    thirring_hamiltonian,
    trotter_error,
    window_amplitudes,
)

__all__ = [
    "WqpeError",
    "__version__",
    "analytic_distribution",
    "cbar",
    "contamination_sweep",
    "error_rate",
    "filter_cosine",
    "filter_cosine_plus",
    "filter_rect",
    "min_extra_qubits",
    "run_cli",
    "tail_bound",
    "thirring_hamiltonian",
    "trotter_error",
    "window_amplitudes",
]
