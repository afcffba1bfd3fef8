"""Cardinality-constrained quantum optimization toolkit.

Thin wrapper over the C++ core: statevector simulation of weight-k Grover
search, adaptive-threshold minimization, and the hybrid splitting solver for
the risk-parity model.
"""

from qcardopt._core import (
    admm_solve,
    brute_force,
    decomposition_estimates,
    dicke_block_counts,
    eval_quadratic,
    eval_risk_parity,
    gas_minimize,
    grover_iteration_estimates,
    oracle_gate_counts,
    optimal_rotations,
    optimal_rotations_real,
    prepare_dicke,
    select_parameters,
    synth_instance,
    total_query_estimate,
)

__all__ = [
    "admm_solve",
    "brute_force",
    "decomposition_estimates",
    "dicke_block_counts",
    "eval_quadratic",
    "eval_risk_parity",
    "gas_minimize",
    "grover_iteration_estimates",
    "oracle_gate_counts",
    "optimal_rotations",
    "optimal_rotations_real",
    "prepare_dicke",
    "select_parameters",
    "synth_instance",
    "total_query_estimate",
]

__version__ = "0.1.0"
