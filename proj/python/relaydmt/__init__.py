"""Diversity-multiplexing tradeoff toolkit for MIMO half-duplex relay channels."""

from ._core import (
    Curve,
    antidiagonal_min_check,
    curve_min,
    diversity_order,
    full_duplex_dmt,
    grid_oracle,
    half_duplex_dmt,
    hermitian_eigenvalues,
    log_det_shifted,
    mutual_info_identity_check,
    optimal_t,
    ptp_dmt,
    run_outage,
    sample_haar_unitary,
    solve_program,
    spherical_exponent,
    spherical_integral_estimate,
    symmetric_half_duplex_dmt,
    tail_bound_check,
    witness_check,
)

__all__ = [
    "Curve",
    "antidiagonal_min_check",
    "curve_min",
    "diversity_order",
    "full_duplex_dmt",
    "grid_oracle",
    "half_duplex_dmt",
    "hermitian_eigenvalues",
    "log_det_shifted",
    "mutual_info_identity_check",
    "optimal_t",
    "ptp_dmt",
    "run_outage",
    "sample_haar_unitary",
    "solve_program",
    "spherical_exponent",
    "spherical_integral_estimate",
    "symmetric_half_duplex_dmt",
    "tail_bound_check",
    "witness_check",
]

__version__ = "0.1.0"
