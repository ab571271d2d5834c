"""Photon-added coherent states of exactly solvable Hamiltonians."""

from ._solvstate import (
    ConvergenceError,
    DimensionError,
    DomainError,
    FockState,
    Spectrum,
    displace_ground,
    eigen_residual,
    errata_study,
    evolve,
    gk_norm_constant,
    gk_overlap,
    gk_state,
    inner_product,
    kp_norm_constant,
    kp_overlap,
    kp_state,
    kp_state_general,
    mellin_check,
    pt,
    verify,
    xi_from_z,
)

__all__ = [
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "FockState",
    "Spectrum",
    "displace_ground",
    "eigen_residual",
    "errata_study",
    "evolve",
    "gk_norm_constant",
    "gk_overlap",
    "gk_state",
    "inner_product",
    "kp_norm_constant",
    "kp_overlap",
    "kp_state",
    "kp_state_general",
    "mellin_check",
    "pt",
    "verify",
    "xi_from_z",
]
