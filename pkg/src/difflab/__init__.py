"""Rudin-Shapiro type substitutions and their diffraction spectra."""

from difflab.subst import (
    SubstitutionRule,
    fixed_point_prefix,
    instruction_matrices,
    is_aperiodic_pansiot,
    is_primitive,
    legal_factors,
    perron_data,
    substitution_matrix,
)
from difflab.rudin import (
    SignSequence,
    binary_reduce,
    coefficients,
    derive_substitution,
    single_step_substitution,
)

__version__ = "0.1.0"

__all__ = [
    "SignSequence",
    "SubstitutionRule",
    "binary_reduce",
    "coefficients",
    "derive_substitution",
    "fixed_point_prefix",
    "instruction_matrices",
    "is_aperiodic_pansiot",
    "is_primitive",
    "legal_factors",
    "perron_data",
    "single_step_substitution",
    "substitution_matrix",
]
