"""Multiresolution analysis and wavelet bases on the p-adic line."""
from .exceptions import MaskInfeasibleError, PAdicMRAError, SupportCapError, VerificationError
from .functions import (
    LCFunction,
    dilate,
    fourier,
    indicator,
    inner_product,
    inverse_fourier,
    modulate,
    norm,
    omega,
    refine,
    translate,
)
from .padic import Ball, PAdicScalar, ShiftIndex, character, enumerate_shifts, fractional_part, padic_norm, valuation
from .refinement import (
    Mask,
    build_phi,
    build_phi_hat,
    haar_mask,
    mask_from_beta,
    mask_from_values,
    shift_gram,
    solve_mask_constraints,
    validate_mask,
)
from .transform import DecompositionResult, analyze, embedding_level, fine_scale_decay, reconstruct
from .wavelets import (
    WaveletSystem,
    build_wavelets,
    complete_to_unitary,
    kozyrev_closed_form,
    orbit_system_from_mask,
    wavelet_gram,
)

__version__ = "0.1.0"
