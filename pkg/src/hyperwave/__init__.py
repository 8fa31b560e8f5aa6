"""Quaternion-valued continuous wavelet transforms of images.

Hypercomplex and monogenic extensions, quaternionic Morse wavelets, FFT-based
transforms over scale and rotation, polar forms and ridge extraction.
"""

from .cwt import (CoefficientSlab, LocalityGrid, cwt, cwt_iter, cwt_quaternion, reconstruct,
                  scalogram, verify_identities)
from .errors import (DivergentIntegral, FieldFormatError, GridTooCoarse, HyperwaveError,
                     NoRidge, NonpositiveScale, OrderTooLarge, ScaleOutOfRange,
                     SeriesNonconvergent, UnsupportedRotation, WindowTooSmall, ZeroQuaternion)
from .grid_spectral import (FreqGrid, Multiplier, QuaternionField, hilbert, hilbert_total,
                            poisson_extension, qft_forward, qft_inverse, riesz, uqft_forward,
                            uqft_inverse)
from .hyperanalytic import (HyperanalyticKind, hypercomplex_extend, monogenic_extend,
                            phase_shift_plane, phase_shift_separable, theta_hypercomplex_extend,
                            theta_monogenic_decompose)
from .quat_core import (I, J, K, ONE, PolarHypercomplex, PolarMonogenic, Quaternion,
                        polar_hypercomplex, polar_monogenic)
from .ridge import (RidgePoint, estimate_orientation_field, hypercomplex_ridge,
                    monogenic_ridge)
from .wavelets import (LocalityIndex, MorseParams1D, MorseParamsIso, Wavelet, WaveletKind,
                       admissibility_constant, spatial_field)

__version__ = "0.1.0"

__all__ = [
    "CoefficientSlab", "LocalityGrid", "cwt", "cwt_iter", "cwt_quaternion", "reconstruct",
    "scalogram", "verify_identities",
    "DivergentIntegral", "FieldFormatError", "GridTooCoarse", "HyperwaveError", "NoRidge",
    "NonpositiveScale", "OrderTooLarge", "ScaleOutOfRange", "SeriesNonconvergent",
    "UnsupportedRotation", "WindowTooSmall", "ZeroQuaternion",
    "FreqGrid", "Multiplier", "QuaternionField", "hilbert", "hilbert_total",
    "poisson_extension", "qft_forward", "qft_inverse", "riesz", "uqft_forward", "uqft_inverse",
    "HyperanalyticKind", "hypercomplex_extend", "monogenic_extend", "phase_shift_plane",
    "phase_shift_separable", "theta_hypercomplex_extend", "theta_monogenic_decompose",
    "I", "J", "K", "ONE", "PolarHypercomplex", "PolarMonogenic", "Quaternion",
    "polar_hypercomplex", "polar_monogenic",
    "RidgePoint", "estimate_orientation_field", "hypercomplex_ridge", "monogenic_ridge",
    "LocalityIndex", "MorseParams1D", "MorseParamsIso", "Wavelet", "WaveletKind",
    "admissibility_constant", "spatial_field",
]
