"""Exception types raised across the package."""

from __future__ import annotations


class HyperwaveError(Exception):
    """Base class for all package errors."""


class ZeroQuaternion(HyperwaveError, ValueError):
    """Polar angles requested for a quaternion of zero magnitude."""


class OrderTooLarge(HyperwaveError, ValueError):
    """Laguerre order beyond the range where the series form is used."""


class UnsupportedRotation(HyperwaveError, ValueError):
    """Sampled-field rotation requested off the quarter-turn set."""


class NonpositiveScale(HyperwaveError, ValueError):
    """A scale or auxiliary variable that must be positive was not."""


class DivergentIntegral(HyperwaveError, ArithmeticError):
    """An admissibility integral failed to converge under refinement."""


class WindowTooSmall(HyperwaveError, ValueError):
    """Rendering window clips more than the allowed wavelet energy."""


class SeriesNonconvergent(HyperwaveError, ArithmeticError):
    """Hypergeometric series did not converge within the term budget."""


class ScaleOutOfRange(HyperwaveError, ValueError):
    """CWT scale outside the range where the wavelet fits the field."""


class GridTooCoarse(HyperwaveError, ValueError):
    """Locality grid too sparse for the reconstruction quadrature."""


class NoRidge(HyperwaveError, ValueError):
    """No coefficient exceeds the ridge detection threshold."""


class FieldFormatError(HyperwaveError, ValueError):
    """Malformed field file or unsupported image variant."""
