"""Hypercomplex and monogenic extensions of real images and phase shifts.

All operators act through Fourier multipliers, so a frame rotation by an
arbitrary angle never resamples the field: the rotated Hilbert and Riesz
factors are evaluated at ``r_{-theta} f`` on the DFT grid.  The one place
where sampled data is rotated, :func:`theta_hypercomplex_extend`, accepts
only quarter turns, which permute grid points exactly.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from . import quat_core as qc
from .errors import UnsupportedRotation
from .grid_spectral import (FreqGrid, Multiplier, QuaternionField, as_real_field,
                            multiplier_values)

#: amplitude (relative to the peak) below which phase shifts pass samples through
PASS_THROUGH = 1e-12


class HyperanalyticKind(enum.Enum):
    HYPERCOMPLEX_PP = (1, 1)
    HYPERCOMPLEX_MP = (-1, 1)
    HYPERCOMPLEX_PM = (1, -1)
    HYPERCOMPLEX_MM = (-1, -1)
    MONOGENIC = (1,)
    ANTI_MONOGENIC = (-1,)


def _filtered_planes(g: np.ndarray, kinds, theta: float) -> list[np.ndarray]:
    grid = FreqGrid.for_shape(g.shape)
    G = np.fft.fft2(g)
    return [np.fft.ifft2(G * multiplier_values(k, grid, theta)).real for k in kinds]


def hypercomplex_extend(g, signs: tuple[int, int] = (1, 1), theta: float = 0.0) -> QuaternionField:
    """``g + s1 i H1 g + s2 j H2 g + s1 s2 k HT g`` in a frame rotated by ``theta``.

    ``signs = (1, 1)`` is the hypercomplex signal; the other sign pairs give
    the remaining three terms of the analytic/anti-analytic split, which
    average to ``g``.  For ``theta != 0`` the partial Hilbert transforms
    act along the rotated axes; for ``g(x) = h(r_{-theta} x)`` this is the
    hypercomplex signal of ``h`` evaluated at ``r_{-theta} x``.
    """
    g = as_real_field(g)
    s1, s2 = signs
    if s1 not in (1, -1) or s2 not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    h1, h2, ht = _filtered_planes(
        g, (Multiplier.HILBERT1, Multiplier.HILBERT2, Multiplier.HILBERT_TOTAL), theta)
    return QuaternionField(np.stack([g, s1 * h1, s2 * h2, s1 * s2 * ht]))


def hypercomplex_split(g, theta: float = 0.0) -> dict[tuple[int, int], QuaternionField]:
    """All four sign combinations of :func:`hypercomplex_extend`."""
    g = as_real_field(g)
    h1, h2, ht = _filtered_planes(
        g, (Multiplier.HILBERT1, Multiplier.HILBERT2, Multiplier.HILBERT_TOTAL), theta)
    return {(s1, s2): QuaternionField(np.stack([g, s1 * h1, s2 * h2, s1 * s2 * ht]))
            for s1 in (1, -1) for s2 in (1, -1)}


def quarter_turns(theta: float) -> int:
    """Number of quarter turns in ``theta``; raises if it is not a multiple."""
    k = theta / (math.pi / 2)
    kr = round(k)
    if abs(k - kr) > 1e-12:
        raise UnsupportedRotation(
            f"sampled fields can only be rotated by multiples of pi/2, got {theta}")
    return kr % 4


def rotate_samples(field: np.ndarray, theta: float) -> np.ndarray:
    """``out[x] = field[r_{-theta} x]`` on the periodic grid, for quarter turns.

    Works on the last two axes.  Odd quarter turns need a square grid.
    """
    k = quarter_turns(theta)
    h, w = field.shape[-2:]
    if k % 2 and h != w:
        raise UnsupportedRotation("odd quarter turns need a square field")
    c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][k]
    x1 = np.arange(h)[:, None]
    x2 = np.arange(w)[None, :]
    src1 = (c * x1 + s * x2) % h
    src2 = (-s * x1 + c * x2) % w
    return field[..., src1, src2]


def theta_hypercomplex_extend(source, theta: float, shape=None) -> QuaternionField:
    """Hypercomplex signal carried into a frame rotated by ``theta``.

    The result is ``HC g`` sampled at ``r_{-theta} x``.  ``source`` is either

    * a real sampled field, in which case ``theta`` must be a quarter turn
      (raises :class:`UnsupportedRotation` otherwise), or
    * a callable ``gen(u1, u2)`` returning the four planes of ``HC g`` in
      closed form at arbitrary coordinates, used with ``shape``.
    """
    if callable(source):
        if shape is None:
            raise ValueError("generator sources need an explicit shape")
        h, w = shape
        x1 = np.arange(h, dtype=float)[:, None] * np.ones((1, w))
        x2 = np.arange(w, dtype=float)[None, :] * np.ones((h, 1))
        c, s = math.cos(theta), math.sin(theta)
        out = np.asarray(source(c * x1 + s * x2, -s * x1 + c * x2), dtype=float)
        return QuaternionField(out)
    hc = hypercomplex_extend(source)
    if quarter_turns(theta) == 0:
        return hc
    return QuaternionField(rotate_samples(hc.data, theta))


def monogenic_extend(g, sign: int = 1, theta: float = 0.0) -> QuaternionField:
    """``g +- (i R1 g + j R2 g)`` with the Riesz pair taken in a rotated frame.

    With ``theta != 0`` the Riesz components are ``cos(theta) R1 g +
    sin(theta) R2 g`` and ``-sin(theta) R1 g + cos(theta) R2 g``.
    """
    g = as_real_field(g)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    r1, r2 = _filtered_planes(g, (Multiplier.RIESZ1, Multiplier.RIESZ2), 0.0)
    c, s = math.cos(theta), math.sin(theta)
    v1 = c * r1 + s * r2
    v2 = -s * r1 + c * r2
    return QuaternionField(np.stack([g, sign * v1, sign * v2, np.zeros_like(g)]))


def theta_monogenic_decompose(g, theta: float) -> tuple[QuaternionField, QuaternionField]:
    """The monogenic and anti-monogenic pair in a frame rotated by ``theta``."""
    return monogenic_extend(g, 1, theta), monogenic_extend(g, -1, theta)


def phase_shift_plane(g, theta_s: float, theta: float = 0.0) -> np.ndarray:
    """Shift every local plane wave of ``g`` by ``theta_s`` radians of phase.

    Evaluates ``|g+| cos(2 pi phi - theta_s)`` from the monogenic polar form
    of the rotated-frame monogenic signal, with the orientation folded into
    a half-turn so the phase changes sign with the direction of travel.
    Samples whose amplitude is negligible are returned unchanged.
    """
    g = as_real_field(g)
    if theta_s == 0:
        return g.copy()
    plus = monogenic_extend(g, 1, theta)
    amp, _, phase, _ = qc.polar_monogenic_arr(plus.data, fold=True)
    out = amp * np.cos(2 * math.pi * phase - theta_s)
    quiet = amp <= PASS_THROUGH * max(float(amp.max()), 1e-300)
    return np.where(quiet, g, out)


def phase_shift_separable(g, theta_s1: float, theta_s2: float, theta: float = 0.0) -> np.ndarray:
    """Shift the two separable oscillations of ``g`` by ``theta_s1``, ``theta_s2``.

    Evaluates ``|q| cos(2 pi alpha - theta_s1) cos(2 pi beta - theta_s2)``
    from the hypercomplex polar form of ``q``, the rotated-frame
    hypercomplex signal.  The product is the same for every branch of the
    angles because ``(alpha, beta)`` and ``(alpha + 1/2, beta + 1/2)``
    describe the same quaternion when ``gamma = 0``.
    """
    g = as_real_field(g)
    if theta_s1 == 0 and theta_s2 == 0:
        return g.copy()
    hc = hypercomplex_extend(g, theta=theta)
    mag, alpha, beta, _ = qc.polar_hypercomplex_arr(hc.data)
    out = mag * np.cos(2 * math.pi * alpha - theta_s1) * np.cos(2 * math.pi * beta - theta_s2)
    quiet = mag <= PASS_THROUGH * max(float(mag.max()), 1e-300)
    return np.where(quiet, g, out)


def extension_of(kind: HyperanalyticKind, g, theta: float = 0.0) -> QuaternionField:
    """Dispatch on :class:`HyperanalyticKind`."""
    kind = HyperanalyticKind(kind)
    if len(kind.value) == 2:
        return hypercomplex_extend(g, kind.value, theta)
    return monogenic_extend(g, kind.value[0], theta)

