"""Sampled fields, Fourier transforms and frequency-domain multipliers.

Conventions
-----------
Arrays are indexed ``field[x1, x2]``: axis 0 carries the first spatial
coordinate and axis 1 the second, with unit sample spacing.  The forward
transform is the unnormalised ``exp(-2 pi i f.x)`` DFT and the inverse carries
``1/(H W)``.  Bin frequencies follow :func:`numpy.fft.fftfreq`, so they lie in
[-1/2, 1/2) with negative frequencies in the upper half of each axis.

Odd multipliers use ``sgn(0) = 0`` and vanish on Nyquist lines, which keeps
the output of every multiplier real for real input.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import quat_core as qc
from .errors import NonpositiveScale

#: relative size below which a rotated frequency coordinate counts as zero
SIGN_TOL = 1e-12


def as_real_field(g) -> np.ndarray:
    g = np.asarray(g)
    if g.ndim != 2:
        raise ValueError(f"expected a 2-D field, got shape {g.shape}")
    if min(g.shape) < 2:
        raise ValueError("fields need at least 2 samples along each axis")
    if np.iscomplexobj(g):
        raise TypeError("expected a real-valued field")
    g = g.astype(float, copy=False)
    if not np.all(np.isfinite(g)):
        raise ValueError("field contains non-finite samples")
    return g


@dataclass(frozen=True)
class FreqGrid:
    """DFT bin frequencies (cycles per sample) of an ``H x W`` field."""

    height: int
    width: int

    @classmethod
    def for_shape(cls, shape) -> "FreqGrid":
        return cls(int(shape[0]), int(shape[1]))

    @cached_property
    def f1(self) -> np.ndarray:
        return np.broadcast_to(np.fft.fftfreq(self.height)[:, None], self.shape)

    @cached_property
    def f2(self) -> np.ndarray:
        return np.broadcast_to(np.fft.fftfreq(self.width)[None, :], self.shape)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    @cached_property
    def radius(self) -> np.ndarray:
        return np.hypot(self.f1, self.f2)

    @cached_property
    def angle(self) -> np.ndarray:
        return np.arctan2(self.f2, self.f1)

    @cached_property
    def nyquist(self) -> np.ndarray:
        """Mask of bins on a Nyquist line (only present for even sizes)."""
        m = np.zeros(self.shape, dtype=bool)
        if self.height % 2 == 0:
            m[self.height // 2, :] = True
        if self.width % 2 == 0:
            m[:, self.width // 2] = True
        return m

    @cached_property
    def nyquist1(self) -> np.ndarray:
        m = np.zeros(self.shape, dtype=bool)
        if self.height % 2 == 0:
            m[self.height // 2, :] = True
        return m

    @cached_property
    def nyquist2(self) -> np.ndarray:
        m = np.zeros(self.shape, dtype=bool)
        if self.width % 2 == 0:
            m[:, self.width // 2] = True
        return m

    def rotated(self, theta: float) -> tuple[np.ndarray, np.ndarray]:
        """Components of ``r_{-theta} f``, the frequency seen in a frame
        rotated by ``theta``."""
        c, s = math.cos(theta), math.sin(theta)
        return c * self.f1 + s * self.f2, -s * self.f1 + c * self.f2

    @cached_property
    def negate_index(self) -> tuple[np.ndarray, np.ndarray]:
        """Index arrays mapping each bin to the bin of ``-f``."""
        i1 = (-np.arange(self.height)) % self.height
        i2 = (-np.arange(self.width)) % self.width
        return i1[:, None], i2[None, :]


def tol_sign(x: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """``sgn`` with values within ``SIGN_TOL * scale`` of zero mapped to 0."""
    s = np.sign(x)
    return np.where(np.abs(x) <= SIGN_TOL * scale, 0.0, s)


def hermitian_part(spec: np.ndarray, grid: FreqGrid | None = None) -> np.ndarray:
    """``(S(f) + conj S(-f)) / 2``: the spectrum of the real part of ``ifft2(S)``."""
    if grid is None:
        grid = FreqGrid.for_shape(spec.shape[-2:])
    i1, i2 = grid.negate_index
    return 0.5 * (spec + np.conj(spec[..., i1, i2]))


# ---------------------------------------------------------------------------
# Plain transforms


def fft2(x) -> np.ndarray:
    """Unnormalised forward DFT over the last two axes."""
    return np.fft.fft2(np.asarray(x))


def ifft2(X) -> np.ndarray:
    """Inverse of :func:`fft2` (carries the ``1/(H W)`` factor)."""
    return np.fft.ifft2(np.asarray(X))


def _dft_matrix(n: int, sign: float) -> np.ndarray:
    k = np.arange(n)
    return np.exp(sign * 2j * np.pi * np.outer(k, k) / n)


def dft2_bruteforce(x, inverse: bool = False) -> np.ndarray:
    """Direct O(N^4) double sum; reference only, capped at 16 x 16."""
    x = np.asarray(x, dtype=complex)
    h, w = x.shape
    if h > 16 or w > 16:
        raise ValueError("brute-force DFT is limited to 16 x 16 fields")
    sign = 1.0 if inverse else -1.0
    out = np.zeros((h, w), dtype=complex)
    for k1 in range(h):
        for k2 in range(w):
            acc = 0j
            for n1 in range(h):
                for n2 in range(w):
                    acc += x[n1, n2] * np.exp(sign * 2j * np.pi * (k1 * n1 / h + k2 * n2 / w))
            out[k1, k2] = acc
    if inverse:
        out /= h * w
    return out


# ---------------------------------------------------------------------------
# Quaternion fields and the quaternion Fourier transform


class QuaternionField:
    """Four co-indexed real planes ``(r, i, j, k)`` of equal shape."""

    __slots__ = ("data",)

    def __init__(self, data):
        data = np.asarray(data, dtype=float)
        if data.ndim != 3 or data.shape[0] != 4:
            raise ValueError("quaternion field data must have shape (4, H, W)")
        self.data = data

    @classmethod
    def from_planes(cls, r=None, i=None, j=None, k=None) -> "QuaternionField":
        planes = [r, i, j, k]
        shape = next(np.shape(p) for p in planes if p is not None)
        return cls(np.stack([np.zeros(shape) if p is None else np.asarray(p, float)
                             for p in planes]))

    @classmethod
    def real(cls, g) -> "QuaternionField":
        return cls.from_planes(r=g)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1:]

    r = property(lambda self: self.data[0])
    i = property(lambda self: self.data[1])
    j = property(lambda self: self.data[2])
    k = property(lambda self: self.data[3])

    def __add__(self, other: "QuaternionField") -> "QuaternionField":
        return QuaternionField(self.data + other.data)

    def __sub__(self, other: "QuaternionField") -> "QuaternionField":
        return QuaternionField(self.data - other.data)

    def __neg__(self) -> "QuaternionField":
        return QuaternionField(-self.data)

    def scale(self, s) -> "QuaternionField":
        return QuaternionField(self.data * s)

    def __mul__(self, other) -> "QuaternionField":
        """Pointwise Hamilton product, or left multiplication by a constant."""
        if isinstance(other, QuaternionField):
            return QuaternionField(qc.qmul_arr(self.data, other.data))
        if isinstance(other, qc.Quaternion):
            q = other.as_array()[:, None, None]
            return QuaternionField(qc.qmul_arr(self.data, q))
        return self.scale(other)

    def __rmul__(self, other) -> "QuaternionField":
        if isinstance(other, qc.Quaternion):
            q = other.as_array()[:, None, None]
            return QuaternionField(qc.qmul_arr(q, self.data))
        return self.scale(other)

    def conj(self) -> "QuaternionField":
        return QuaternionField(qc.qconj_arr(self.data))

    def abs(self) -> np.ndarray:
        return qc.qabs_arr(self.data)

    def copy(self) -> "QuaternionField":
        return QuaternionField(self.data.copy())


def _cos_sin_transforms(x: np.ndarray, inverse: bool):
    """Separable cosine/sine sums of real planes over the last two axes.

    Returns ``(cc, cs, sc, ss)`` with e.g. ``cs[k] = sum_x cos(u) sin(v) x``,
    ``u = 2 pi k1 x1 / H``, ``v = 2 pi k2 x2 / W``.  With ``inverse=True``
    each sum carries the ``1/(H W)`` factor.
    """
    tr = np.fft.ifft if inverse else np.fft.fft
    a = tr(x, axis=-2)
    c1 = a.real
    s1 = a.imag if inverse else -a.imag
    bc = tr(c1, axis=-1)
    bs = tr(s1, axis=-1)
    if inverse:
        return bc.real, bc.imag, bs.real, bs.imag
    return bc.real, -bc.imag, bs.real, -bs.imag


def _qft_core(q: np.ndarray, inverse: bool) -> np.ndarray:
    # e^{-+ i u} g e^{-+ j v} = cu cv g -+ cu sv g j -+ su cv i g + su sv i g j
    cc, cs, sc, ss = _cos_sin_transforms(q, inverse)
    iq = qc.I.as_array()[:, None, None]
    jq = qc.J.as_array()[:, None, None]
    sgn = 1.0 if inverse else -1.0
    return (cc
            + sgn * qc.qmul_arr(cs, jq)
            + sgn * qc.qmul_arr(iq, sc)
            + qc.qmul_arr(qc.qmul_arr(iq, ss), jq))


def qft_forward(field: QuaternionField) -> QuaternionField:
    """Two-sided quaternion Fourier transform.

    ``G(q) = sum_x exp(-2 pi i q1 x1) g(x) exp(-2 pi j q2 x2)``: the ``i``
    exponential acts from the left along axis 0, the ``j`` exponential from
    the right along axis 1.  Real-valued inputs go through
    :func:`qft_real`.
    """
    if not np.any(field.data[1:]):
        return qft_real(field.r)
    return QuaternionField(_qft_core(field.data, inverse=False))


def qft_inverse(spectrum: QuaternionField) -> QuaternionField:
    """Inverse of :func:`qft_forward`."""
    return QuaternionField(_qft_core(spectrum.data, inverse=True))


def qft_real(g) -> QuaternionField:
    """Quaternion Fourier transform of a real field from one complex FFT.

    ``G_Q(q) = (1 - k)/2 G(q) + (1 + k)/2 G(-q1, q2)`` with the complex
    spectrum embedded as ``Re + j Im``.
    """
    g = as_real_field(g)
    G = np.fft.fft2(g)
    grid = FreqGrid.for_shape(g.shape)
    i1, _ = grid.negate_index
    Gm = G[i1[:, 0], :]
    a, b = G.real, G.imag
    c, d = Gm.real, Gm.imag
    return QuaternionField(np.stack([(a + c) / 2, (b - d) / 2, (b + d) / 2, (c - a) / 2]))


def qft_bruteforce(field: QuaternionField) -> QuaternionField:
    """Direct quaternion double sum; reference only (fields up to 16 x 16)."""
    h, w = field.shape
    if h > 16 or w > 16:
        raise ValueError("brute-force QFT is limited to 16 x 16 fields")
    out = np.zeros((4, h, w))
    x1 = np.arange(h)
    x2 = np.arange(w)
    for k1 in range(h):
        u = 2 * np.pi * k1 * x1 / h
        left = np.stack([np.cos(u), -np.sin(u), 0 * u, 0 * u])
        for k2 in range(w):
            v = 2 * np.pi * k2 * x2 / w
            right = np.stack([np.cos(v), 0 * v, -np.sin(v), 0 * v])
            acc = np.zeros(4)
            for n1 in range(h):
                for n2 in range(w):
                    t = qc.qmul_arr(left[:, n1], field.data[:, n1, n2])
                    acc += qc.qmul_arr(t, right[:, n2])
            out[:, k1, k2] = acc
    return QuaternionField(out)


def _along(field: QuaternionField, nu: float) -> tuple[np.ndarray, np.ndarray]:
    """Split a field with values in span{1, e_nu} into its two coordinates."""
    e = qc.unit_pure(nu)
    along = field.i * e.i + field.j * e.j
    off = np.sqrt((field.i - along * e.i) ** 2 + (field.j - along * e.j) ** 2 + field.k ** 2)
    scale = max(float(np.max(np.abs(field.data))), 1e-300)
    if np.max(off) > 1e-9 * scale:
        raise ValueError("field has components outside the plane spanned by 1 and e_nu")
    return field.r, along


def uqft_forward(g, nu: float) -> QuaternionField:
    """Fourier transform along the unit pure quaternion ``e_nu``.

    The kernel ``exp(-2 pi e_nu f.x)`` lives in the plane spanned by 1 and
    ``e_nu``, which is isomorphic to the complex numbers, so one FFT
    suffices.  ``g`` is a real field or a :class:`QuaternionField` whose
    values lie in that plane.
    """
    if isinstance(g, QuaternionField):
        r, s = _along(g, nu)
        G = np.fft.fft2(r + 1j * s)
    else:
        G = np.fft.fft2(as_real_field(g))
    e = qc.unit_pure(nu)
    return QuaternionField(np.stack([G.real, e.i * G.imag, e.j * G.imag,
                                     np.zeros_like(G.real)]))


def uqft_inverse(spectrum: QuaternionField, nu: float, real: bool = True):
    """Inverse of :func:`uqft_forward`.

    Returns the real field, or with ``real=False`` the full
    :class:`QuaternionField` in span{1, e_nu}.
    """
    e = qc.unit_pure(nu)
    r, s = _along(spectrum, nu)
    z = np.fft.ifft2(r + 1j * s)
    if real:
        return z.real
    return QuaternionField(np.stack([z.real, e.i * z.imag, e.j * z.imag, np.zeros_like(z.real)]))


def fft2_right_j(field: QuaternionField) -> tuple[np.ndarray, np.ndarray]:
    """Fourier transform with kernel ``exp(-2 pi j f.x)`` applied from the right.

    Writing ``q = (r + j qj) + i (qi + j qk)``, right multiplication by a
    ``j``-exponential acts on each bracket as a complex exponential, so the
    spectrum is ``Z1 + i Z2`` with ``Z1 = FFT(r + 1j qj)`` and
    ``Z2 = FFT(qi + 1j qk)``; both are returned.
    """
    d = field.data
    return np.fft.fft2(d[0] + 1j * d[2]), np.fft.fft2(d[1] + 1j * d[3])


# ---------------------------------------------------------------------------
# Multipliers


class Multiplier(enum.Enum):
    HILBERT1 = "hilbert1"
    HILBERT2 = "hilbert2"
    HILBERT_TOTAL = "hilbert_total"
    RIESZ1 = "riesz1"
    RIESZ2 = "riesz2"


def multiplier_values(kind: Multiplier, grid: FreqGrid, theta: float = 0.0) -> np.ndarray:
    """Complex factor per bin, with the frame rotated by ``theta``.

    The imaginary unit of the result is the Fourier-transform unit.  With
    ``theta = 0`` these are ``-i sgn(f_l)``, ``-sgn(f1) sgn(f2)`` and
    ``-i f_l / |f|``.
    """
    kind = Multiplier(kind)
    u1, u2 = grid.rotated(theta)
    nyq = grid.nyquist
    if kind in (Multiplier.HILBERT1, Multiplier.HILBERT2, Multiplier.HILBERT_TOTAL):
        s1 = tol_sign(u1)
        s2 = tol_sign(u2)
        if kind is Multiplier.HILBERT1:
            m = -1j * s1
        elif kind is Multiplier.HILBERT2:
            m = -1j * s2
        else:
            m = (-s1 * s2).astype(complex)
    else:
        rad = grid.radius
        safe = np.where(rad > 0, rad, 1.0)
        u = u1 if kind is Multiplier.RIESZ1 else u2
        m = np.where(rad > 0, -1j * u / safe, 0.0)
    if theta == 0.0:
        # unrotated odd factors only break symmetry on their own Nyquist line
        if kind is Multiplier.HILBERT1 or kind is Multiplier.RIESZ1:
            nyq = grid.nyquist1
        elif kind is Multiplier.HILBERT2 or kind is Multiplier.RIESZ2:
            nyq = grid.nyquist2
    return np.where(nyq, 0.0, m)


def apply_multiplier(spectrum: np.ndarray, kind: Multiplier, grid: FreqGrid | None = None,
                     theta: float = 0.0) -> np.ndarray:
    """Bin-wise product of a spectrum with a multiplier."""
    if grid is None:
        grid = FreqGrid.for_shape(spectrum.shape[-2:])
    return spectrum * multiplier_values(kind, grid, theta)


def filter_real(g, kind: Multiplier, theta: float = 0.0) -> np.ndarray:
    """Apply a multiplier to a real field and return the real result."""
    g = np.asarray(g, dtype=float)
    grid = FreqGrid.for_shape(g.shape)
    return np.fft.ifft2(apply_multiplier(np.fft.fft2(g), kind, grid, theta)).real


def hilbert(g, axis: int, theta: float = 0.0) -> np.ndarray:
    """Partial Hilbert transform along rotated axis 1 or 2."""
    return filter_real(g, Multiplier.HILBERT1 if axis == 1 else Multiplier.HILBERT2, theta)


def hilbert_total(g, theta: float = 0.0) -> np.ndarray:
    return filter_real(g, Multiplier.HILBERT_TOTAL, theta)


def riesz(g, theta: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Both Riesz components, optionally in a frame rotated by ``theta``."""
    g = np.asarray(g, dtype=float)
    grid = FreqGrid.for_shape(g.shape)
    G = np.fft.fft2(g)
    r1 = np.fft.ifft2(apply_multiplier(G, Multiplier.RIESZ1, grid, theta)).real
    r2 = np.fft.ifft2(apply_multiplier(G, Multiplier.RIESZ2, grid, theta)).real
    return r1, r2


# ---------------------------------------------------------------------------
# Poisson kernels


def _poisson_1d(kind: str, x, y: float):
    return (y if kind == "p" else x) / (math.pi * (x * x + y * y))


def _poisson_1d_periodic(kind: str, x, y: float, period: int):
    # closed-form sum of the kernel over all translates by the period
    w = 2 * math.pi / period
    den = period * (math.cosh(w * y) - np.cos(w * x))
    return (math.sinh(w * y) if kind == "p" else np.sin(w * x)) / den


def _poisson_1d_second_primitive(kind: str, x, y: float):
    # F'' equals the kernel
    if kind == "p":
        return (x * np.arctan(x / y) - 0.5 * y * np.log(x * x + y * y)) / math.pi
    return (x * np.log(x * x + y * y) - 2 * x + 2 * y * np.arctan(x / y)) / (2 * math.pi)


def _hat_poisson_1d(kind: str, d: np.ndarray, y: float, period: int) -> np.ndarray:
    """Periodised 1-D Poisson weights for piecewise-linear interpolation.

    The weight at offset ``d`` is the kernel integrated against the unit
    hat function centred on ``d``, so linear trends in the field are
    integrated exactly.  That matters for the odd conjugate kernel, whose
    centre cell would otherwise contribute a first-order error.  The
    remaining images of the kernel are smooth and enter as point samples.
    """
    F = _poisson_1d_second_primitive
    near = F(kind, d + 1.0, y) - 2.0 * F(kind, d, y) + F(kind, d - 1.0, y)
    far = _poisson_1d_periodic(kind, d, y, period) - _poisson_1d(kind, d, y)
    return near + far


def _solid_angle_primitive(x1, x2, y):
    # d^2/dx1 dx2 of this equals y / (x1^2 + x2^2 + y^2)^{3/2}
    return np.arctan2(x1 * x2, y * np.sqrt(x1 * x1 + x2 * x2 + y * y))


def _riesz_primitive(x1, x2, y):
    # d^2/dx1 dx2 of this equals x1 / (x1^2 + x2^2 + y^2)^{3/2}
    return -np.arcsinh(x2 / np.sqrt(x1 * x1 + y * y))


def _cell_integral(prim, d1, d2, y):
    a1, b1 = d1 - 0.5, d1 + 0.5
    a2, b2 = d2 - 0.5, d2 + 0.5
    return prim(b1, b2, y) - prim(a1, b2, y) - prim(b1, a2, y) + prim(a1, a2, y)


C2 = math.gamma(1.5) / math.pi ** 1.5  # = 1 / (2 pi)


def poisson_kernel(shape, y: float, kind: str = "p", dim: str = "2D") -> np.ndarray:
    """Cell-integrated Poisson kernel sampled on the periodic grid.

    Each sample is the integral of the analytic kernel over the unit cell
    around the minimum-image displacement, so the samples sum to the
    kernel mass inside the window and the ``y -> 0`` limit of the
    ``p`` kernel is the unit impulse.  2-D kernels are truncated at the
    window edge; 1-D kernels are periodised exactly and use hat-function
    weights instead of cell integrals.  ``dim="1D"`` kernels
    act along axis 0 only.
    """
    if not y > 0:
        raise NonpositiveScale(f"Poisson scale must be positive, got {y}")
    h, w = shape
    d1 = np.fft.fftfreq(h, 1.0 / h)[:, None]
    d2 = np.fft.fftfreq(w, 1.0 / w)[None, :]
    if dim == "1D":
        if kind not in ("p", "q1"):
            raise ValueError("1-D Poisson kernels are 'p' and 'q1'")
        k1 = _hat_poisson_1d("p" if kind == "p" else "q", d1[:, 0], y, h)
        out = np.zeros((h, w))
        out[:, 0] = k1
        return out
    if dim != "2D":
        raise ValueError("dim must be '1D' or '2D'")
    if kind == "p":
        return C2 * _cell_integral(_solid_angle_primitive, d1, d2, y)
    if kind == "q1":
        return C2 * _cell_integral(_riesz_primitive, d1, d2, y)
    if kind == "q2":
        return C2 * _cell_integral(_riesz_primitive, d2.T, d1.T, y).T
    raise ValueError("kind must be 'p', 'q1' or 'q2'")


def poisson_convolve(g, y: float, kind: str = "p", dim: str = "2D") -> np.ndarray:
    """Periodic convolution of ``g`` with a cell-integrated Poisson kernel."""
    g = as_real_field(g)
    ker = poisson_kernel(g.shape, y, kind, dim)
    return np.fft.ifft2(np.fft.fft2(g) * np.fft.fft2(ker)).real


def poisson_extension(g, y, kind: str, spacing: float = 1.0) -> np.ndarray:
    """Exact Poisson-type extension of a band-limited periodic field.

    Uses the analytic Fourier multipliers of the kernels, so the result is
    the continuous convolution evaluated at the sample points.  ``kind``:

    ``"hyper"``
        ``y = (y1, y2)``; returns the planes ``(u, v1, v2, v3)`` built from
        products of 1-D Poisson and conjugate Poisson kernels.
    ``"riesz"``
        scalar ``y``; returns ``(u, v1, v2)`` from the 2-D kernels.
    """
    g = as_real_field(g)
    grid = FreqGrid.for_shape(g.shape)
    f1 = grid.f1 / spacing
    f2 = grid.f2 / spacing
    G = np.fft.fft2(g)
    nyq = grid.nyquist

    def back(mult):
        return np.fft.ifft2(G * np.where(nyq, 0.0, mult)).real

    if kind == "hyper":
        y1, y2 = y
        p1 = np.exp(-2 * np.pi * np.abs(f1) * y1)
        p2 = np.exp(-2 * np.pi * np.abs(f2) * y2)
        q1 = -1j * np.sign(f1) * p1
        q2 = -1j * np.sign(f2) * p2
        return np.stack([back(p1 * p2), back(q1 * p2), back(p1 * q2), back(q1 * q2)])
    if kind == "riesz":
        rad = np.hypot(f1, f2)
        p = np.exp(-2 * np.pi * rad * y)
        safe = np.where(rad > 0, rad, 1.0)
        return np.stack([back(p), back(-1j * f1 / safe * p), back(-1j * f2 / safe * p)])
    raise ValueError("kind must be 'hyper' or 'riesz'")


def cauchy_riemann_residual(g, y: float, kind: str, spacing: float = 1.0) -> float:
    """Largest centred-difference residual of the generalized Cauchy-Riemann
    equations for the Poisson extension of ``g``, relative to the largest
    first derivative.

    The step is ``spacing`` in every variable, so the residual is
    ``O(spacing^2)`` for a fixed band-limited function.  ``kind="hyper"``
    checks the two complex Cauchy-Riemann pairs of the hypercomplex system
    at ``y1 = y2 = y``:

        u + j v2, v1 + j v3   in (x1, y1);    u + j v1, v2 + j v3   in (x2, y2).

    ``kind="riesz"`` checks ``u_y + v1_x1 + v2_x2 = 0``,
    ``u_xl = vl_y`` and ``v1_x2 = v2_x1``.
    """
    h = spacing

    def dx(f, axis):
        return (np.roll(f, -1, axis) - np.roll(f, 1, axis)) / (2 * h)

    res = []
    if kind == "hyper":
        mid = poisson_extension(g, (y, y), "hyper", spacing)
        d_y1 = (poisson_extension(g, (y + h, y), "hyper", spacing)
                - poisson_extension(g, (y - h, y), "hyper", spacing)) / (2 * h)
        d_y2 = (poisson_extension(g, (y, y + h), "hyper", spacing)
                - poisson_extension(g, (y, y - h), "hyper", spacing)) / (2 * h)
        d_x1 = dx(mid, 1)  # plane axis 0 is the component axis
        d_x2 = dx(mid, 2)
        u, v1, v2, v3 = range(4)
        # pairs (U, V) with U_x = V_y and U_y = -V_x
        for (a, b), dxx, dyy in (((u, v1), d_x1, d_y1), ((v2, v3), d_x1, d_y1),
                                 ((u, v2), d_x2, d_y2), ((v1, v3), d_x2, d_y2)):
            res.append(dxx[a] - dyy[b])
            res.append(dyy[a] + dxx[b])
        scale = max(np.max(np.abs(d_x1)), np.max(np.abs(d_x2)))
    elif kind == "riesz":
        mid = poisson_extension(g, y, "riesz", spacing)
        d_y = (poisson_extension(g, y + h, "riesz", spacing)
               - poisson_extension(g, y - h, "riesz", spacing)) / (2 * h)
        d_x1 = dx(mid, 1)
        d_x2 = dx(mid, 2)
        res.append(d_y[0] + d_x1[1] + d_x2[2])
        res.append(d_x1[0] - d_y[1])
        res.append(d_x2[0] - d_y[2])
        res.append(d_x2[1] - d_x1[2])
        scale = max(np.max(np.abs(d_x1)), np.max(np.abs(d_x2)))
    else:
        raise ValueError("kind must be 'hyper' or 'riesz'")
    return float(max(np.max(np.abs(r)) for r in res) / scale)
