"""Quaternionic Morse wavelets evaluated in closed form in the frequency domain.

A quaternionic wavelet ``psi = psi_r + i psi_1 + j psi_2 + k psi_3`` is
stored through the ordinary (complex) Fourier transforms of its four real
components.  ``Wavelet.components(f1, f2)`` returns these four spectra
stacked on a leading axis; the quaternion-valued spectrum, with the Fourier
unit identified with ``j``, is recovered by :func:`fold_to_quaternion`.

A family member at locality ``(a, theta, b)`` has component spectra
``a C(a r_{-theta} f) exp(-2 pi i f.b)``; rotation and dilation are applied
to continuous frequency coordinates, never to sampled data.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate, optimize
from scipy.special import gammaln

from . import quat_core as qc
from .errors import (DivergentIntegral, NonpositiveScale, OrderTooLarge,
                     SeriesNonconvergent, WindowTooSmall)
from .grid_spectral import FreqGrid, QuaternionField, hermitian_part, tol_sign

TWO_PI = 2.0 * math.pi
MAX_LAGUERRE_ORDER = 12


# ---------------------------------------------------------------------------
# Laguerre polynomials and Morse profiles


def laguerre(n: int, c: float, x):
    """Generalised Laguerre polynomial ``L_n^c(x)`` from its finite series."""
    if n < 0 or int(n) != n:
        raise ValueError("Laguerre order must be a non-negative integer")
    n = int(n)
    if n > MAX_LAGUERRE_ORDER:
        raise OrderTooLarge(f"series form is limited to n <= {MAX_LAGUERRE_ORDER}, got {n}")
    if 1 + c <= 0:
        raise ValueError("Laguerre parameter needs 1 + c > 0")
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for r in range(n + 1):
        coef = math.exp(gammaln(1 + n + c) - gammaln(1 + c + r) - gammaln(1 + n - r)
                        - gammaln(1 + r))
        out = out + (-1) ** r * coef * x ** r
    return out


@dataclass(frozen=True)
class MorseParams1D:
    """1-D Morse wavelet ``(n, beta, gamma)``."""

    n: int = 0
    beta: float = 9.0
    gamma: float = 4.0

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError("n must be a non-negative integer")
        if not (self.beta > 0 and self.gamma > 0):
            raise ValueError("beta and gamma must be positive")

    @property
    def c(self) -> float:
        return (2 * self.beta + 1) / self.gamma - 1

    @property
    def amplitude(self) -> float:
        """Normalisation giving the analytic wavelet unit energy."""
        return math.exp(0.5 * (math.log(math.pi * self.gamma) + (self.c + 1) * math.log(2)
                               + gammaln(1 + self.n) - gammaln(self.n + self.c + 1)))


@dataclass(frozen=True)
class MorseParamsIso:
    """Isotropic Morse wavelet ``(n, l, m)``."""

    n: int = 0
    l: float = 9.0  # noqa: E741
    m: float = 4.0

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError("n must be a non-negative integer")
        if not self.m >= 1:
            raise ValueError("m must be at least 1")
        if not self.l > 0:
            raise ValueError("l must be positive")
        if self.l < self.m / 2 - 1:
            raise ValueError("l must be at least m/2 - 1")

    @property
    def c(self) -> float:
        return (2 * self.l + 2) / self.m - 1

    @property
    def amplitude(self) -> float:
        """Normalisation giving unit energy over the plane.

        The 1-D style constant ``sqrt(m 2^{c+1} n! / Gamma(n + c + 1))`` leaves
        a 2-D energy of ``1/(2 pi)``; the extra ``sqrt(2 pi)`` removes it.
        """
        return math.exp(0.5 * (math.log(TWO_PI * self.m) + (self.c + 1) * math.log(2)
                               + gammaln(1 + self.n) - gammaln(self.n + self.c + 1)))


def _morse_profile(amp: float, power: float, expo: float, n: int, c: float, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    u = TWO_PI * np.where(f > 0, f, 0.0)
    um = u ** expo
    val = amp * u ** power * np.exp(-um)
    if n:
        val = val * laguerre(n, c, 2 * um)
    return np.where(f > 0, val, 0.0)


def morse1d_ft(p: MorseParams1D, f, part: str = "analytic") -> np.ndarray:
    """Spectrum of the 1-D Morse wavelet.

    ``part="analytic"`` is ``sqrt(2) A (2 pi f)^beta exp(-(2 pi f)^gamma)
    L_n^c(2 (2 pi f)^gamma)`` for ``f > 0`` and 0 otherwise.  The even part
    is ``psi_a(|f|) / 2``; the odd part is ``-i sgn(f)`` times the even part.
    """
    f = np.asarray(f, dtype=float)
    if part == "analytic":
        return _morse_profile(math.sqrt(2) * p.amplitude, p.beta, p.gamma, p.n, p.c, f).astype(complex)
    even = 0.5 * _morse_profile(math.sqrt(2) * p.amplitude, p.beta, p.gamma, p.n, p.c, np.abs(f))
    if part == "even":
        return even.astype(complex)
    if part == "odd":
        return -1j * np.sign(f) * even
    raise ValueError("part must be 'analytic', 'even' or 'odd'")


def morse_iso_ft(p: MorseParamsIso, f) -> np.ndarray:
    """Radial spectrum ``A' (2 pi f)^l exp(-(2 pi f)^m) L_n^{c'}(2 (2 pi f)^m)``."""
    return _morse_profile(p.amplitude, p.l, p.m, p.n, p.c, f)


def _radial_peak(profile, weight_power: float = 0.0) -> float:
    """Frequency maximising ``f^weight_power * profile(f)``."""
    fs = np.geomspace(1e-4, 2.0, 4001)
    vals = fs ** weight_power * np.abs(profile(fs))
    k = int(np.argmax(vals))
    lo, hi = fs[max(k - 1, 0)], fs[min(k + 1, fs.size - 1)]
    res = optimize.minimize_scalar(lambda t: -(t ** weight_power) * abs(float(profile(np.array(t)))),
                                   bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-14})
    return float(res.x)


# ---------------------------------------------------------------------------
# Wavelet kinds


class WaveletKind(enum.Enum):
    SEPARABLE_HYPERCOMPLEXING = "separable_hypercomplexing"
    ISOTROPIC_HYPERCOMPLEXING = "isotropic_hypercomplexing"
    ISOTROPIC_MONOGENIC = "isotropic_monogenic"
    DIRECTIONAL_MONOGENIC = "directional_monogenic"
    HYPERCOMPLEX_DIRECTIONAL = "hypercomplex_directional"

    @property
    def isotropic(self) -> bool:
        return self in (WaveletKind.ISOTROPIC_HYPERCOMPLEXING, WaveletKind.ISOTROPIC_MONOGENIC)

    @property
    def monogenic(self) -> bool:
        return self in (WaveletKind.ISOTROPIC_MONOGENIC, WaveletKind.DIRECTIONAL_MONOGENIC)


_ISO_KINDS = (WaveletKind.ISOTROPIC_HYPERCOMPLEXING, WaveletKind.ISOTROPIC_MONOGENIC)


@dataclass(frozen=True)
class LocalityIndex:
    """Scale ``a`` (samples), rotation ``theta`` (radians), position ``b``."""

    a: float
    theta: float = 0.0
    b: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not self.a > 0:
            raise NonpositiveScale(f"scale must be positive, got {self.a}")


@dataclass(frozen=True)
class Wavelet:
    """A quaternionic Morse mother wavelet.

    ``params`` is :class:`MorseParamsIso` for the isotropic kinds and
    :class:`MorseParams1D` otherwise.  ``params2`` sets a different second
    axis for the separable kind.  ``tilde`` flips the sign of the ``k``
    component of the hypercomplexing kinds, giving the ``+k psi_oo``
    variant instead of ``-k psi_oo``.
    """

    kind: WaveletKind
    params: MorseParams1D | MorseParamsIso = None
    params2: MorseParams1D | None = None
    tilde: bool = False
    _peak: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        kind = WaveletKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.params is None:
            object.__setattr__(self, "params",
                               MorseParamsIso() if kind in _ISO_KINDS else MorseParams1D())
        want = MorseParamsIso if kind in _ISO_KINDS else MorseParams1D
        if not isinstance(self.params, want):
            raise TypeError(f"{kind.value} wavelets take {want.__name__}")
        if self.params2 is not None and kind is not WaveletKind.SEPARABLE_HYPERCOMPLEXING:
            raise ValueError("params2 only applies to the separable kind")
        if self.tilde and kind not in (WaveletKind.SEPARABLE_HYPERCOMPLEXING,
                                       WaveletKind.ISOTROPIC_HYPERCOMPLEXING):
            raise ValueError("tilde only applies to the hypercomplexing kinds")

    @property
    def symmetric(self) -> bool:
        """False for separable wavelets whose two axes differ; those break the
        swap symmetry the admissibility argument relies on."""
        return self.params2 is None or self.params2 == self.params

    # -- mother wavelet -----------------------------------------------------

    def components(self, f1, f2) -> np.ndarray:
        """Fourier transforms of the four real components at ``(f1, f2)``.

        Returns a complex array of shape ``(4,) + broadcast shape``.
        """
        f1 = np.asarray(f1, dtype=float)
        f2 = np.asarray(f2, dtype=float)
        f1, f2 = np.broadcast_arrays(f1, f2)
        kind = self.kind
        ksign = -1.0 if self.tilde else 1.0
        scale = max(float(np.max(np.abs(f1), initial=0.0)), float(np.max(np.abs(f2), initial=0.0)), 1e-300)
        s1 = tol_sign(f1, scale)
        s2 = tol_sign(f2, scale)
        zero = np.zeros(f1.shape, dtype=complex)
        if kind is WaveletKind.SEPARABLE_HYPERCOMPLEXING:
            p2 = self.params2 or self.params
            ee = morse1d_ft(self.params, f1, "even") * morse1d_ft(p2, f2, "even")
            return np.stack([ee, -1j * s1 * ee, -1j * s2 * ee, ksign * s1 * s2 * ee])
        if kind in _ISO_KINDS:
            rad = np.hypot(f1, f2)
            ee = morse_iso_ft(self.params, rad).astype(complex)
            if kind is WaveletKind.ISOTROPIC_HYPERCOMPLEXING:
                return np.stack([ee, -1j * s1 * ee, -1j * s2 * ee, ksign * s1 * s2 * ee])
            safe = np.where(rad > 0, rad, 1.0)
            return np.stack([ee, -1j * f1 / safe * ee, -1j * f2 / safe * ee, zero])
        # directional kinds: the separable product turned by a quarter of pi
        u = (f1 - f2) / math.sqrt(2)
        v = (f1 + f2) / math.sqrt(2)
        eu = morse1d_ft(self.params, u, "even")
        ev = morse1d_ft(self.params, v, "even")
        su = tol_sign(u, scale)
        sv = tol_sign(v, scale)
        ou = -1j * su * eu
        ov = -1j * sv * ev
        psi_d = eu * ev - ou * ov
        if kind is WaveletKind.DIRECTIONAL_MONOGENIC:
            rad = np.hypot(f1, f2)
            safe = np.where(rad > 0, rad, 1.0)
            return np.stack([psi_d, -1j * f1 / safe * psi_d, zero, zero])
        return np.stack([psi_d, ou * ev + eu * ov, zero, zero])

    def at(self, xi: LocalityIndex, f1, f2) -> np.ndarray:
        """Component spectra of the family member ``xi`` at ``(f1, f2)``."""
        f1 = np.asarray(f1, dtype=float)
        f2 = np.asarray(f2, dtype=float)
        c, s = math.cos(xi.theta), math.sin(xi.theta)
        u1 = xi.a * (c * f1 + s * f2)
        u2 = xi.a * (-s * f1 + c * f2)
        out = xi.a * self.components(u1, u2)
        if xi.b != (0.0, 0.0):
            out = out * np.exp(-2j * math.pi * (f1 * xi.b[0] + f2 * xi.b[1]))
        return out

    # -- radial response ----------------------------------------------------

    def radial_profile(self, f) -> np.ndarray:
        """Magnitude of the real component along its strongest direction."""
        f = np.asarray(f, dtype=float)
        if self.kind in _ISO_KINDS:
            return morse_iso_ft(self.params, f)
        if self.kind is WaveletKind.SEPARABLE_HYPERCOMPLEXING:
            p2 = self.params2 or self.params
            g = f / math.sqrt(2)
            return np.abs(morse1d_ft(self.params, g, "even") * morse1d_ft(p2, g, "even"))
        return np.abs(self.components(f, np.zeros_like(f))[0])

    def peak_frequency(self) -> float:
        """Radial frequency (cycles per unit scale) where the spectrum peaks."""
        return _radial_peak(self.radial_profile)

    def response_peak(self) -> float:
        """Value ``u`` maximising ``u * profile(u)``.

        For a plane wave of frequency ``f`` the coefficient magnitude at
        scale ``a`` is proportional to ``a profile(a f)``, so the best scale
        satisfies ``a f = response_peak()``.
        """
        if not self._peak:
            self._peak.append(_radial_peak(self.radial_profile, 1.0))
        return self._peak[0]


def fold_to_quaternion(comps: np.ndarray) -> np.ndarray:
    """Quaternion-valued spectrum from four complex component spectra.

    ``sum_s e_s (Re C_s + j Im C_s)`` with ``e_s`` in ``(1, i, j, k)`` on the
    left, which identifies the Fourier unit with ``j``.
    """
    comps = np.asarray(comps)
    one = np.zeros((4,) + comps.shape[1:])
    units = np.eye(4)
    out = one
    for s in range(4):
        z = np.stack([comps[s].real, np.zeros_like(comps[s].real), comps[s].imag,
                      np.zeros_like(comps[s].real)])
        e = units[s].reshape((4,) + (1,) * (comps.ndim - 1))
        out = out + qc.qmul_arr(e, z)
    return out


def wavelet_ft_at(wavelet: Wavelet, xi: LocalityIndex, f) -> qc.Quaternion:
    """Quaternion value of the family member's spectrum at one frequency pair."""
    comps = wavelet.at(xi, np.array(f[0], float), np.array(f[1], float))
    return qc.Quaternion.from_array(fold_to_quaternion(comps))


def sampled_spectrum(wavelet: Wavelet, a: float, theta: float, grid: FreqGrid) -> np.ndarray:
    """Component spectra of the member ``(a, theta, 0)`` on the DFT grid.

    Only the Hermitian part is kept, which makes every component real in
    space; it differs from the raw samples only on Nyquist lines where the
    closed form is not symmetric.
    """
    comps = wavelet.at(LocalityIndex(a, theta), grid.f1, grid.f2)
    return hermitian_part(comps, grid)


# ---------------------------------------------------------------------------
# Admissibility


def _polar_energy_over_f2(wavelet: Wavelet, component: int, eps: float, fmax: float,
                          n_angles: int) -> float:
    phis = (np.arange(n_angles) + 0.5) * TWO_PI / n_angles
    cph, sph = np.cos(phis), np.sin(phis)

    def radial(logr):
        r = math.exp(logr)
        c = wavelet.components(r * cph, r * sph)[component]
        # |C|^2 / f^2 * f df dphi with df = f dlogf
        return float(np.sum(np.abs(c) ** 2)) * TWO_PI / n_angles

    peak = wavelet.peak_frequency()
    val, _ = integrate.quad(radial, math.log(eps), math.log(fmax), limit=400,
                            points=[math.log(peak)], epsabs=0.0, epsrel=1e-12)
    return val


@lru_cache(maxsize=64)
def _admissibility_cached(wavelet: Wavelet, component: int, n_angles: int) -> float:
    peak = wavelet.peak_frequency()
    fmax = 50.0 * peak
    values = []
    for cut in (1e-4, 1e-7, 1e-10):
        values.append(_polar_energy_over_f2(wavelet, component, cut * peak, fmax, n_angles))
    if not all(math.isfinite(v) for v in values):
        raise DivergentIntegral("admissibility integral is not finite")
    ref = max(abs(values[-1]), 1e-300)
    if abs(values[-1] - values[-2]) > 1e-9 * ref or abs(values[-2] - values[-3]) > 1e-6 * ref:
        raise DivergentIntegral("admissibility integral keeps growing as the cutoff shrinks")
    return TWO_PI ** 2 * values[-1]


def admissibility_constant(wavelet: Wavelet, component: int | None = None,
                           n_angles: int = 256) -> float:
    """``(2 pi)^2 iint |Psi|^2 / f^2 d^2 f`` by polar quadrature.

    ``component`` selects one of the four real components; ``None`` sums
    them, which is the constant of the quaternion wavelet.  The radial
    integral runs over ``log f`` so the small-frequency behaviour is
    resolved; the lower cutoff is refined and a value that keeps changing
    raises :class:`DivergentIntegral`.
    """
    if component is None:
        return sum(admissibility_constant(wavelet, s, n_angles) for s in range(4))
    if component not in range(4):
        raise ValueError("component must be 0, 1, 2 or 3")
    return _admissibility_cached(wavelet, component, n_angles)


def energy(wavelet: Wavelet, component: int = 0, n_angles: int = 256) -> float:
    """``iint |Psi_s|^2 d^2 f`` by the same polar quadrature."""
    phis = (np.arange(n_angles) + 0.5) * TWO_PI / n_angles
    cph, sph = np.cos(phis), np.sin(phis)
    peak = wavelet.peak_frequency()

    def radial(r):
        c = wavelet.components(r * cph, r * sph)[component]
        return float(np.sum(np.abs(c) ** 2)) * r * TWO_PI / n_angles

    val, _ = integrate.quad(radial, 0.0, 50 * peak, points=[peak], limit=400, epsrel=1e-12)
    return val


@lru_cache(maxsize=64)
def total_energy(wavelet: Wavelet) -> float:
    """Energy summed over the four components."""
    return sum(energy(wavelet, c) for c in range(4))


# ---------------------------------------------------------------------------
# Spatial rendering

#: energy fraction allowed near the window edge before rendering is refused
EDGE_ENERGY = 1e-3
#: energy fraction a render may lose to a frequency grid too coarse for the passband
COARSE_ENERGY = 1e-2


def spatial_field(wavelet: Wavelet, xi: LocalityIndex, shape, check: bool = True) -> QuaternionField:
    """Sampled spatial wavelet ``psi_xi`` on a periodic ``H x W`` window.

    The four component planes are inverse FFTs of the sampled closed-form
    spectra.  With ``check`` set, raises :class:`WindowTooSmall` when more
    than 0.1% of the energy lies in the outer band of the window
    (minimum-image distance from ``b`` above 0.4 of the smaller side), or
    when the frequency grid is too coarse and the render misses more than
    1% of the wavelet energy.
    """
    grid = FreqGrid.for_shape(shape)
    spec = sampled_spectrum(wavelet, xi.a, xi.theta, grid)
    if xi.b != (0.0, 0.0):
        spec = spec * np.exp(-2j * math.pi * (grid.f1 * xi.b[0] + grid.f2 * xi.b[1]))
    planes = np.fft.ifft2(spec).real
    if check:
        h, w = shape
        d1 = (np.arange(h)[:, None] - xi.b[0] + h / 2) % h - h / 2
        d2 = (np.arange(w)[None, :] - xi.b[1] + w / 2) % w - w / 2
        edge = np.hypot(d1, d2) > 0.4 * min(h, w)
        e = np.sum(planes ** 2, axis=0)
        total = float(e.sum())
        expected = total_energy(wavelet)
        if total < (1 - COARSE_ENERGY) * expected:
            raise WindowTooSmall(
                f"the window resolves only {total / expected:.2e} of the wavelet energy")
        if float(e[edge].sum()) > EDGE_ENERGY * total:
            raise WindowTooSmall(
                f"{float(e[edge].sum()) / total:.2e} of the wavelet energy reaches the window edge")
    return QuaternionField(planes)


def default_window(wavelet: Wavelet, a: float, max_size: int = 4096) -> int:
    """Smallest even square size passing the edge-energy check at scale ``a``.

    The search starts at six peak wavelengths and grows by a quarter each
    step; kinds with Hilbert-type components have slowly decaying tails
    and need several times that.
    """
    n = int(math.ceil(6 * a / wavelet.peak_frequency()))
    n += n % 2
    while n <= max_size:
        try:
            spatial_field(wavelet, LocalityIndex(a, 0.0, (n / 2, n / 2)), (n, n))
            return n
        except WindowTooSmall:
            n = int(math.ceil(n * 1.25))
            n += n % 2
    raise WindowTooSmall(f"no window up to {max_size} holds the wavelet at scale {a:g}")


# ---------------------------------------------------------------------------
# Closed-form spatial profile for n = 0, m = 2


def hyp1f1_series(a: float, b: float, z: float, max_terms: int = 10_000) -> float:
    """Confluent hypergeometric ``1F1(a; b; z)`` by direct summation.

    Stops once a term falls below ``1e-16`` of the partial sum; raises
    :class:`SeriesNonconvergent` after ``max_terms`` terms.
    """
    term = 1.0
    total = 1.0
    for k in range(max_terms):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
        if term == 0.0 or abs(term) < 1e-16 * abs(total):
            return total
    raise SeriesNonconvergent(f"1F1({a}; {b}; {z}) did not converge in {max_terms} terms")


def closed_form_iso_m2(l: float, x: float, max_terms: int = 10_000) -> float:  # noqa: E741
    """Real isotropic Morse wavelet with ``n = 0``, ``m = 2`` at radius ``x``.

    ``(A'/2 pi) Gamma((l+2)/2) 1F1((l+2)/2; 1; -x^2/4) / 2``.  The series is
    summed after Kummer's transformation ``1F1(a; b; -z) = e^{-z}
    1F1(b - a; b; z)``, whose terms do not cancel for large ``z``.
    """
    p = MorseParamsIso(0, l, 2.0)
    a = (l + 2) / 2
    z = x * x / 4
    f = math.exp(-z) * hyp1f1_series(1 - a, 1.0, z, max_terms)
    return p.amplitude / TWO_PI * 0.5 * math.exp(gammaln(a)) * f
