"""Quaternionic continuous wavelet transform of real images.

For a real image ``g`` and a wavelet with real components
``psi_r, psi_1, psi_2, psi_3`` the coefficient at ``(a, theta, b)`` is

    w = w_r - i w_1 - j w_2 - k w_3,   w_s(b) = sum_x g(x) psi_s,xi(x),

which is ``sum_x g(x) psi_xi(x)*`` because the real image commutes with
every quaternion unit.  Each ``w_s`` plane is one real inverse FFT of
``G(f) conj(a C_s(a r_{-theta} f))``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import fft as sfft

from . import quat_core as qc
from .errors import GridTooCoarse, ScaleOutOfRange
from .grid_spectral import FreqGrid, QuaternionField, as_real_field
from .hyperanalytic import hypercomplex_extend, hypercomplex_split, monogenic_extend
from .wavelets import LocalityIndex, Wavelet, WaveletKind, admissibility_constant

#: conjugation signs turning component correlations into quaternion coefficients
CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])
MIN_SCALE = 2.0
MIN_SCALES_PER_DECADE = 24
MIN_ANGLES = 16
MAX_FRAME_ERROR = 0.02


def worker_count() -> int:
    """Thread budget: ``HYPERWAVE_THREADS`` if set, else the CPU count."""
    env = os.environ.get("HYPERWAVE_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"HYPERWAVE_THREADS must be an integer, got {env!r}") from None
        return max(1, n)
    return max(1, os.cpu_count() or 1)


@dataclass(frozen=True)
class LocalityGrid:
    """Scales (samples, increasing) and rotation angles (radians, in [0, 2 pi))."""

    scales: tuple[float, ...]
    angles: tuple[float, ...] = (0.0,)

    def __post_init__(self):
        scales = tuple(float(a) for a in self.scales)
        angles = tuple(float(t) for t in self.angles)
        if not scales:
            raise ValueError("locality grid needs at least one scale")
        if any(a <= 0 for a in scales):
            raise ValueError("scales must be positive")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise ValueError("scales must be strictly increasing")
        if not angles or any(not 0 <= t < 2 * math.pi for t in angles):
            raise ValueError("angles must lie in [0, 2 pi)")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "angles", angles)

    @classmethod
    def log_spaced(cls, amin: float, amax: float, voices: int = 8,
                   angles: Sequence[float] | int = (0.0,)) -> "LocalityGrid":
        """``voices`` scales per octave from ``amin`` up to at most ``amax``.

        An integer ``angles`` means that many equally spaced angles on
        [0, 2 pi).
        """
        if voices < 1:
            raise ValueError("need at least one voice per octave")
        if not 0 < amin <= amax:
            raise ValueError("need 0 < amin <= amax")
        count = int(math.floor(voices * math.log2(amax / amin) + 1e-9)) + 1
        scales = amin * 2.0 ** (np.arange(count) / voices)
        if isinstance(angles, (int, np.integer)):
            angles = tuple(2 * math.pi * k / angles for k in range(int(angles)))
        return cls(tuple(scales), tuple(angles))

    @classmethod
    def default(cls, shape, isotropic: bool = False, voices: int = 8) -> "LocalityGrid":
        """8 voices per octave over [4, N/6]; angles ``k pi/16`` on [0, 2 pi),
        or the single angle 0 for isotropic wavelets."""
        n = min(shape)
        angles = (0.0,) if isotropic else 32
        return cls.log_spaced(4.0, n / 6.0, voices, angles)

    @property
    def voices(self) -> float:
        """Scales per octave implied by the spacing."""
        if len(self.scales) < 2:
            return 0.0
        return (len(self.scales) - 1) / math.log2(self.scales[-1] / self.scales[0])

    @property
    def scales_per_decade(self) -> float:
        return self.voices / math.log10(2.0)

    def pairs(self) -> list[tuple[float, float]]:
        return [(a, t) for a in self.scales for t in self.angles]


@dataclass
class CoefficientSlab:
    """Coefficients for every position ``b`` at one ``(a, theta)``.

    ``data`` holds the planes ``(r, i, j, k)`` of the quaternion
    coefficients, already carrying the conjugation signs.
    """

    a: float
    theta: float
    data: np.ndarray
    kind: str = ""
    params: dict = field(default_factory=dict)

    @property
    def field(self) -> QuaternionField:
        return QuaternionField(self.data)

    def component(self, s: int) -> np.ndarray:
        """Plane ``w_s``: the plain correlation with wavelet component ``s``."""
        return CONJ_SIGNS[s] * self.data[s]


def check_scales(scales: Iterable[float], shape) -> None:
    amax = min(shape) / 6.0
    for a in scales:
        if not MIN_SCALE <= a <= amax * (1 + 1e-12):
            raise ScaleOutOfRange(
                f"scale {a:g} outside [{MIN_SCALE:g}, {amax:g}] for a {shape[0]}x{shape[1]} field")


def _half_grid(shape) -> tuple[np.ndarray, np.ndarray]:
    h, w = shape
    f1 = np.fft.fftfreq(h)[:, None] * np.ones((1, w // 2 + 1))
    f2 = np.fft.rfftfreq(w)[None, :] * np.ones((h, 1))
    return f1, f2


def _active_components(wavelet: Wavelet) -> tuple[int, ...]:
    if wavelet.kind is WaveletKind.ISOTROPIC_MONOGENIC:
        return (0, 1, 2)
    if wavelet.kind in (WaveletKind.DIRECTIONAL_MONOGENIC, WaveletKind.HYPERCOMPLEX_DIRECTIONAL):
        return (0, 1)
    return (0, 1, 2, 3)


def params_tag(wavelet: Wavelet) -> dict:
    tag = dict(vars(wavelet.params))
    if wavelet.params2 is not None:
        tag["params2"] = dict(vars(wavelet.params2))
    if wavelet.tilde:
        tag["tilde"] = True
    return tag


class _Transformer:
    """Shared state for computing slabs of one image."""

    def __init__(self, g: np.ndarray, wavelet: Wavelet):
        self.g = g
        self.shape = g.shape
        self.wavelet = wavelet
        self.G = sfft.rfft2(g)
        self.f1, self.f2 = _half_grid(g.shape)
        self.active = _active_components(wavelet)
        self.tag = params_tag(wavelet)

    def slab(self, a: float, theta: float) -> CoefficientSlab:
        comps = self.wavelet.at(LocalityIndex(a, theta), self.f1, self.f2)
        out = np.zeros((4,) + self.shape)
        for s in self.active:
            out[s] = CONJ_SIGNS[s] * sfft.irfft2(self.G * np.conj(comps[s]), s=self.shape)
        return CoefficientSlab(a, theta, out, self.wavelet.kind.value, self.tag)


def cwt_iter(g, wavelet: Wavelet, grid: LocalityGrid) -> Iterator[CoefficientSlab]:
    """Stream slabs one ``(a, theta)`` at a time, scales outermost."""
    g = as_real_field(g)
    check_scales(grid.scales, g.shape)
    tr = _Transformer(g, wavelet)
    for a, t in grid.pairs():
        yield tr.slab(a, t)


def cwt(g, wavelet: Wavelet, grid: LocalityGrid, workers: int | None = None) -> list[CoefficientSlab]:
    """All slabs of the transform, computed in parallel.

    Slabs are independent, so the output does not depend on the number of
    workers.  Quaternion-valued inputs are rejected; see
    :func:`cwt_quaternion`.
    """
    if isinstance(g, QuaternionField):
        raise TypeError("cwt takes a real image; use cwt_quaternion for quaternion fields")
    g = as_real_field(g)
    check_scales(grid.scales, g.shape)
    tr = _Transformer(g, wavelet)
    pairs = grid.pairs()
    n = worker_count() if workers is None else max(1, workers)
    if n == 1 or len(pairs) == 1:
        return [tr.slab(a, t) for a, t in pairs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda p: tr.slab(*p), pairs))


def cwt_quaternion(q: QuaternionField, wavelet: Wavelet, grid: LocalityGrid,
                   workers: int | None = None) -> list[CoefficientSlab]:
    """Transform of a quaternion image, ``sum_c e_c cwt(q_c)``.

    The image stands on the left of the conjugated wavelet, so each unit
    multiplies its component's coefficients from the left.
    """
    units = np.eye(4)
    out = None
    for c in range(4):
        if not np.any(q.data[c]):
            continue
        part = cwt(q.data[c], wavelet, grid, workers)
        e = units[c][:, None, None]
        if out is None:
            out = [CoefficientSlab(s.a, s.theta, qc.qmul_arr(e, s.data), s.kind, s.params)
                   for s in part]
        else:
            for acc, s in zip(out, part):
                acc.data = acc.data + qc.qmul_arr(e, s.data)
    if out is None:
        zero = np.zeros(q.data.shape)
        return [CoefficientSlab(a, t, zero.copy(), wavelet.kind.value, params_tag(wavelet))
                for a, t in grid.pairs()]
    return out


def real_component_cwt(g, wavelet: Wavelet, grid: LocalityGrid, component: int = 0) -> list[np.ndarray]:
    """Plain correlations of ``g`` with one real wavelet component."""
    g = as_real_field(g)
    check_scales(grid.scales, g.shape)
    G = sfft.rfft2(g)
    f1, f2 = _half_grid(g.shape)
    out = []
    for a, t in grid.pairs():
        c = wavelet.at(LocalityIndex(a, t), f1, f2)[component]
        out.append(sfft.irfft2(G * np.conj(c), s=g.shape))
    return out


def scalogram(slab: CoefficientSlab) -> np.ndarray:
    """Local energy ``|w|^2`` at every position."""
    return np.sum(slab.data ** 2, axis=0)


# ---------------------------------------------------------------------------
# Reconstruction


def _scale_weights(scales: Sequence[float]) -> np.ndarray:
    """Trapezoid weights in ``a`` for the measure ``da / a^3`` on the given nodes."""
    a = np.asarray(scales, dtype=float)
    if a.size == 1:
        raise GridTooCoarse("reconstruction needs more than one scale")
    da = np.diff(a)
    w = np.zeros_like(a)
    w[:-1] += 0.5 * da
    w[1:] += 0.5 * da
    return w / a ** 3


def _angle_weight(grid: LocalityGrid) -> float:
    # for isotropic kinds the summed component energy is radial, so a single
    # angle stands for the whole circle
    return 2 * math.pi / len(grid.angles)


def frame_response(wavelet: Wavelet, grid: LocalityGrid, shape) -> np.ndarray:
    """Discretised inversion factor on the DFT grid; ideally 1 in the band.

    ``(2 pi)^2 / c sum_{a, theta} w_a w_theta sum_s |a C_s(a r_{-theta} f)|^2``.
    """
    fg = FreqGrid.for_shape(shape)
    wa = _scale_weights(grid.scales)
    wt = _angle_weight(grid)
    total = np.zeros(shape)
    for ka, a in enumerate(grid.scales):
        for t in grid.angles:
            comps = wavelet.at(LocalityIndex(a, t), fg.f1, fg.f2)
            total += wa[ka] * wt * np.sum(np.abs(comps) ** 2, axis=0)
    return total * (2 * math.pi) ** 2 / admissibility_constant(wavelet)


def estimated_frame_error(wavelet: Wavelet, grid: LocalityGrid, n_samples: int = 64) -> float:
    """Worst deviation of the frame response from 1 inside the covered band.

    The band is ``[2 u / a_max, u / (2 a_min)]`` with ``u`` the wavelet's
    response peak, sampled along radial lines in each angle cell.
    """
    u = wavelet.response_peak()
    lo = 2 * u / grid.scales[-1]
    hi = u / (2 * grid.scales[0])
    if hi <= lo:
        return math.inf
    rad = np.geomspace(lo, hi, n_samples)
    # off the sign lines of the rotated axes, where hypercomplexing components vanish
    dirs = [0.1] if wavelet.kind.isotropic else np.linspace(0, 2 * math.pi, 17)[:-1] + 0.1
    wa = _scale_weights(grid.scales)
    wt = _angle_weight(grid)
    c = admissibility_constant(wavelet)
    worst = 0.0
    for phi in dirs:
        f1 = rad * math.cos(phi)
        f2 = rad * math.sin(phi)
        total = np.zeros_like(rad)
        for ka, a in enumerate(grid.scales):
            for t in grid.angles:
                comps = wavelet.at(LocalityIndex(a, t), f1, f2)
                total += wa[ka] * wt * np.sum(np.abs(comps) ** 2, axis=0)
        worst = max(worst, float(np.max(np.abs(total * (2 * math.pi) ** 2 / c - 1))))
    return worst


def check_reconstruction_grid(wavelet: Wavelet, grid: LocalityGrid) -> float:
    """Raise :class:`GridTooCoarse` unless the grid supports inversion.

    Returns the estimated frame error.
    """
    if len(grid.scales) < 2 or grid.scales_per_decade < MIN_SCALES_PER_DECADE - 1e-9:
        raise GridTooCoarse(
            f"{grid.scales_per_decade:.1f} scales per decade; need {MIN_SCALES_PER_DECADE}")
    if not wavelet.kind.isotropic and len(grid.angles) < MIN_ANGLES:
        raise GridTooCoarse(f"{len(grid.angles)} angles; anisotropic wavelets need {MIN_ANGLES}")
    err = estimated_frame_error(wavelet, grid)
    if err > MAX_FRAME_ERROR:
        raise GridTooCoarse(f"estimated quadrature error {err:.3g} exceeds {MAX_FRAME_ERROR}")
    return err


def reconstruct(slabs: Sequence[CoefficientSlab], wavelet: Wavelet, grid: LocalityGrid,
                check: bool = True) -> np.ndarray:
    """Approximate inverse transform with measure ``da dtheta d^2 b / a^3``.

    Each slab contributes ``sum_s w_s * psi_s`` (periodic convolution), with
    trapezoid weights in ``a`` over the log-spaced scales and uniform weights
    in ``theta``.  The sum is divided by ``c / (2 pi)^2`` where ``c`` is the
    admissibility constant of the quaternion wavelet, because the constant
    is defined with angular frequency while the transform uses cycles.
    Slabs are accumulated in grid order, so the output is deterministic.
    """
    if not slabs:
        raise ValueError("no slabs to reconstruct from")
    if check:
        check_reconstruction_grid(wavelet, grid)
    shape = slabs[0].data.shape[1:]
    wa = dict(zip(grid.scales, _scale_weights(grid.scales)))
    wt = _angle_weight(grid)
    f1, f2 = _half_grid(shape)
    active = _active_components(wavelet)
    acc = np.zeros((shape[0], shape[1] // 2 + 1), dtype=complex)
    for slab in slabs:
        if slab.a not in wa:
            raise ValueError(f"slab scale {slab.a} is not on the locality grid")
        comps = wavelet.at(LocalityIndex(slab.a, slab.theta), f1, f2)
        for s in active:
            acc += wa[slab.a] * wt * sfft.rfft2(slab.component(s)) * comps[s]
    c = admissibility_constant(wavelet)
    return sfft.irfft2(acc, s=shape) * (2 * math.pi) ** 2 / c


# ---------------------------------------------------------------------------
# Coefficient identities

IDENTITY_TOL = 1e-9


def _rel(x: np.ndarray, ref: np.ndarray) -> float:
    den = float(np.sqrt(np.sum(ref ** 2)))
    return float(np.sqrt(np.sum((x - ref) ** 2))) / max(den, 1e-300)


def verify_identities(g, wavelet: Wavelet, thetas: Sequence[float] = (0.0, math.pi / 6, math.pi / 3),
                      scales: Sequence[float] | None = None) -> dict:
    """Residuals of the exact coefficient identities for one image.

    Isotropic monogenic wavelets:

    ``M1``  coefficients equal the rotated-frame monogenic extension of the
            real-component transform;
    ``M2``  the rotated-frame anti-monogenic part of ``g`` transforms to 0;
    ``M3``  transforming the monogenic part gives twice the coefficients;
    ``M4``  the monogenic part's coefficients are twice its real-component
            transform.

    Hypercomplexing wavelets:

    ``H1``  coefficients equal the rotated-frame hypercomplex extension of
            the even-component transform;
    ``H2``  and equal the even-component transform of the rotated-frame
            hypercomplex signal;
    ``H3``  the ``(+,+)`` and ``(+,-)`` parts each give twice the
            coefficients;
    ``H4``  the ``(-,+)`` and ``(-,-)`` parts cancel;
    ``H5``  the four parts sum to four times the coefficients.

    Relative residuals are reported per check (maximum over angles and
    scales) together with an overall pass flag at ``1e-9``.
    """
    g = as_real_field(g)
    kind = wavelet.kind
    if scales is None:
        n = min(g.shape)
        scales = (4.0, math.sqrt(4.0 * n / 6.0), n / 6.0)
    checks: dict[str, float] = {}

    def record(name, value):
        checks[name] = max(checks.get(name, 0.0), value)

    for theta in thetas:
        lg = LocalityGrid(tuple(scales), (float(theta) % (2 * math.pi),))
        w = cwt(g, wavelet, lg, workers=1)
        if kind is WaveletKind.ISOTROPIC_MONOGENIC:
            wr = real_component_cwt(g, wavelet, lg, 0)
            plus = monogenic_extend(g, 1, theta)
            minus = monogenic_extend(g, -1, theta)
            w_plus = cwt_quaternion(plus, wavelet, lg, workers=1)
            w_minus = cwt_quaternion(minus, wavelet, lg, workers=1)
            wr_plus = [np.zeros((4,) + g.shape) for _ in wr]
            for c in range(3):
                for k, plane in enumerate(real_component_cwt(plus.data[c], wavelet, lg, 0)):
                    wr_plus[k][c] = plane
            for k, slab in enumerate(w):
                ref = slab.data
                record("M1", _rel(monogenic_extend(wr[k], 1, theta).data, ref))
                record("M2", float(np.sqrt(np.sum(w_minus[k].data ** 2) / np.sum(ref ** 2))))
                record("M3", _rel(0.5 * w_plus[k].data, ref))
                record("M4", _rel(w_plus[k].data, 2 * wr_plus[k]))
        elif kind in (WaveletKind.ISOTROPIC_HYPERCOMPLEXING, WaveletKind.SEPARABLE_HYPERCOMPLEXING):
            we = real_component_cwt(g, wavelet, lg, 0)
            ksign = -1 if wavelet.tilde else 1
            split = hypercomplex_split(g, theta)
            w_split = {mu: cwt_quaternion(q, wavelet, lg, workers=1) for mu, q in split.items()}
            hc = split[(1, 1)]
            we_hc = [np.zeros((4,) + g.shape) for _ in we]
            for c in range(4):
                for k, plane in enumerate(real_component_cwt(hc.data[c], wavelet, lg, 0)):
                    we_hc[k][c] = plane
            for k, slab in enumerate(w):
                ref = slab.data
                ext = hypercomplex_extend(we[k], theta=theta).data
                ext[3] *= ksign
                record("H1", _rel(ext, ref))
                total = sum(w_split[mu][k].data for mu in w_split)
                record("H5", _rel(total, 4 * ref))
                if ksign != 1:
                    continue
                record("H2", _rel(we_hc[k], ref))
                record("H3", max(_rel(w_split[(1, 1)][k].data, 2 * ref),
                                 _rel(w_split[(1, -1)][k].data, 2 * ref)))
                mp = w_split[(-1, 1)][k].data
                record("H4", _rel(-w_split[(-1, -1)][k].data, mp))
        else:
            raise ValueError("identities apply to the isotropic monogenic and hypercomplexing kinds")
    worst = max(checks.values()) if checks else 0.0
    return {
        "kind": kind.value,
        "thetas": [float(t) for t in thetas],
        "scales": [float(a) for a in scales],
        "checks": checks,
        "max_residual": worst,
        "tolerance": IDENTITY_TOL,
        "pass": bool(worst <= IDENTITY_TOL),
    }
