"""Ridge extraction: local amplitude, frequency, orientation and phase.

Two estimators are provided.  :func:`monogenic_ridge` reads plane-wave
parameters from isotropic monogenic coefficients, picking the scale of
largest response at each position.  :func:`hypercomplex_ridge` reads
separable-oscillation parameters from hypercomplexing coefficients over
a grid of scales and angles, using the hypercomplex polar form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import ndimage

from . import quat_core as qc
from .cwt import CoefficientSlab, scalogram
from .errors import NoRidge
from .wavelets import Wavelet, WaveletKind

DEFAULT_THRESHOLD = 0.05
#: relative tolerance under which two coefficient magnitudes count as tied
TIE_TOL = 1e-9
#: width of the selection window for separable ridges, in units of the scale
FOOTPRINT = 2.0
#: angles whose smoothed magnitude is this close to the best compete on separability
SEPARABILITY_WINDOW = 0.05


@dataclass(frozen=True)
class RidgePoint:
    b: tuple[int, int]
    a: float
    theta: float
    amplitude: float
    frequency: float | tuple[float, float]
    orientation: float | None = None
    phase: float | None = None
    alpha: float | None = None
    beta: float | None = None
    gamma_score: float | None = None
    frequency_phase: float | None = None


@dataclass
class RidgeMap:
    """Per-position ridge estimates as arrays; ``mask`` marks detections."""

    mask: np.ndarray
    a: np.ndarray
    theta: np.ndarray
    amplitude: np.ndarray
    frequency: np.ndarray
    orientation: np.ndarray | None = None
    phase: np.ndarray | None = None
    alpha: np.ndarray | None = None
    beta: np.ndarray | None = None
    gamma_score: np.ndarray | None = None
    frequency2: np.ndarray | None = None
    frequency_phase: np.ndarray | None = None

    def points(self) -> list[RidgePoint]:
        out = []
        for b1, b2 in zip(*np.nonzero(self.mask)):
            idx = (b1, b2)

            def get(arr):
                return None if arr is None else float(arr[idx])

            freq = float(self.frequency[idx])
            if self.frequency2 is not None:
                freq = (freq, float(self.frequency2[idx]))
            out.append(RidgePoint(
                b=(int(b1), int(b2)), a=float(self.a[idx]), theta=float(self.theta[idx]),
                amplitude=float(self.amplitude[idx]), frequency=freq,
                orientation=get(self.orientation), phase=get(self.phase),
                alpha=get(self.alpha), beta=get(self.beta),
                gamma_score=get(self.gamma_score), frequency_phase=get(self.frequency_phase)))
        return out


def _interior(shape, margin: int) -> np.ndarray:
    m = np.zeros(shape, dtype=bool)
    h, w = shape
    if 2 * margin >= min(h, w):
        raise ValueError("margin leaves no interior")
    m[margin:h - margin, margin:w - margin] = True
    return m


def _wrap(x: np.ndarray, period: float) -> np.ndarray:
    return (x + period / 2) % period - period / 2


def _central_gradient(phase: np.ndarray, period: float) -> tuple[np.ndarray, np.ndarray]:
    """Centred differences of a wrapped phase along each axis (periodic grid)."""
    d1 = 0.5 * (_wrap(np.roll(phase, -1, 0) - phase, period)
                + _wrap(phase - np.roll(phase, 1, 0), period))
    d2 = 0.5 * (_wrap(np.roll(phase, -1, 1) - phase, period)
                + _wrap(phase - np.roll(phase, 1, 1), period))
    return d1, d2


def _group_by_angle(slabs: Sequence[CoefficientSlab]) -> dict[float, list[CoefficientSlab]]:
    groups: dict[float, list[CoefficientSlab]] = {}
    for s in slabs:
        groups.setdefault(s.theta, []).append(s)
    for g in groups.values():
        g.sort(key=lambda s: s.a)
    return groups


def _log_parabola_peak(loga: np.ndarray, mags: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Refine argmax indices ``k`` with a parabola through log-magnitudes."""
    n = loga.size
    kk = np.clip(k, 1, n - 2)
    h = np.take_along_axis
    y0 = np.log(np.maximum(h(mags, (kk - 1)[None], 0)[0], 1e-300))
    y1 = np.log(np.maximum(h(mags, kk[None], 0)[0], 1e-300))
    y2 = np.log(np.maximum(h(mags, (kk + 1)[None], 0)[0], 1e-300))
    den = y0 - 2 * y1 + y2
    step = loga[1] - loga[0] if n > 1 else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        off = np.where(den < 0, 0.5 * (y0 - y2) / den, 0.0)
    off = np.clip(off, -1.0, 1.0)
    edge = (k == 0) | (k == n - 1)
    return np.where(edge, loga[k], loga[kk] + off * step)


def _monogenic_group(slabs, wavelet, theta):
    if wavelet.kind is not WaveletKind.ISOTROPIC_MONOGENIC:
        raise ValueError("monogenic ridges need an isotropic monogenic wavelet")
    groups = _group_by_angle(slabs)
    if not groups:
        raise NoRidge("no coefficient slabs given")
    th = min(groups) if theta is None else theta
    if th not in groups:
        raise ValueError(f"no slabs at angle {th}")
    group = groups[th]
    data = np.stack([s.data for s in group])  # (scales, 4, H, W)
    return th, group, data, np.sqrt(np.sum(data ** 2, axis=1))


def _monogenic_estimates(th, group, data, mags, k, mask, wavelet) -> RidgeMap:
    """Estimates at scale index ``k`` (an array over positions)."""
    shape = mags.shape[1:]
    scales = np.array([s.a for s in group])
    peak = np.take_along_axis(mags, k[None], 0)[0]
    a_hat = np.exp(_log_parabola_peak(np.log(scales), mags, k))
    freq = wavelet.response_peak() / a_hat
    a_star = scales[k]
    w = np.take_along_axis(data, k[None, None], 0)[0]  # (4, H, W)
    resp = a_star * np.abs(wavelet.radial_profile(a_star * freq))
    amplitude = np.where(resp > 0, peak / np.where(resp > 0, resp, 1.0), 0.0)
    _, nu_rot, phase, _ = qc.polar_monogenic_arr(w, fold=True)
    orientation = np.mod(th + np.nan_to_num(nu_rot), math.pi)

    # phase-gradient frequency from the slab chosen at each position
    fphase = np.zeros(shape)
    for idx in np.unique(k[mask]):
        _, _, ph, _ = qc.polar_monogenic_arr(group[idx].data, fold=True)
        d1, d2 = _central_gradient(ph, 1.0)
        sel = mask & (k == idx)
        fphase[sel] = np.hypot(d1, d2)[sel]
    return RidgeMap(mask=mask, a=a_star, theta=np.full(shape, th), amplitude=amplitude,
                    frequency=freq, orientation=orientation, phase=phase,
                    frequency_phase=fphase)


def _detections(peak, top, threshold, margin):
    mask = (peak > threshold * top) if top > 0 else np.zeros(peak.shape, dtype=bool)
    if margin:
        mask &= _interior(peak.shape, margin)
    return mask


def monogenic_ridge_map(slabs: Sequence[CoefficientSlab], wavelet: Wavelet,
                        threshold: float = DEFAULT_THRESHOLD, theta: float | None = None,
                        margin: int = 0) -> RidgeMap:
    """Array form of :func:`monogenic_ridge` (largest maximum only)."""
    th, group, data, mags = _monogenic_group(slabs, wavelet, theta)
    k = np.argmax(mags, axis=0)  # first maximum, i.e. smallest scale, wins ties
    peak = np.take_along_axis(mags, k[None], 0)[0]
    mask = _detections(peak, float(peak.max()), threshold, margin)
    if not mask.any():
        raise NoRidge("no coefficient exceeds the detection threshold")
    return _monogenic_estimates(th, group, data, mags, k, mask, wavelet)


def monogenic_ridge(slabs: Sequence[CoefficientSlab], wavelet: Wavelet,
                    threshold: float = DEFAULT_THRESHOLD, theta: float | None = None,
                    margin: int = 0, local_maxima: bool = False) -> list[RidgePoint]:
    """Plane-wave parameters at every position with a strong response.

    Uses the slabs at one angle (the smallest present unless ``theta`` is
    given).  At each position ``b`` whose peak magnitude over scales exceeds
    ``threshold`` times the global peak:

    * ``a`` is the scale of largest magnitude (smallest scale on ties);
    * the frequency is ``u / a_hat`` where ``u`` maximises ``u Psi(u)``
      and ``a_hat`` refines the argmax with a parabola in log scale;
    * the amplitude divides ``|w|`` by the wavelet response ``a Psi(a f)``;
    * the orientation adds the analysis angle to the angle of the ``(i, j)``
      coefficient pair, modulo pi;
    * the phase (cycles) is the signed monogenic phase of ``w``.

    With ``local_maxima`` every interior maximum of ``|w|`` over scale that
    passes the threshold yields a point, so superposed waves at separated
    frequencies each get their own ridge.  ``margin`` drops positions
    within that many samples of the border.  Raises :class:`NoRidge` if
    nothing passes the threshold.
    """
    if not local_maxima:
        return monogenic_ridge_map(slabs, wavelet, threshold, theta, margin).points()
    th, group, data, mags = _monogenic_group(slabs, wavelet, theta)
    top = float(mags.max())
    points: list[RidgePoint] = []
    for idx in range(1, len(group) - 1):
        is_max = (mags[idx] > mags[idx - 1]) & (mags[idx] >= mags[idx + 1])
        mask = is_max & _detections(mags[idx], top, threshold, margin)
        if mask.any():
            k = np.full(mags.shape[1:], idx)
            points.extend(_monogenic_estimates(th, group, data, mags, k, mask, wavelet).points())
    if not points:
        raise NoRidge("no interior scale maximum exceeds the detection threshold")
    return points


def _smoothed(planes: np.ndarray, scales: Sequence[float], footprint: float) -> np.ndarray:
    if footprint <= 0:
        return planes
    return np.stack([ndimage.gaussian_filter(p, footprint * a, mode="wrap")
                     for p, a in zip(planes, scales)])


def hypercomplex_ridge_map(slabs: Sequence[CoefficientSlab], wavelet: Wavelet,
                           threshold: float = DEFAULT_THRESHOLD, margin: int = 0,
                           footprint: float = FOOTPRINT,
                           window: float = SEPARABILITY_WINDOW) -> RidgeMap:
    """Array form of :func:`hypercomplex_ridge`."""
    if wavelet.kind not in (WaveletKind.ISOTROPIC_HYPERCOMPLEXING,
                            WaveletKind.SEPARABLE_HYPERCOMPLEXING):
        raise ValueError("separable ridges need a hypercomplexing wavelet")
    if not slabs:
        raise NoRidge("no coefficient slabs given")
    order = sorted(range(len(slabs)), key=lambda i: (slabs[i].theta, slabs[i].a))
    ordered = [slabs[i] for i in order]
    scales = [s.a for s in ordered]
    mags = np.stack([np.sqrt(scalogram(s)) for s in ordered])
    shape = mags.shape[1:]
    score = _smoothed(mags, scales, footprint)

    # best scale per angle: first index within the tie tolerance, i.e. smallest scale
    thetas = sorted({s.theta for s in ordered})
    starts = [next(i for i, s in enumerate(ordered) if s.theta == t) for t in thetas]
    ends = starts[1:] + [len(ordered)]
    per_angle = []
    for lo, hi in zip(starts, ends):
        block = score[lo:hi]
        top = block.max(axis=0)
        per_angle.append(lo + np.argmax(block >= top * (1 - TIE_TOL), axis=0))
    best_k = np.stack(per_angle)
    best_score = np.take_along_axis(score, best_k, 0)
    top_score = best_score.max(axis=0)
    if window > 0:
        used = set(np.unique(best_k).tolist())
        gam = np.stack([np.abs(qc.polar_hypercomplex_arr(s.data)[3]) if i in used
                        else np.zeros(shape) for i, s in enumerate(ordered)])
        gscore = np.take_along_axis(_smoothed(gam, scales, footprint), best_k, 0)
        gscore = np.where(best_score >= top_score * (1 - window), gscore, np.inf)
        pick = np.argmax(gscore <= gscore.min(axis=0) + 1e-12, axis=0)
    else:
        pick = np.argmax(best_score >= top_score * (1 - TIE_TOL), axis=0)
    k = np.take_along_axis(best_k, pick[None], 0)[0]
    best = np.take_along_axis(mags, k[None], 0)[0]
    mask = _detections(best, float(best.max()), threshold, margin)
    if not mask.any():
        raise NoRidge("no coefficient exceeds the detection threshold")

    a_star = np.array([s.a for s in ordered])[k]
    th_star = np.array([s.theta for s in ordered])[k]
    alpha = np.zeros(shape)
    beta = np.zeros(shape)
    gamma = np.zeros(shape)
    f1 = np.zeros(shape)
    f2 = np.zeros(shape)
    for idx in np.unique(k[mask]):
        s = ordered[idx]
        _, al, be, ga = qc.polar_hypercomplex_arr(s.data)
        # (alpha, beta) and (alpha + 1/2, beta + 1/2) name the same
        # quaternion when gamma = 0, so phases are compared modulo 1/2
        a1, a2 = _central_gradient(al, 0.5)
        b1, b2 = _central_gradient(be, 0.5)
        c, sn = math.cos(s.theta), math.sin(s.theta)
        sel = mask & (k == idx)
        alpha[sel] = al[sel]
        beta[sel] = be[sel]
        gamma[sel] = ga[sel]
        f1[sel] = (c * a1 + sn * a2)[sel]
        f2[sel] = (-sn * b1 + c * b2)[sel]
    radial = np.hypot(f1, f2)
    resp = a_star * np.abs(wavelet.radial_profile(a_star * radial))
    amplitude = np.where(resp > 0, best / np.where(resp > 0, resp, 1.0), 0.0)
    return RidgeMap(mask=mask, a=a_star, theta=th_star, amplitude=amplitude,
                    frequency=np.abs(f1), frequency2=np.abs(f2), alpha=alpha, beta=beta,
                    gamma_score=np.abs(gamma))


def hypercomplex_ridge(slabs: Sequence[CoefficientSlab], wavelet: Wavelet,
                       threshold: float = DEFAULT_THRESHOLD, margin: int = 0,
                       footprint: float = FOOTPRINT,
                       window: float = SEPARABILITY_WINDOW) -> list[RidgePoint]:
    """Separable-oscillation parameters at every position with a strong response.

    At each position the ``(a, theta)`` of largest ``|w|`` is selected
    (ties go to the smallest scale, then the smallest angle).  The
    magnitude is first averaged with a Gaussian of width ``footprint * a``:
    in a misaligned frame two spectral peaks can share a quadrant and beat,
    which lifts the pointwise ``|w|`` above the aligned value even though
    its local mean is lower.  ``footprint=0`` selects on the raw ``|w|``.
    Magnitude alone cannot tell apart frames that each hold one spectral
    peak per quadrant pair, so among angles whose smoothed magnitude lies
    within ``window`` of the best, the one with the smallest smoothed
    ``|gamma|`` wins; ``window=0`` turns this off.  The
    hypercomplex polar form of ``w`` there gives the phases ``alpha``,
    ``beta`` and the separability score ``|gamma|``.  The two local
    frequencies are centred differences of ``alpha`` and ``beta`` in the
    selected slab, taken modulo 1/2 along grid rows and columns and
    projected on the rotated axes.  The amplitude divides ``|w|`` by the
    wavelet's radial response at the estimated frequency.
    """
    return hypercomplex_ridge_map(slabs, wavelet, threshold, margin, footprint, window).points()


def estimate_orientation_field(slab: CoefficientSlab, rel_floor: float = 1e-12) -> np.ma.MaskedArray:
    """Local orientation (radians, modulo pi) from one isotropic monogenic slab.

    The ``(i, j)`` coefficient planes point along the local wave vector
    measured from the analysis angle, so the orientation is
    ``theta + atan(w_j / w_i)``.  Positions where the pair is below
    ``rel_floor`` of its peak magnitude are masked; masked entries hold 0.
    """
    wi, wj = slab.data[1], slab.data[2]
    odd = np.hypot(wi, wj)
    peak = float(odd.max())
    mask = odd <= rel_floor * peak if peak > 0 else np.ones(odd.shape, dtype=bool)
    safe_i = np.where(mask, 1.0, wi)
    ang = np.arctan2(np.where(mask, 0.0, wj), safe_i)
    out = np.where(mask, 0.0, np.mod(slab.theta + ang, math.pi))
    return np.ma.MaskedArray(out, mask=mask, fill_value=0.0)
