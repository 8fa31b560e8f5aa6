"""Synthetic test images with known local structure.

Every generator is deterministic.  Plane waves and separable textures
also expose their hypercomplex or monogenic extension in closed form, so
identities can be checked without going through the FFT path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid_spectral import FreqGrid


def coords(shape) -> tuple[np.ndarray, np.ndarray]:
    h, w = shape
    x1 = np.broadcast_to(np.arange(h, dtype=float)[:, None], (h, w))
    x2 = np.broadcast_to(np.arange(w, dtype=float)[None, :], (h, w))
    return x1, x2


def _check_freq(f: float, name: str) -> None:
    if not 0.0 < f < 0.5:
        raise ValueError(f"{name} must lie in (0, 0.5) cycles/sample, got {f}")


@dataclass(frozen=True)
class PlaneWave:
    """``amp cos(2 pi f0 (x1 cos phi0 + x2 sin phi0) + phase)``; angles in radians."""

    f0: float
    phi0: float = 0.0
    amp: float = 1.0
    phase: float = 0.0

    def __post_init__(self):
        _check_freq(self.f0, "f0")

    def argument(self, x1, x2):
        return 2 * math.pi * self.f0 * (x1 * math.cos(self.phi0) + x2 * math.sin(self.phi0)) + self.phase

    def sample(self, shape) -> np.ndarray:
        return self.amp * np.cos(self.argument(*coords(shape)))

    def monogenic(self, shape) -> np.ndarray:
        """Closed-form monogenic signal ``amp exp(e_phi0 * argument)``."""
        u = self.argument(*coords(shape))
        s = self.amp * np.sin(u)
        return np.stack([self.amp * np.cos(u), math.cos(self.phi0) * s,
                         math.sin(self.phi0) * s, np.zeros_like(u)])


@dataclass(frozen=True)
class Separable:
    """``amp cos(2 pi f1 u1 + p1) cos(2 pi f2 u2 + p2)`` with ``u = r_{-theta} x``."""

    f1: float
    f2: float
    theta: float = 0.0
    amp: float = 1.0
    p1: float = 0.0
    p2: float = 0.0

    def __post_init__(self):
        _check_freq(self.f1, "f1")
        _check_freq(self.f2, "f2")

    def _args(self, u1, u2):
        return 2 * math.pi * self.f1 * u1 + self.p1, 2 * math.pi * self.f2 * u2 + self.p2

    def rotated_coords(self, shape):
        x1, x2 = coords(shape)
        c, s = math.cos(self.theta), math.sin(self.theta)
        return c * x1 + s * x2, -s * x1 + c * x2

    def sample(self, shape) -> np.ndarray:
        a, b = self._args(*self.rotated_coords(shape))
        return self.amp * np.cos(a) * np.cos(b)

    def hypercomplex(self, u1, u2) -> np.ndarray:
        """Hypercomplex signal of the unrotated texture at ``(u1, u2)``:
        ``amp e^{i a} e^{j b}``."""
        a, b = self._args(np.asarray(u1, float), np.asarray(u2, float))
        ca, sa, cb, sb = np.cos(a), np.sin(a), np.cos(b), np.sin(b)
        return self.amp * np.stack([ca * cb, sa * cb, ca * sb, sa * sb])


@dataclass(frozen=True)
class RadialChirp:
    """``amp cos(2 pi (f0 rho + rate rho^2 / 2))`` about the field centre."""

    f0: float
    rate: float
    amp: float = 1.0

    def sample(self, shape) -> np.ndarray:
        x1, x2 = coords(shape)
        rho = np.hypot(x1 - shape[0] / 2, x2 - shape[1] / 2)
        return self.amp * np.cos(2 * math.pi * (self.f0 * rho + 0.5 * self.rate * rho * rho))


@dataclass(frozen=True)
class Noise:
    """White Gaussian noise from a seeded generator."""

    seed: int = 0
    sigma: float = 1.0

    def sample(self, shape) -> np.ndarray:
        return self.sigma * np.random.default_rng(self.seed).standard_normal(shape)


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def sample(self, shape) -> np.ndarray:
        return sum(t.sample(shape) for t in self.terms)


def bandlimited_noise(shape, fmin: float, fmax: float, seed: int = 0,
                      exclude_axes: bool = True) -> np.ndarray:
    """Real random field whose spectrum fills the annulus ``fmin <= |f| <= fmax``.

    Bins on the frequency axes, at DC and on Nyquist lines are left empty
    when ``exclude_axes`` is set; there the Hilbert multipliers are not
    unimodular, so identities that rely on ``H^2 = -1`` hold exactly only
    without them.  The result has unit RMS.
    """
    grid = FreqGrid.for_shape(shape)
    rng = np.random.default_rng(seed)
    spec = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    mask = (grid.radius >= fmin) & (grid.radius <= fmax) & ~grid.nyquist
    if exclude_axes:
        mask &= (grid.f1 != 0) & (grid.f2 != 0)
    i1, i2 = grid.negate_index
    spec = np.where(mask, spec, 0.0)
    spec = 0.5 * (spec + np.conj(spec[i1, i2]))
    g = np.fft.ifft2(spec).real
    rms = float(np.sqrt(np.mean(g * g)))
    if rms == 0:
        raise ValueError("annulus contains no admissible frequency bins")
    return g / rms


# ---------------------------------------------------------------------------
# Text specs for the command line: "planewave:f0=0.08,phi0=30+noise:seed=7"


_GENERATORS = {
    "planewave": (PlaneWave, {"phi0", "phase"}),
    "separable": (Separable, {"theta", "p1", "p2"}),
    "chirp": (RadialChirp, set()),
    "noise": (Noise, set()),
}


def parse_spec(text: str):
    """Parse a ``+``-joined list of ``name:key=value,...`` terms.

    Angle-valued keys are given in degrees.
    """
    terms = []
    for part in text.split("+"):
        part = part.strip()
        if not part:
            raise ValueError(f"empty term in synth spec {text!r}")
        name, _, args = part.partition(":")
        if name not in _GENERATORS:
            raise ValueError(f"unknown generator {name!r}; choose from {sorted(_GENERATORS)}")
        cls, angle_keys = _GENERATORS[name]
        kwargs = {}
        for item in filter(None, (a.strip() for a in args.split(","))):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"expected key=value, got {item!r}")
            key = key.strip()
            num = float(val)
            if key == "seed":
                num = int(val)
            elif key in angle_keys:
                num = math.radians(num)
            kwargs[key] = num
        try:
            terms.append(cls(**kwargs))
        except TypeError as exc:
            raise ValueError(f"bad parameters for {name}: {exc}") from None
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))
