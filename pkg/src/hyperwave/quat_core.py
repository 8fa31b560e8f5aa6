"""Quaternion arithmetic and polar representations.

Scalar values use the :class:`Quaternion` dataclass.  Fields of quaternions
are plain ``numpy`` arrays whose leading axis has length 4 and holds the
``(r, i, j, k)`` components; every array routine here broadcasts over the
trailing axes.

Phases are measured in cycles, orientations in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ZeroQuaternion

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Quaternion:
    """A quaternion ``r + i*i + j*j + k*k`` with real components."""

    r: float = 0.0
    i: float = 0.0
    j: float = 0.0
    k: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def as_array(self) -> np.ndarray:
        return np.array([self.r, self.i, self.j, self.k], dtype=float)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.r + other.r, self.i + other.i,
                          self.j + other.j, self.k + other.k)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.r - other.r, self.i - other.i,
                          self.j - other.j, self.k - other.k)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.r, -self.i, -self.j, -self.k)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        s = float(other)
        return Quaternion(self.r * s, self.i * s, self.j * s, self.k * s)

    def __rmul__(self, other):
        # scalars are central, so left and right scaling agree
        return self.__mul__(other)

    def conj(self) -> "Quaternion":
        return Quaternion(self.r, -self.i, -self.j, -self.k)

    def norm(self) -> float:
        return math.sqrt(self.r ** 2 + self.i ** 2 + self.j ** 2 + self.k ** 2)

    def real(self) -> float:
        """Scalar part, ``(q + q*)/2``."""
        return self.r

    def pure(self) -> "Quaternion":
        """Pure part, ``(q - q*)/2``."""
        return Quaternion(0.0, self.i, self.j, self.k)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product of quaternion arrays (component axis first)."""
    a0, a1, a2, a3 = a[0], a[1], a[2], a[3]
    b0, b1, b2, b3 = b[0], b[1], b[2], b[3]
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ])


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product with ``ij = k``, ``jk = i``, ``ki = j``."""
    return Quaternion.from_array(qmul_arr(a.as_array(), b.as_array()))


def qconj_arr(q: np.ndarray) -> np.ndarray:
    out = -np.asarray(q, dtype=float)
    out[0] = -out[0]
    return out


def qabs_arr(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.sqrt(np.sum(q * q, axis=0))


def unit_pure(nu: float) -> Quaternion:
    """The unit pure quaternion ``e_nu = i cos(nu) + j sin(nu)``."""
    return Quaternion(0.0, math.cos(nu), math.sin(nu), 0.0)


def qexp_pure(angle: float, axis: Quaternion) -> Quaternion:
    """``exp(angle * axis)`` for a unit pure ``axis`` (De Moivre form)."""
    return Quaternion(math.cos(angle)) + axis * math.sin(angle)


def qexp_series(q: Quaternion, terms: int = 40) -> Quaternion:
    """Quaternion exponential by direct power series (reference only)."""
    total = ONE
    term = ONE
    for n in range(1, terms):
        term = qmul(term, q) * (1.0 / n)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Cayley-Dickson forms


def cayley_dickson_split(q: Quaternion, axis: Literal["i", "j"] = "i"):
    """Split ``q`` into simplex and perplex coefficient pairs.

    ``axis="i"`` gives ``q = (r + j*c) + i*(b + j*d)`` for
    ``q = r + i*b + j*c + k*d``, returned as ``((r, c), (b, d))``.
    ``axis="j"`` pairs the real part with the ``i`` coefficient and the
    ``j`` coefficient with the ``k`` coefficient, ``((r, b), (c, d))``; the
    complex pairs along ``j`` use the same inner unit convention as the
    hypercomplex Cauchy-Riemann system, where only the pairing matters.
    """
    if axis == "i":
        return (q.r, q.j), (q.i, q.k)
    if axis == "j":
        return (q.r, q.i), (q.j, q.k)
    raise ValueError("axis must be 'i' or 'j'")


def cayley_dickson_merge(simplex, perplex, axis: Literal["i", "j"] = "i") -> Quaternion:
    """Inverse of :func:`cayley_dickson_split`."""
    (s0, s1), (p0, p1) = simplex, perplex
    if axis == "i":
        return Quaternion(s0, p0, s1, p1)
    if axis == "j":
        return Quaternion(s0, s1, p0, p1)
    raise ValueError("axis must be 'i' or 'j'")


# ---------------------------------------------------------------------------
# Hypercomplex polar form  q = |q| e^{2 pi i alpha} e^{2 pi k gamma} e^{2 pi j beta}


@dataclass(frozen=True)
class PolarHypercomplex:
    magnitude: float
    alpha: float
    beta: float
    gamma: float


def _euler_product_arr(a, c, b):
    """Components of e^{i a} e^{k c} e^{j b} (angles in radians)."""
    ca, sa = np.cos(a), np.sin(a)
    cb, sb = np.cos(b), np.sin(b)
    cc, sc = np.cos(c), np.sin(c)
    return np.stack([
        ca * cc * cb + sa * sc * sb,
        sa * cc * cb - ca * sc * sb,
        ca * cc * sb - sa * sc * cb,
        sa * cc * sb + ca * sc * cb,
    ])



def polar_hypercomplex_arr(q: np.ndarray, branch: str = "full"):
    """Vectorised hypercomplex polar angles.

    Returns ``(magnitude, alpha, beta, gamma)`` arrays.  Entries with zero
    magnitude get zero angles; callers that need to reject them should
    check the magnitude.

    ``branch="full"`` resolves quadrants with ``atan2`` so that the angles
    reconstruct ``q`` exactly, giving ``alpha`` in [-1/2, 1/2), ``beta`` in
    [-1/4, 1/4] and ``gamma`` in [-1/8, 1/8].  ``branch="principal"`` keeps
    the single-argument arctangent, so ``alpha`` and ``beta`` land in
    (-1/8, 1/8]; those values only reconstruct ``q`` up to the discarded
    quadrant information.
    """
    q = np.asarray(q, dtype=float)
    mag = qabs_arr(q)
    safe = np.where(mag > 0, mag, 1.0)
    u = q / safe
    q1, q2, q3, q4 = u[0], u[1], u[2], u[3]

    if branch == "principal":
        s = np.clip(2.0 * (q2 * q3 - q1 * q4), -1.0, 1.0)
        gam = -0.5 * np.arcsin(s)  # radians, in [-pi/4, pi/4]
        num_a = 2.0 * (q3 * q4 + q1 * q2)
        den_a = q1 * q1 + q3 * q3 - q2 * q2 - q4 * q4
        num_b = 2.0 * (q2 * q4 + q1 * q3)
        den_b = q1 * q1 + q2 * q2 - q3 * q3 - q4 * q4
        with np.errstate(divide="ignore", invalid="ignore"):
            alp = 0.5 * np.arctan(num_a / den_a)
            bet = 0.5 * np.arctan(num_b / den_b)
        # vanishing denominator: continuous extension, atan(+-inf) = +-pi/2
        alp = np.where(den_a == 0, np.where(num_a == 0, 0.0, math.pi / 4), alp)
        bet = np.where(den_b == 0, np.where(num_b == 0, 0.0, math.pi / 4), bet)
        alp = np.where(alp <= -math.pi / 4, alp + math.pi / 2, alp)
        bet = np.where(bet <= -math.pi / 4, bet + math.pi / 2, bet)
        zero = mag == 0
        return (mag, np.where(zero, 0.0, alp / TWO_PI),
                np.where(zero, 0.0, bet / TWO_PI), np.where(zero, 0.0, gam / TWO_PI))
    if branch != "full":
        raise ValueError("branch must be 'full' or 'principal'")

    # For e^{ia} e^{kc} e^{jb}:
    #   r + k = (cos c + sin c) cos(a - b),  i - j = (cos c + sin c) sin(a - b)
    #   r - k = (cos c - sin c) cos(a + b),  i + j = (cos c - sin c) sin(a + b)
    # and both prefactors are non-negative for |c| <= pi/4.  Each angle then
    # comes from one atan2, which stays accurate near gamma = +-1/8 where
    # only a + b or a - b is defined (the other gets 0).
    plus = np.hypot(q1 + q4, q2 - q3)
    minus = np.hypot(q1 - q4, q2 + q3)
    diff = np.arctan2(q2 - q3, q1 + q4)
    total = np.arctan2(q2 + q3, q1 - q4)
    gam = np.arctan2(plus - minus, plus + minus)
    alp = 0.5 * (total + diff)
    bet = 0.5 * (total - diff)
    # e^{i(a + pi)} e^{kc} e^{j(b - pi)} is the same quaternion
    wrap = np.abs(bet) > math.pi / 2
    shift = np.where(wrap, np.sign(bet) * math.pi, 0.0)
    bet = bet - shift
    alp = alp + shift
    alp = np.where(alp >= math.pi, alp - TWO_PI, np.where(alp < -math.pi, alp + TWO_PI, alp))

    zero = mag == 0
    return (mag, np.where(zero, 0.0, alp / TWO_PI),
            np.where(zero, 0.0, bet / TWO_PI), np.where(zero, 0.0, gam / TWO_PI))


def polar_hypercomplex(q: Quaternion, branch: str = "full") -> PolarHypercomplex:
    """Magnitude and phases (cycles) of ``q`` in the hypercomplex polar form.

    Raises :class:`ZeroQuaternion` when ``q`` is zero.
    """
    arr = q.as_array()
    if not np.any(arr):
        raise ZeroQuaternion("polar angles are undefined for q = 0")
    mag, a, b, c = polar_hypercomplex_arr(arr, branch=branch)
    return PolarHypercomplex(float(mag), float(a), float(b), float(c))


def from_polar_hypercomplex_arr(magnitude, alpha, beta, gamma) -> np.ndarray:
    return np.asarray(magnitude) * _euler_product_arr(
        TWO_PI * np.asarray(alpha), TWO_PI * np.asarray(gamma), TWO_PI * np.asarray(beta))


def from_polar_hypercomplex(p: PolarHypercomplex) -> Quaternion:
    return Quaternion.from_array(
        from_polar_hypercomplex_arr(p.magnitude, p.alpha, p.beta, p.gamma))


# ---------------------------------------------------------------------------
# Monogenic polar form  q = A e^{2 pi e_nu phi},  k component zero


@dataclass(frozen=True)
class PolarMonogenic:
    amplitude: float
    orientation: float
    phase: float
    degenerate: bool = False


def polar_monogenic_arr(q: np.ndarray, fold: bool = False):
    """Vectorised monogenic polar form of ``(r, i, j[, k])`` arrays.

    Returns ``(amplitude, orientation, phase, degenerate)``.  With
    ``fold=False`` the orientation is ``atan2(j, i)`` and the phase lies in
    [0, 1/2].  With ``fold=True`` the orientation is reduced modulo pi to
    (-pi/2, pi/2] and the phase carries the sign instead, in (-1/2, 1/2];
    this is the form to use when the phase must vary continuously across
    a plane wave.  Where ``i = j = 0`` the orientation is NaN and the
    ``degenerate`` mask is set.
    """
    q = np.asarray(q, dtype=float)
    r, qi, qj = q[0], q[1], q[2]
    odd = np.hypot(qi, qj)
    amp = np.sqrt(r * r + qi * qi + qj * qj)
    degenerate = odd == 0
    nu = np.arctan2(qj, qi)
    if fold:
        back = (nu > math.pi / 2) | (nu <= -math.pi / 2)
        nu = np.where(back, np.where(nu > 0, nu - math.pi, nu + math.pi), nu)
        signed = np.where(back, -odd, odd)
        phase = np.arctan2(signed, r) / TWO_PI
        phase = np.where(phase <= -0.5, phase + 1.0, phase)
    else:
        phase = np.arctan2(odd, r) / TWO_PI
    nu = np.where(degenerate, np.nan, nu)
    phase = np.where(degenerate, np.where(r >= 0, 0.0, 0.5), phase)
    return amp, nu, phase, degenerate


def polar_monogenic(q: Quaternion, fold: bool = False) -> PolarMonogenic:
    """Amplitude, orientation (radians) and phase (cycles) of ``r + i a + j b``.

    The ``k`` component must vanish.  For ``i = j = 0`` the result is
    flagged ``degenerate`` with NaN orientation rather than raising.
    """
    if q.k != 0.0:
        raise ValueError("monogenic polar form needs a zero k component")
    amp, nu, ph, deg = polar_monogenic_arr(q.as_array(), fold=fold)
    return PolarMonogenic(float(amp), float(nu), float(ph), bool(deg))


def from_polar_monogenic_arr(amplitude, orientation, phase) -> np.ndarray:
    amplitude = np.asarray(amplitude, dtype=float)
    nu = np.nan_to_num(np.asarray(orientation, dtype=float))
    ang = TWO_PI * np.asarray(phase, dtype=float)
    s = amplitude * np.sin(ang)
    return np.stack([amplitude * np.cos(ang), s * np.cos(nu), s * np.sin(nu),
                     np.zeros_like(s)])


def from_polar_monogenic(p: PolarMonogenic) -> Quaternion:
    return Quaternion.from_array(
        from_polar_monogenic_arr(p.amplitude, p.orientation, p.phase))
