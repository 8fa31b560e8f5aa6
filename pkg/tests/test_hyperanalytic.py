import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperwave import grid_spectral as gs
from hyperwave import hyperanalytic as ha
from hyperwave import quat_core as qc
from hyperwave.errors import UnsupportedRotation
from hyperwave.synth import bandlimited_noise, coords

TAU = 2 * math.pi


def rand_field(shape, seed=0):
    return np.random.default_rng(seed).standard_normal(shape)


def separable(n, k1, k2, shift1=0.0, shift2=0.0):
    x1, x2 = coords((n, n))
    return (np.cos(TAU * k1 * x1 / n - shift1) * np.cos(TAU * k2 * x2 / n - shift2))


def separable_generator(f1, f2):
    """Closed-form hypercomplex planes of cos(2 pi f1 u1) cos(2 pi f2 u2)."""
    def gen(u1, u2):
        c1, s1 = np.cos(TAU * f1 * u1), np.sin(TAU * f1 * u1)
        c2, s2 = np.cos(TAU * f2 * u2), np.sin(TAU * f2 * u2)
        return np.stack([c1 * c2, s1 * c2, c1 * s2, s1 * s2])
    return gen


def rotated_qft_at(field, theta, q1, q2):
    """Quaternion Fourier sum at one frequency pair, taken in a rotated frame."""
    h, w = field.shape
    x1, x2 = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
    c, s = math.cos(theta), math.sin(theta)
    u1, u2 = c * x1 + s * x2, -s * x1 + c * x2
    a, b = TAU * q1 * u1, TAU * q2 * u2
    zero = np.zeros_like(a)
    left = np.stack([np.cos(a), -np.sin(a), zero, zero])
    right = np.stack([np.cos(b), zero, -np.sin(b), zero])
    prod = qc.qmul_arr(qc.qmul_arr(left, field.data), right)
    return prod.sum(axis=(1, 2))


# -- hypercomplex ------------------------------------------------------------


def test_separable_cosine_gives_parity_quadruple():
    n, k1, k2 = 32, 3, 5
    hc = ha.hypercomplex_extend(separable(n, k1, k2))
    x1, x2 = coords((n, n))
    c1, s1 = np.cos(TAU * k1 * x1 / n), np.sin(TAU * k1 * x1 / n)
    c2, s2 = np.cos(TAU * k2 * x2 / n), np.sin(TAU * k2 * x2 / n)
    np.testing.assert_allclose(hc.data, np.stack([c1 * c2, s1 * c2, c1 * s2, s1 * s2]),
                               atol=1e-11)


@pytest.mark.parametrize("shape", [(31, 27), (32, 32)])
def test_hypercomplex_qft_lives_in_first_quadrant(shape):
    g = bandlimited_noise(shape, 0.05, 0.4, seed=2)
    Q = gs.qft_forward(ha.hypercomplex_extend(g)).abs()
    grid = gs.FreqGrid.for_shape(shape)
    outside = (grid.f1 < 0) | (grid.f2 < 0)
    assert np.max(Q[outside]) <= 1e-10 * np.max(Q)


def test_separable_cosine_has_zero_gamma():
    hc = ha.hypercomplex_extend(separable(32, 3, 5))
    _, _, _, gamma = qc.polar_hypercomplex_arr(hc.data)
    assert np.max(np.abs(gamma)) < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 31), st.floats(0, 2 * math.pi))
def test_real_part_and_split_average(seed, theta):
    g = rand_field((12, 10), seed)
    parts = ha.hypercomplex_split(g, theta)
    assert all(np.array_equal(p.r, g) for p in parts.values())
    mean = sum(p.data for p in parts.values()) / 4
    np.testing.assert_allclose(mean[0], g, atol=0)
    assert np.max(np.abs(mean[1:])) < 1e-12 * np.max(np.abs(g))
    assert np.array_equal(parts[(1, 1)].data, ha.hypercomplex_extend(g, theta=theta).data)


def test_bad_signs_rejected():
    with pytest.raises(ValueError):
        ha.hypercomplex_extend(np.zeros((4, 4)), (1, 0))
    with pytest.raises(ValueError):
        ha.monogenic_extend(np.zeros((4, 4)), 2)


# -- rotated hypercomplex ----------------------------------------------------


def test_theta_zero_is_plain_extension():
    g = rand_field((16, 16), 1)
    assert np.array_equal(ha.theta_hypercomplex_extend(g, 0.0).data,
                          ha.hypercomplex_extend(g).data)


def test_quarter_turn_of_sampled_field():
    n = 16
    g = rand_field((n, n), 2)
    got = ha.theta_hypercomplex_extend(g, math.pi / 2).data
    hc = ha.hypercomplex_extend(g).data
    # out[x1, x2] = HC g at r_{-pi/2} x = (x2, -x1)
    idx1 = np.arange(n)[None, :]
    idx2 = (-np.arange(n))[:, None] % n
    np.testing.assert_array_equal(got, hc[:, idx1, idx2])


@pytest.mark.parametrize("turns", [1, 2, 3])
def test_quarter_turns_agree_with_generator(turns):
    n, k1, k2 = 32, 3, 5
    theta = turns * math.pi / 2
    sampled = ha.theta_hypercomplex_extend(separable(n, k1, k2), theta)
    closed = ha.theta_hypercomplex_extend(separable_generator(k1 / n, k2 / n), theta, (n, n))
    np.testing.assert_allclose(sampled.data, closed.data, atol=1e-11)


def test_rotation_off_the_grid_is_refused():
    with pytest.raises(UnsupportedRotation):
        ha.theta_hypercomplex_extend(rand_field((8, 8)), 0.3)
    with pytest.raises(UnsupportedRotation):
        ha.rotate_samples(rand_field((8, 6)), math.pi / 2)
    with pytest.raises(ValueError):
        ha.theta_hypercomplex_extend(separable_generator(0.1, 0.1), 0.3)


def test_rotated_generator_keeps_one_quadrant():
    # r_theta maps both wave vectors onto integer bins of the 64-grid
    n = 64
    theta = math.atan2(3, 4)
    f1, f2 = 5 / n, 10 / n
    q = ha.theta_hypercomplex_extend(separable_generator(f1, f2), theta, (n, n))
    vals = {(s1, s2): rotated_qft_at(q, theta, s1 * f1, s2 * f2)
            for s1 in (1, -1) for s2 in (1, -1)}
    peak = np.linalg.norm(vals[(1, 1)])
    assert peak == pytest.approx(n * n, rel=1e-9)
    for key in ((1, -1), (-1, 1), (-1, -1)):
        assert np.linalg.norm(vals[key]) <= 1e-9 * peak


def test_rotated_separable_generator_has_zero_gamma():
    n = 48
    q = ha.theta_hypercomplex_extend(separable_generator(0.07, 0.11), 0.4, (n, n))
    mag, _, _, gamma = qc.polar_hypercomplex_arr(q.data)
    keep = mag > 1e-6 * mag.max()
    assert np.max(np.abs(gamma[keep])) < 1e-8


# -- monogenic ---------------------------------------------------------------


def test_monogenic_of_oriented_sinusoid():
    n, k1, k2 = 64, 5, 3
    nu = math.atan2(k2, k1)
    f0 = math.hypot(k1, k2) / n
    x1, x2 = coords((n, n))
    g = np.cos(TAU * (k1 * x1 + k2 * x2) / n)
    m = ha.monogenic_extend(g)
    assert np.array_equal(m.r, g) and not np.any(m.k)
    amp, orient, phase, _ = qc.polar_monogenic_arr(m.data)
    np.testing.assert_allclose(amp, 1.0, atol=1e-11)
    live = np.abs(np.sin(TAU * (k1 * x1 + k2 * x2) / n)) > 1e-3
    np.testing.assert_allclose(orient[live] % math.pi, nu, atol=1e-9)
    # phase advances by f0 cycles per unit step along the wave vector
    expect = (f0 * (math.cos(nu) * x1 + math.sin(nu) * x2) + 0.5) % 1.0 - 0.5
    err = (np.abs(phase) - np.abs(expect))
    assert np.max(np.abs(err)) < 1e-9


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 31), st.floats(0, 2 * math.pi))
def test_monogenic_pair_averages_to_input(seed, theta):
    g = rand_field((11, 14), seed)
    plus, minus = ha.theta_monogenic_decompose(g, theta)
    np.testing.assert_array_equal((plus.data + minus.data)[0] / 2, g)
    assert np.max(np.abs(plus.data[1:] + minus.data[1:])) == 0
    # anti-monogenic is the conjugate on (r, i, j)
    np.testing.assert_array_equal(minus.data, plus.conj().data)


def test_theta_zero_decomposition():
    g = rand_field((10, 10), 3)
    plus, minus = ha.theta_monogenic_decompose(g, 0.0)
    assert np.array_equal(plus.data, ha.monogenic_extend(g, 1).data)
    assert np.array_equal(minus.data, ha.monogenic_extend(g, -1).data)


def test_rotated_monogenic_magnitude_and_components():
    g = rand_field((24, 20), 4)
    theta = math.pi / 3
    plus, _ = ha.theta_monogenic_decompose(g, theta)
    ref = ha.monogenic_extend(g)
    np.testing.assert_allclose(plus.abs(), ref.abs(), atol=1e-12)
    r1, r2 = gs.riesz(g)
    c, s = math.cos(theta), math.sin(theta)
    np.testing.assert_allclose(plus.i, c * r1 + s * r2, atol=1e-12)
    np.testing.assert_allclose(plus.j, -s * r1 + c * r2, atol=1e-12)


def test_extension_dispatch():
    g = rand_field((8, 8), 5)
    for kind in ha.HyperanalyticKind:
        q = ha.extension_of(kind, g, 0.2)
        assert np.array_equal(q.r, g)
    assert np.array_equal(ha.extension_of(ha.HyperanalyticKind.HYPERCOMPLEX_MP, g).data,
                          ha.hypercomplex_extend(g, (-1, 1)).data)


# -- phase shifts ------------------------------------------------------------


def test_plane_shift_examples():
    n = 64
    x1, _ = coords((n, n))
    g = np.cos(TAU * 5 * x1 / n)
    assert np.array_equal(ha.phase_shift_plane(g, 0.0), g)
    np.testing.assert_allclose(ha.phase_shift_plane(g, math.pi / 2),
                               np.sin(TAU * 5 * x1 / n), atol=1e-10)
    np.testing.assert_allclose(ha.phase_shift_plane(g, math.pi), -g, atol=1e-10)


def test_plane_shift_by_half_cycle_negates_oriented_wave():
    n = 64
    x1, x2 = coords((n, n))
    g = 0.7 * np.cos(TAU * (4 * x1 - 6 * x2) / n + 0.3)
    np.testing.assert_allclose(ha.phase_shift_plane(g, math.pi), -g, atol=1e-10)


def test_plane_shift_passes_quiet_samples():
    g = np.zeros((8, 8))
    assert np.array_equal(ha.phase_shift_plane(g, 1.0), g)


def test_separable_shift_examples():
    n = 32
    g = separable(n, 3, 5)
    assert np.array_equal(ha.phase_shift_separable(g, 0.0, 0.0), g)
    x1, x2 = coords((n, n))
    want = np.sin(TAU * 3 * x1 / n) * np.cos(TAU * 5 * x2 / n)
    np.testing.assert_allclose(ha.phase_shift_separable(g, math.pi / 2, 0.0), want, atol=1e-10)


@pytest.mark.parametrize("shifts", [(0.4, -1.1), (math.pi / 2, math.pi / 3), (2.0, 0.0)])
def test_shift_acts_as_two_sided_exponential(shifts):
    t1, t2 = shifts
    n = 32
    g = separable(n, 3, 5)
    shifted = ha.phase_shift_separable(g, t1, t2)
    np.testing.assert_allclose(shifted, separable(n, 3, 5, t1, t2), atol=1e-10)
    lhs = ha.hypercomplex_extend(shifted).data
    left = np.array([math.cos(t1), -math.sin(t1), 0, 0])[:, None, None]
    right = np.array([math.cos(t2), 0, -math.sin(t2), 0])[:, None, None]
    rhs = qc.qmul_arr(qc.qmul_arr(left, ha.hypercomplex_extend(g).data), right)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)
