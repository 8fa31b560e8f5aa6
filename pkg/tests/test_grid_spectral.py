import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, ndimage

from hyperwave import grid_spectral as gs
from hyperwave import quat_core as qc
from hyperwave.errors import NonpositiveScale
from hyperwave.grid_spectral import FreqGrid, Multiplier, QuaternionField
from hyperwave.synth import bandlimited_noise, coords


def rand_field(shape, seed=0):
    return np.random.default_rng(seed).standard_normal(shape)


def rand_quat(shape, seed=0):
    return QuaternionField(np.random.default_rng(seed).standard_normal((4,) + shape))


# -- plain FFT ---------------------------------------------------------------


def test_fft_of_constant():
    X = gs.fft2(np.ones((8, 8)))
    assert X[0, 0] == 64
    X[0, 0] = 0
    assert np.max(np.abs(X)) < 1e-12


def test_fft_matches_double_sum():
    x = rand_field((6, 5), 1)
    np.testing.assert_allclose(gs.fft2(x), gs.dft2_bruteforce(x), atol=1e-10)
    np.testing.assert_allclose(gs.ifft2(gs.fft2(x)).real, x, atol=1e-12)


def test_bruteforce_is_capped():
    with pytest.raises(ValueError):
        gs.dft2_bruteforce(np.zeros((17, 4)))


@given(st.integers(2, 12), st.integers(2, 12), st.integers(0, 2 ** 31))
def test_parseval(h, w, seed):
    x = rand_field((h, w), seed)
    X = gs.fft2(x)
    assert np.sum(x * x) == pytest.approx(np.sum(np.abs(X) ** 2) / (h * w), rel=1e-11)


def test_freq_grid_layout():
    g = FreqGrid.for_shape((6, 5))
    assert g.f1[0, 0] == 0 and g.f2[0, 0] == 0
    assert np.all(g.f1 >= -0.5) and np.all(g.f1 < 0.5)
    assert g.f1[3, 0] == -0.5  # negative frequencies in the upper half of the index range
    np.testing.assert_allclose(g.radius, np.hypot(g.f1, g.f2))


# -- QFT ---------------------------------------------------------------------


def test_qft_of_constant():
    G = gs.qft_forward(QuaternionField.real(np.ones((6, 6))))
    assert G.r[0, 0] == pytest.approx(36)
    G.data[0, 0, 0] = 0
    assert np.max(np.abs(G.data)) < 1e-12


def test_qft_real_relation_binwise():
    # G_Q(q) = (1 - k)/2 G(q) + (1 + k)/2 G(-q1, q2), complex unit embedded as j
    g = rand_field((8, 7), 2)
    G = np.fft.fft2(g)
    Gm = G[(-np.arange(8)) % 8, :]

    def emb(z):
        return np.stack([z.real, np.zeros_like(z.real), z.imag, np.zeros_like(z.real)])

    one_minus_k = np.array([0.5, 0, 0, -0.5])[:, None, None]
    one_plus_k = np.array([0.5, 0, 0, 0.5])[:, None, None]
    expect = qc.qmul_arr(one_minus_k, emb(G)) + qc.qmul_arr(one_plus_k, emb(Gm))
    np.testing.assert_allclose(gs.qft_real(g).data, expect, atol=1e-10)


def test_qft_matches_quaternion_double_sum():
    q = rand_quat((5, 6), 3)
    np.testing.assert_allclose(gs.qft_forward(q).data, gs.qft_bruteforce(q).data, atol=1e-9)
    g = rand_field((8, 8), 4)
    np.testing.assert_allclose(gs.qft_forward(QuaternionField.real(g)).data,
                               gs.qft_bruteforce(QuaternionField.real(g)).data, atol=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 10), st.integers(2, 10), st.integers(0, 2 ** 31))
def test_qft_round_trip(h, w, seed):
    q = rand_quat((h, w), seed)
    back = gs.qft_inverse(gs.qft_forward(q)).data
    np.testing.assert_allclose(back, q.data, atol=1e-11 * np.max(np.abs(q.data)) * h * w)


# -- UQFT --------------------------------------------------------------------


def test_uqft_along_j_is_plain_fft():
    g = rand_field((6, 6), 5)
    U = gs.uqft_forward(g, math.pi / 2)
    G = np.fft.fft2(g)
    np.testing.assert_allclose(U.r, G.real, atol=1e-12)
    np.testing.assert_allclose(U.j, G.imag, atol=1e-12)
    assert np.max(np.abs(U.i)) < 1e-12 and not np.any(U.k)


def test_uqft_round_trip():
    g = rand_field((9, 8), 6)
    np.testing.assert_allclose(gs.uqft_inverse(gs.uqft_forward(g, 0.7), 0.7), g, atol=1e-12)


def test_uqft_of_plane_wave_and_its_monogenic_extension():
    from hyperwave.hyperanalytic import monogenic_extend

    n = 32
    k1, k2 = 3, 4  # commensurate wave vector, orientation atan2(4, 3)
    nu = math.atan2(k2, k1)
    x1, x2 = coords((n, n))
    g = np.cos(2 * math.pi * (k1 * x1 + k2 * x2) / n)
    U = gs.uqft_forward(g, nu).abs()
    support = np.zeros((n, n), bool)
    support[k1, k2] = support[-k1, -k2] = True
    assert np.max(U[~support]) < 1e-10 * np.max(U)
    M = gs.uqft_forward(monogenic_extend(g), nu).abs()
    assert M[-k1, -k2] < 1e-10 * M[k1, k2] or M[k1, k2] < 1e-10 * M[-k1, -k2]


# -- multipliers -------------------------------------------------------------


def test_hilbert_of_cosine_is_sine():
    n = 32
    x1, x2 = coords((n, n))
    np.testing.assert_allclose(gs.hilbert(np.cos(2 * math.pi * 3 * x1 / n), 1),
                               np.sin(2 * math.pi * 3 * x1 / n), atol=1e-11)
    c = np.cos(2 * math.pi * 3 * x1 / n) * np.cos(2 * math.pi * 5 * x2 / n)
    s = np.sin(2 * math.pi * 3 * x1 / n) * np.sin(2 * math.pi * 5 * x2 / n)
    np.testing.assert_allclose(gs.hilbert_total(c), s, atol=1e-11)


def test_riesz_of_oriented_cosine():
    n = 64
    k1, k2 = 5, 4
    nu = math.atan2(k2, k1)
    x1, x2 = coords((n, n))
    arg = 2 * math.pi * (k1 * x1 + k2 * x2) / n
    r1, r2 = gs.riesz(np.cos(arg))
    np.testing.assert_allclose(r1, math.cos(nu) * np.sin(arg), atol=1e-11)
    np.testing.assert_allclose(r2, math.sin(nu) * np.sin(arg), atol=1e-11)


@pytest.mark.parametrize("kind", list(Multiplier))
@pytest.mark.parametrize("theta", [0.0, 0.4])
@pytest.mark.parametrize("shape", [(8, 8), (9, 6), (7, 7)])
def test_multipliers_keep_outputs_real(kind, theta, shape):
    g = rand_field(shape, 7)
    out = np.fft.ifft2(gs.apply_multiplier(np.fft.fft2(g), kind, theta=theta))
    assert np.max(np.abs(out.imag)) <= 1e-11 * np.max(np.abs(out.real))


def test_multiplier_values_at_zero_frequency():
    grid = FreqGrid.for_shape((8, 8))
    for kind in Multiplier:
        assert gs.multiplier_values(kind, grid)[0, 0] == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_orthogonality_and_norms(seed):
    g = rand_field((15, 13), seed)  # odd sides: no Nyquist lines to annihilate
    n2 = np.sum(g * g)
    r1, r2 = gs.riesz(g)
    assert abs(np.sum(r1 * g)) <= 1e-10 * n2
    assert abs(np.sum(r2 * g)) <= 1e-10 * n2
    for h in (gs.hilbert(g, 1), gs.hilbert(g, 2)):
        assert abs(np.sum(h * g)) <= 1e-10 * n2
    # the Riesz pair loses only the DC bin
    gz = g - g.mean()
    assert np.sum(r1 ** 2) + np.sum(r2 ** 2) == pytest.approx(np.sum(gz * gz), rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_total_hilbert_orthogonality_for_separable_input(seed):
    # -sgn(f1) sgn(f2) is even, so this needs |G|^2 even in each frequency;
    # separable real fields have that, generic fields do not
    rng = np.random.default_rng(seed)
    g = np.outer(rng.standard_normal(16), rng.standard_normal(12))
    n2 = np.sum(g * g)
    h1, h2, ht = gs.hilbert(g, 1), gs.hilbert(g, 2), gs.hilbert_total(g)
    for a, b in ((ht, g), (h1, h2), (h1, ht), (h2, ht)):
        assert abs(np.sum(a * b)) <= 1e-10 * n2


def test_total_hilbert_not_orthogonal_in_general():
    g = rand_field((16, 12), 0)
    assert abs(np.sum(gs.hilbert_total(g) * g)) > 1e-3 * np.sum(g * g)


def test_hilbert_norm_off_the_annihilated_lines():
    g = bandlimited_noise((32, 32), 0.05, 0.4, seed=1)  # no axis or Nyquist bins
    n2 = np.sum(g * g)
    for h in (gs.hilbert(g, 1), gs.hilbert(g, 2), gs.hilbert_total(g)):
        assert np.sum(h * h) == pytest.approx(n2, rel=1e-10)


def test_riesz_components_orthogonal_for_isotropic_input():
    n = 64
    x1, x2 = coords((n, n))
    rho2 = (x1 - n / 2) ** 2 + (x2 - n / 2) ** 2
    g = np.exp(-rho2 / 40.0) - np.exp(-rho2 / 90.0) * 40 / 90
    r1, r2 = gs.riesz(g)
    assert abs(np.sum(r1 * r2)) <= 1e-10 * np.sum(g * g)


# -- Poisson kernels ---------------------------------------------------------


def test_nonpositive_scale_rejected():
    with pytest.raises(NonpositiveScale):
        gs.poisson_kernel((8, 8), 0.0)


@pytest.mark.parametrize("y", [0.3, 1.0, 4.0])
def test_poisson_kernel_unit_mass_analytic(y):
    # quadrature of the analytic kernel over the whole plane, in polar form
    radial, _ = integrate.quad(lambda r: gs.C2 * y * 2 * math.pi * r / (r * r + y * y) ** 1.5,
                               0, np.inf)
    assert radial == pytest.approx(1.0, abs=1e-6)


def test_poisson_kernel_sampled_mass():
    # the truncated window loses the tail beyond the minimum-image square
    k = gs.poisson_kernel((256, 256), 1.0)
    assert k.sum() == pytest.approx(1.0, abs=1e-2)
    # a thin slab keeps all but about y / (half cell) of its mass in the centre cell
    assert gs.poisson_kernel((64, 64), 0.01)[0, 0] == pytest.approx(0.98, abs=3e-3)


def test_small_scale_p_convolution_is_near_identity():
    g = ndimage.gaussian_filter(rand_field((64, 64), 8), 6, mode="wrap")
    out = gs.poisson_convolve(g, 0.25)
    assert np.linalg.norm(out - g) <= 0.05 * np.linalg.norm(g)


def test_conjugate_poisson_1d_on_cosine():
    n, f0, y = 128, 2 / 128, 0.25
    x1, _ = coords((n, 4))
    g = np.cos(2 * math.pi * f0 * x1)
    out = gs.poisson_convolve(g, y, "q1", "1D")
    expect = math.exp(-2 * math.pi * f0 * y) * np.sin(2 * math.pi * f0 * x1)
    assert np.max(np.abs(out - expect)) <= 1e-3


def test_kernel_route_agrees_with_multiplier_route():
    # cell-integrated 2-D kernels against the analytic multipliers at moderate y
    g = bandlimited_noise((128, 128), 0.01, 0.06, seed=2)
    y = 2.0
    ext = gs.poisson_extension(g, y, "riesz")
    for plane, kind in zip(ext, ("p", "q1", "q2")):
        conv = gs.poisson_convolve(g, y, kind)
        assert np.linalg.norm(conv - plane) <= 0.05 * np.linalg.norm(plane)


def _smooth_field(n):
    x = np.arange(n) / n
    x1, x2 = np.meshgrid(x, x, indexing="ij")
    return (np.cos(2 * math.pi * (2 * x1 + 3 * x2) + 0.3)
            + 0.5 * np.cos(2 * math.pi * (3 * x1 - x2))
            + 0.7 * np.sin(2 * math.pi * (x1 + 4 * x2)))


@pytest.mark.parametrize("kind", ["hyper", "riesz"])
def test_cauchy_riemann_residual_is_second_order(kind):
    res = [gs.cauchy_riemann_residual(_smooth_field(n), 0.05, kind, 1.0 / n) for n in (32, 64, 128)]
    orders = [math.log2(res[i] / res[i + 1]) for i in range(2)]
    assert min(orders) >= 1.7


def test_hyper_extension_at_zero_height_is_hypercomplex_signal():
    from hyperwave.hyperanalytic import hypercomplex_extend

    g = bandlimited_noise((32, 32), 0.05, 0.4, seed=3)
    ext = gs.poisson_extension(g, (1e-12, 1e-12), "hyper")
    np.testing.assert_allclose(ext, hypercomplex_extend(g).data, atol=1e-9)
