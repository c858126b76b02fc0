"""Regularized Boussinesq waves: derived constants, profiles, residuals."""

from types import SimpleNamespace

import numpy as np
import pytest

from longwave import rbou
from longwave.errors import DomainError
from tests.conftest import sample_admissible_roots


def test_derived_constants_first_example():
    wave = rbou.make_rbou_wave((-2.034, 0.7131, 1.0))
    assert wave.c**2 == pytest.approx(1.0 + 2.0 / 3.0 * (-0.3209), rel=1e-12)
    assert wave.c**2 == pytest.approx(0.78607, abs=5e-6)
    assert wave.m == pytest.approx((1.0 - 0.7131) / 3.034, rel=1e-12)
    assert wave.m == pytest.approx(0.094562, abs=5e-7)


def test_derived_constants_second_example():
    wave = rbou.make_rbou_wave((-1.246, -1.149, 1.0))
    assert wave.m == pytest.approx(0.95681, abs=5e-6)
    assert wave.u(0.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "roots",
    [(0.5, 0.5, 1.0), (0.7, 0.5, 1.0), (0.5, 1.0, 1.0), (-2.0, -1.0, 1.0)],
)
def test_wedge_violations_rejected(roots):
    with pytest.raises(DomainError):
        rbou.make_rbou_wave(roots)


def test_error_message_names_inequality():
    with pytest.raises(DomainError, match="alpha < beta"):
        rbou.make_rbou_wave((0.5, 0.5, 1.0))
    with pytest.raises(DomainError, match="-3/2"):
        rbou.make_rbou_wave((-2.0, -1.0, 1.0))


def test_speed_sign_branch():
    plus = rbou.make_rbou_wave((-0.5, 0.1, 1.0), speed_sign=1)
    minus = rbou.make_rbou_wave((-0.5, 0.1, 1.0), speed_sign=-1)
    assert minus.c == -plus.c
    assert minus.T == plus.T


def test_profile_residual_spectral_and_fd():
    wave = rbou.make_rbou_wave((-1.246, -1.149, 1.0))
    assert wave.residual < 1e-8

    # independent route: 4th-order central differences on a fine grid
    n = 4096
    h = wave.T / n
    x = h * np.arange(n)
    u = wave.u(x)
    u_xx = (
        -np.roll(u, 2) + 16 * np.roll(u, 1) - 30 * u + 16 * np.roll(u, -1) - np.roll(u, -2)
    ) / (12 * h * h)
    res = wave.c**2 * u_xx + (1 - wave.c**2) * u + u * u + wave.b_combo
    assert np.max(np.abs(res)) < 1e-8


def test_energy_level_along_orbit():
    wave = rbou.make_rbou_wave((-2.034, 0.7131, 1.0))
    x = np.linspace(0.0, wave.T, 100, endpoint=False)
    profile = wave.profile()
    u = profile(x)
    u_x = profile.derivative(1)(x)
    V = u**3 / 3 + 0.5 * (1 - wave.c**2) * u**2 + wave.b_combo * u
    level = 0.5 * wave.c**2 * u_x**2 + V
    assert np.max(np.abs(level - wave.E)) < 1e-8


def test_series_matches_direct_elliptic():
    for roots in [(-2.034, 0.7131, 1.0), (-1.246, -1.149, 1.0), (-0.5, 0.2, 0.9)]:
        wave = rbou.make_rbou_wave(roots)
        x = np.linspace(0.0, wave.T, 512, endpoint=False)
        assert np.max(np.abs(wave.profile()(x) - wave.u(x))) < 1e-9


def test_extrema_and_period_scaling():
    wave = rbou.make_rbou_wave((-1.0, -0.2, 0.8))
    x = np.linspace(0.0, wave.T, 2048, endpoint=False)
    u = wave.u(x)
    beta, gamma = wave.roots.beta, wave.roots.gamma
    assert np.all(u <= gamma + 1e-12) and np.all(u >= beta - 1e-12)
    assert wave.u(wave.T / 2.0) == pytest.approx(beta, abs=1e-10)
    assert wave.T * wave.a == pytest.approx(2.0 * wave.K, rel=1e-15)


class TestVProfile:
    def test_constant_profile_transform(self):
        # synthetic constant u: the transform must return -c u0 - b2 exactly
        u0, c, b2 = 0.37, 1.1, 0.25
        coeffs = np.zeros(17)
        coeffs[8] = u0
        stub = SimpleNamespace(
            m=0.5, c=c, T=3.0, fourier_coefficients=lambda n_max: np.pad(
                np.array([u0]), (n_max, n_max)
            )
        )
        v = rbou.rbou_v_profile(stub, b2=b2)
        x = np.linspace(0.0, 3.0, 7)
        assert np.max(np.abs(v(x) - (-c * u0 - b2))) < 1e-14

    def test_first_stationary_equation(self):
        wave = rbou.make_rbou_wave((-2.034, 0.7131, 1.0))
        v = rbou.rbou_v_profile(wave, b2=0.0)
        b1 = wave.b_combo  # b1 = b_combo + b2 c with b2 = 0
        x = np.linspace(0.0, wave.T, 512, endpoint=False)
        u = wave.u(x)
        res = u + u * u + wave.c * v(x) + b1
        assert np.max(np.abs(res)) < 1e-8

    def test_nonzero_b2_shifts_b1(self):
        wave = rbou.make_rbou_wave((-2.034, 0.7131, 1.0))
        b2 = 0.7
        v = rbou.rbou_v_profile(wave, b2=b2)
        b1 = wave.b_combo + b2 * wave.c
        x = np.linspace(0.0, wave.T, 128)
        res = wave.u(x) + wave.u(x) ** 2 + wave.c * v(x) + b1
        assert np.max(np.abs(res)) < 1e-8

    def test_evenness(self):
        wave = rbou.make_rbou_wave((-1.246, -1.149, 1.0))
        v = rbou.rbou_v_profile(wave)
        x = np.linspace(0.1, wave.T / 2, 25)
        assert np.max(np.abs(v(-x) - v(x))) < 1e-12


class TestSpectralOffset:
    def test_example_value(self):
        assert rbou.rbou_ell((-2.034, 0.7131, 1.0)) == pytest.approx(
            18.0 / 3.034, rel=1e-14
        )
        assert rbou.rbou_ell((-2.034, 0.7131, 1.0)) == pytest.approx(5.9328, abs=1e-4)

    def test_upper_right_corner_growth(self):
        eps = np.array([0.5, 0.1, 0.01, 0.001])
        values = [rbou.rbou_ell((1 - 2 * e, 1 - e, 1.0)) for e in eps]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_closed_forms_agree_on_random_samples(self):
        rng = np.random.default_rng(5)
        for roots in sample_admissible_roots(rng, 100):
            ell = rbou.rbou_ell(roots)
            alpha, beta, gamma = roots
            m = (gamma - beta) / (gamma - alpha)
            a2 = (gamma - alpha) / (4 * (alpha + beta + gamma) + 6)
            assert ell == pytest.approx(4 + 4 * m + 1 / a2, rel=1e-12)

    def test_positive_on_wedge(self):
        rng = np.random.default_rng(6)
        for roots in sample_admissible_roots(rng, 50):
            assert rbou.rbou_ell(roots) > 4.0


def test_ode_route_matches_series():
    wave = rbou.make_rbou_wave((-1.246, -1.149, 1.0))
    analytic = wave.fourier_coefficients(48)
    by_ode = rbou.ode_fourier_coefficients(wave, 48)
    assert np.max(np.abs(analytic - by_ode.real)) < 1e-8
    assert np.max(np.abs(by_ode.imag)) < 1e-9
