"""Benney-Luke mean-zero waves and their derived constants."""

import math

import numpy as np
import pytest

from longwave import bl, elliptic
from longwave.errors import DomainError


class TestM0:
    def test_bracketing_value(self):
        m0 = bl.bl_m0()
        assert 0.960 < m0 < 0.962

    def test_root_residual(self):
        m0 = bl.bl_m0()
        assert abs(1 + m0 - 3 * m0 * elliptic.mean_M(m0)) < 1e-10

    def test_sign_change_bracket(self):
        f = lambda m: 1 + m - 3 * m * elliptic.mean_M(m)
        assert f(0.9) > 0 > f(0.99)


class TestAdmissibility:
    def test_figure_parameters_admissible(self):
        bl.BLParams(0.9342, 2.25)  # below m0: a unconstrained
        bl.BLParams(0.995, 0.628)  # above m0: a below the bound

    def test_large_scaling_rejected_above_m0(self):
        with pytest.raises(DomainError, match="sqrt"):
            bl.BLParams(0.995, 10.0)

    def test_bound_is_strict(self):
        m = 0.995
        M = elliptic.mean_M(m)
        bound = 1.0 / (2.0 * math.sqrt(3 * m * M - m - 1))
        with pytest.raises(DomainError):
            bl.BLParams(m, bound)
        bl.BLParams(m, bound * 0.999999)

    @pytest.mark.parametrize("bad", [(0.0, 1.0), (1.0, 1.0), (0.5, 0.0), (0.5, -1.0)])
    def test_degenerate_parameters(self, bad):
        with pytest.raises(DomainError):
            bl.BLParams(*bad)


class TestWaveConstruction:
    def test_residual_and_mean(self):
        for params in [(0.9342, 2.25), (0.995, 0.628), (0.6872, 1.584)]:
            wave = bl.make_bl_wave(params)
            assert wave.residual < 1e-8
            x = wave.T * np.arange(1024) / 1024
            assert abs(np.mean(wave.v(x))) < 1e-10

    def test_speed_closed_form(self):
        m, a = 0.9342, 2.25
        wave = bl.make_bl_wave((m, a))
        M = elliptic.mean_M(m)
        assert wave.c == pytest.approx(
            1.0 / math.sqrt(1 + 4 * (1 + m - 3 * m * M) * a * a), rel=1e-15
        )
        assert wave.c > 0
        assert wave.T == pytest.approx(2 * elliptic.complete_K(m) / a, rel=1e-15)

    def test_crest_value_and_amplitude_sign(self):
        wave = bl.make_bl_wave((0.9342, 2.25))
        # sn^2 vanishes at the origin, so v(0) carries the full mean offset
        assert wave.v(0.0) == pytest.approx(wave.v0_amplitude * wave.M, rel=1e-12)
        x = wave.T * np.arange(512) / 512
        assert np.max(wave.v(x)) == pytest.approx(wave.v(0.0), abs=1e-10)

    def test_energy_level_validates_b_and_E(self):
        wave = bl.make_bl_wave((0.6872, 1.584))
        x = np.linspace(0.0, wave.T, 100, endpoint=False)
        profile = wave.profile()
        v = profile(x)
        v_x = profile.derivative(1)(x)
        V = 0.5 * wave.c * v**3 + 0.5 * (1 - wave.c**2) * v**2 + wave.b * v
        level = 0.5 * wave.c**2 * v_x**2 + V
        assert np.max(np.abs(level - wave.E)) < 1e-8

    def test_series_matches_direct(self):
        wave = bl.make_bl_wave((0.995, 0.618))
        x = np.linspace(0.0, wave.T, 512, endpoint=False)
        assert np.max(np.abs(wave.profile()(x) - wave.v(x))) < 1e-9


class TestSpectralOffset:
    def test_small_m_limit(self):
        assert bl.bl_ell((1e-8, 2.0)) == pytest.approx(0.25 + 4.0, abs=1e-6)

    def test_monotone_in_scaling(self):
        values = [bl.bl_ell((0.9342, a)) for a in np.linspace(0.5, 3.0, 12)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_rejects_inadmissible(self):
        with pytest.raises(DomainError):
            bl.bl_ell((0.995, 10.0))


def test_ode_route_matches_series():
    wave = bl.make_bl_wave((0.9342, 2.25))
    analytic = wave.fourier_coefficients(48)
    by_ode = bl.ode_fourier_coefficients(wave, 48)
    assert np.max(np.abs(analytic - by_ode.real)) < 1e-8
