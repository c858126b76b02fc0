"""Elliptic-function layer: AGM integrals, Jacobi functions, sn^2 series."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from longwave import elliptic
from longwave.errors import DomainError


class TestCompleteIntegrals:
    def test_small_m_limits(self):
        assert elliptic.complete_K(1e-12) == pytest.approx(math.pi / 2, abs=1e-9)
        assert elliptic.complete_E(1e-12) == pytest.approx(math.pi / 2, abs=1e-9)

    def test_E_m_to_one(self):
        assert elliptic.complete_E(1.0 - 1e-12) == pytest.approx(1.0, abs=1e-9)

    def test_K_half_against_quadrature(self):
        # direct quadrature of the defining integral, singular endpoint and all
        val, err = integrate.quad(
            lambda s: 1.0 / math.sqrt((1 - s * s) * (1 - 0.5 * s * s)), 0.0, 1.0
        )
        assert err < 1e-7
        assert elliptic.complete_K(0.5) == pytest.approx(val, abs=1e-8)
        assert elliptic.complete_K(0.5) == pytest.approx(1.854074677301372, abs=1e-14)

    def test_E_half_against_quadrature(self):
        val, _ = integrate.quad(
            lambda s: math.sqrt((1 - 0.5 * s * s) / (1 - s * s)), 0.0, 1.0
        )
        assert elliptic.complete_E(0.5) == pytest.approx(val, abs=1e-9)
        assert elliptic.complete_E(0.5) == pytest.approx(1.350643881047676, abs=1e-14)

    @pytest.mark.parametrize("m", np.arange(0.1, 0.95, 0.1))
    def test_agm_vs_smooth_quadrature(self, m):
        # trigonometric form of the same integral is smooth, good to ~1e-13
        val, _ = integrate.quad(
            lambda t: 1.0 / math.sqrt(1 - m * math.sin(t) ** 2), 0.0, math.pi / 2
        )
        assert abs(elliptic.complete_K(m) - val) < 1e-12

    def test_K_monotone_in_m(self):
        assert elliptic.complete_K(0.9568) > elliptic.complete_K(0.9)

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.3, 1.5, math.inf, math.nan])
    def test_domain_rejected(self, bad):
        with pytest.raises(DomainError):
            elliptic.complete_K(bad)
        with pytest.raises(DomainError):
            elliptic.complete_E(bad)


class TestJacobiFunctions:
    def test_special_arguments(self):
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(0.0, 0.7)
        assert (sn, cn, dn) == (0.0, 1.0, 1.0)
        K = elliptic.complete_K(0.7)
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(K, 0.7)
        assert sn == pytest.approx(1.0, abs=1e-12)
        assert cn == pytest.approx(0.0, abs=1e-12)
        assert dn == pytest.approx(math.sqrt(0.3), abs=1e-12)

    def test_pythagorean_identities(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            m = rng.uniform(1e-3, 1.0 - 1e-3)
            x = rng.uniform(-25.0, 25.0)
            sn, cn, dn = elliptic.jacobi_sn_cn_dn(x, m)
            assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
            assert dn * dn + m * sn * sn == pytest.approx(1.0, abs=1e-12)

    @given(
        x=st.floats(-20.0, 20.0, allow_nan=False),
        m=st.floats(1e-3, 1.0 - 1e-3, allow_nan=False),
    )
    @settings(max_examples=200, deadline=None)
    def test_identities_hypothesis(self, x, m):
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(x, m)
        assert abs(sn * sn + cn * cn - 1.0) < 1e-11
        assert abs(dn * dn + m * sn * sn - 1.0) < 1e-11

    def test_against_scipy(self):
        from scipy import special

        rng = np.random.default_rng(3)
        for _ in range(300):
            m = rng.uniform(1e-3, 0.999)
            x = rng.uniform(-30.0, 30.0)
            sn, cn, dn = elliptic.jacobi_sn_cn_dn(x, m)
            s, c, d, _ = special.ellipj(x, m)
            assert abs(sn - s) < 1e-11
            assert abs(cn - c) < 1e-11
            assert abs(dn - d) < 1e-11

    def test_half_period_shift(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            m = rng.uniform(0.05, 0.95)
            x = rng.uniform(-10.0, 10.0)
            K = elliptic.complete_K(m)
            sn0, _, _ = elliptic.jacobi_sn_cn_dn(x, m)
            sn2, _, _ = elliptic.jacobi_sn_cn_dn(x + 2 * K, m)
            assert sn2 == pytest.approx(-sn0, abs=1e-10)
            assert sn2 * sn2 == pytest.approx(sn0 * sn0, abs=1e-10)

    def test_vectorized_matches_scalar(self):
        xs = np.linspace(-3.0, 7.0, 17)
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(xs, 0.6)
        for i, x in enumerate(xs):
            s, c, d = elliptic.jacobi_sn_cn_dn(float(x), 0.6)
            assert (sn[i], cn[i], dn[i]) == (s, c, d)


class TestMeanM:
    def test_small_m_limit(self):
        # sn degenerates to sin whose squared mean is 1/2; K - E cancels
        # catastrophically below this scale
        assert elliptic.mean_M(1e-7) == pytest.approx(0.5, abs=1e-7)

    def test_root_of_speed_denominator(self):
        m = 0.961
        assert abs(1 + m - 3 * m * elliptic.mean_M(m)) < 5e-3

    def test_matches_quadrature_average(self):
        m = 0.5
        K = elliptic.complete_K(m)
        x = 2 * K * np.arange(4096) / 4096
        sn, _, _ = elliptic.jacobi_sn_cn_dn(x, m)
        assert elliptic.mean_M(m) == pytest.approx(np.mean(sn**2), abs=1e-10)

    def test_range_and_monotonicity(self):
        grid = np.linspace(0.01, 0.99, 25)
        values = np.array([elliptic.mean_M(m) for m in grid])
        assert np.all(values > 0.5) and np.all(values < 1.0)
        assert np.all(np.diff(values) > 0)


class TestSnSquaredSeries:
    def test_constant_term_is_mean(self):
        series = elliptic.sn2_fourier(0.37, 32)
        assert series.mean == elliptic.mean_M(0.37)

    def test_pointwise_against_direct(self):
        m = 0.9568
        series = elliptic.sn2_fourier(m, 64)
        x = np.linspace(0.0, 2 * series.K, 512)
        direct = elliptic.sn_squared(x, m)
        assert np.max(np.abs(series.evaluate(x) - direct)) < 1e-9

    @pytest.mark.parametrize("m", [0.1, 0.5, 0.9, 0.99])
    def test_default_truncation_accuracy(self, m):
        series = elliptic.sn2_fourier(m, 64)
        x = np.linspace(0.0, 2 * series.K, 200)
        assert np.max(np.abs(series.evaluate(x) - elliptic.sn_squared(x, m))) < 1e-10

    def test_value_at_zero(self):
        series = elliptic.sn2_fourier(0.6, 64)
        assert series.evaluate(np.array([0.0]))[0] == pytest.approx(0.0, abs=1e-12)

    def test_nome_at_half(self):
        # K and its complement coincide at m = 1/2
        assert elliptic.nome(0.5) == pytest.approx(math.exp(-math.pi), abs=1e-12)

    def test_truncation_warning_flag(self):
        assert elliptic.sn2_fourier(0.99, 4).truncation_warning
        assert not elliptic.sn2_fourier(0.5, 64).truncation_warning

    def test_error_decreases_with_terms(self):
        m = 0.98
        x = np.linspace(0.0, 2 * elliptic.complete_K(m), 64)
        direct = elliptic.sn_squared(x, m)
        errors = []
        for n in (2, 4, 8, 16):
            series = elliptic.sn2_fourier(m, n)
            errors.append(np.max(np.abs(series.evaluate(x) - direct)))
        assert all(b < a for a, b in zip(errors, errors[1:]))

    def test_coefficient_decay(self):
        coef = elliptic.sn2_fourier(0.8, 48).cosine_coefficients
        tail = np.abs(coef[4:])
        assert np.all(np.diff(tail) < 0)

    def test_exponential_coefficients_roundtrip(self):
        series = elliptic.sn2_fourier(0.4, 32)
        coeffs = series.exponential_coefficients(32)
        x = np.linspace(0.0, 2 * series.K, 97)
        k = np.arange(-32, 33)
        rebuilt = (np.exp(1j * np.pi * np.outer(x, k) / series.K) @ coeffs).real
        assert np.max(np.abs(rebuilt - series.evaluate(x))) < 1e-12

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            elliptic.sn2_fourier(0.5, 0)
        with pytest.raises(DomainError):
            elliptic.sn2_fourier(1.2, 8)
