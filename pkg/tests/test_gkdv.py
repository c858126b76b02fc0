"""Disk enclosure of the gKdV spectrum."""

import numpy as np
import pytest

from longwave import gkdv, rbou
from longwave.errors import DomainError

COS = np.array([0.5, 0.0, 0.5])


class TestDiskFamily:
    def test_zero_profile_degenerate_disks(self):
        family = gkdv.gkdv_disks(np.array([0.0]), c=1.0, K_max=8)
        assert family.fourier_l1 == 0.0
        assert np.all(family.radii == 0.0)
        assert family.k0 == 0

    def test_centers_purely_imaginary_and_odd(self):
        family = gkdv.gkdv_disks(COS, c=1.0, K_max=8)
        assert np.all(family.centers.real == 0.0)
        c3, _ = family.disk_of(3)
        c3m, _ = family.disk_of(-3)
        assert c3m == -c3
        assert c3m == np.conj(c3)

    def test_radius_linear_in_k(self):
        family = gkdv.gkdv_disks(COS, c=1.0, K_max=8)
        _, r2 = family.disk_of(2)
        _, r4 = family.disk_of(4)
        assert r4 == 2 * r2

    def test_cosine_profile_k0(self):
        family = gkdv.gkdv_disks(COS, c=1.0, K_max=16)
        assert family.k0 == 0  # gaps 3k^2+3k+2 beat radii 2k+1 from the start

    def test_excluded_speed(self):
        with pytest.raises(DomainError):
            gkdv.gkdv_disks(COS, c=-1.0, K_max=8)


class TestEnclosureCheck:
    def test_cosine_profile(self):
        report = gkdv.gkdv_check(COS, c=1.0, Nk=64, K_report=16)
        assert report.passed
        assert report.failures == ()

    def test_zero_profile_exact(self):
        report = gkdv.gkdv_check(np.array([0.0]), c=1.0, Nk=32, K_report=8)
        assert report.passed

    def test_cnoidal_profile(self):
        wave = rbou.make_rbou_wave((-0.2, 0.1, 0.6))
        coeffs = wave.fourier_coefficients(40)  # read as a 2 pi periodic profile
        report = gkdv.gkdv_check(coeffs, c=1.0, Nk=64, K_report=12)
        assert report.passed

    def test_real_axis_symmetry(self):
        report = gkdv.gkdv_check(COS, c=1.0, Nk=32, K_report=8)
        lam = report.eigenvalues
        for ev in lam[:: max(1, len(lam) // 40)]:
            assert np.min(np.abs(lam - np.conj(ev))) < 1e-8

    def test_truncation_robustness(self):
        r64 = gkdv.gkdv_check(COS, c=1.0, Nk=64, K_report=12)
        r96 = gkdv.gkdv_check(COS, c=1.0, Nk=96, K_report=12)
        assert r64.passed == r96.passed
        assert r64.k0 == r96.k0

    def test_quasi_periodic_shift(self):
        report = gkdv.gkdv_check(COS, c=1.0, Nk=64, K_report=12, tau=0.25)
        assert report.passed

    def test_report_bound_guard(self):
        with pytest.raises(DomainError):
            gkdv.gkdv_check(COS, c=1.0, Nk=32, K_report=30)
