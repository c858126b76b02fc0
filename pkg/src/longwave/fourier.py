"""Periodic profiles as truncated Fourier series, plus Toeplitz helpers.

A profile is stored as centered exponential coefficients c_k, |k| <= N, of
sum_k c_k e^{2 pi i k x / T}.  Multiplication by such a profile acts on the
truncated Fourier basis as a Toeplitz matrix of the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class PeriodicProfile:
    """Real periodic function represented by centered Fourier coefficients."""

    period: float
    coefficients: np.ndarray  # complex, index k = -N..N at offset N

    @property
    def n_modes(self):
        return (len(self.coefficients) - 1) // 2

    @property
    def mean(self):
        return float(self.coefficients[self.n_modes].real)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = np.arange(-self.n_modes, self.n_modes + 1)
        phases = np.exp(2j * np.pi * np.multiply.outer(x, k) / self.period)
        values = phases @ self.coefficients
        return values.real

    def derivative(self, order=1):
        k = np.arange(-self.n_modes, self.n_modes + 1)
        factor = (2j * np.pi * k / self.period) ** order
        return PeriodicProfile(self.period, self.coefficients * factor)


def toeplitz_multiplication_matrix(coefficients, n):
    """(2n+1)^2 matrix of multiplication by the profile on modes -n..n.

    ``coefficients`` are centered with at least 2n sidebands, so every
    difference k - j, |k - j| <= 2n, is available.
    """
    coefficients = np.asarray(coefficients)
    offset = (len(coefficients) - 1) // 2
    if offset < 2 * n:
        raise ValueError(f"need coefficients out to |k| = {2 * n}, have {offset}")
    center = offset
    col = coefficients[center : center + 2 * n + 1]
    row = coefficients[center : center - 2 * n - 1 if center > 2 * n else None : -1]
    return scipy.linalg.toeplitz(col, row)


def coefficients_from_samples(samples, n_max=None):
    """Centered Fourier coefficients from uniform samples over one period."""
    samples = np.asarray(samples)
    n = len(samples)
    spectrum = np.fft.fft(samples) / n
    centered = np.fft.fftshift(spectrum)
    offset = n // 2
    if n_max is None:
        n_max = min(offset, (n - 1) // 2)
    return centered[offset - n_max : offset + n_max + 1]


def sample_grid(period, n):
    """Uniform grid of n points on [0, period), trapezoid-exact for smooth data."""
    return period * np.arange(n) / n
