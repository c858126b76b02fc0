"""Jacobi elliptic functions and complete elliptic integrals.

Everything is parametrized by the elliptic parameter ``m`` (the squared
modulus), never by the modulus itself.  K and E are computed by the
arithmetic-geometric mean; sn, cn, dn by the descending Landen
transformation built on the same AGM chain (DLMF 22.20(ii), A&S 16.4),
which is uniformly accurate over m in (0, 1) with a single code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

_AGM_TOL = 4e-16


def _check_m(m):
    if not (0.0 < m < 1.0) or not math.isfinite(m):
        raise DomainError(f"elliptic parameter m must lie strictly in (0, 1), got {m!r}")
    return float(m)


@lru_cache(maxsize=512)
def _agm_chain(m):
    """AGM scale chain (a_n, c_n/a_n) for parameter m, ground up.

    a_0 = 1, b_0 = sqrt(1 - m), c_n = (a_{n-1} - b_{n-1})/2.  Iterates until
    c_n is at rounding level; quadratic convergence keeps the chain short.
    """
    a, b = 1.0, math.sqrt(1.0 - m)
    scales = []
    ratios = []
    previous = math.inf
    for _ in range(64):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        scales.append(a)
        ratios.append(c / a)
        if abs(c) <= _AGM_TOL * a or abs(c) >= previous:
            break
        previous = abs(c)
    else:  # pragma: no cover - AGM always converges in a handful of steps
        raise ArithmeticError("AGM iteration failed to converge")
    return tuple(scales), tuple(ratios)


def complete_K(m):
    """Complete elliptic integral of the first kind, K(sqrt(m))."""
    m = _check_m(m)
    scales, _ = _agm_chain(m)
    return math.pi / (2.0 * scales[-1])


def complete_E(m):
    """Complete elliptic integral of the second kind, E(sqrt(m))."""
    m = _check_m(m)
    # E/K = 1 - sum 2^{n-1} c_n^2 with c_0 = k the modulus (A&S 17.6.4).
    a, b = 1.0, math.sqrt(1.0 - m)
    total = 0.5 * m  # 2^{-1} c_0^2
    power = 0.5
    previous = math.inf
    for _ in range(64):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        power *= 2.0
        total += power * c * c
        if abs(c) <= _AGM_TOL * a or abs(c) >= previous:
            break
        previous = abs(c)
    K = math.pi / (2.0 * a)
    return K * (1.0 - total)


def nome(m):
    """Elliptic nome q = exp(-pi K(sqrt(1-m)) / K(sqrt(m)))."""
    m = _check_m(m)
    return math.exp(-math.pi * complete_K(1.0 - m) / complete_K(m))


def jacobi_sn_cn_dn(x, m):
    """Jacobi sn, cn, dn at argument x and parameter m.

    Accepts scalar or array x; returns a matching triple.  The amplitude is
    recovered by the descending phi recurrence on the AGM chain, after
    reducing x modulo the 4K period.
    """
    m = _check_m(m)
    scales, ratios = _agm_chain(m)
    K = math.pi / (2.0 * scales[-1])

    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    if not np.all(np.isfinite(x_arr)):
        raise DomainError("argument of the Jacobi functions must be finite")

    # reduce to [0, 4K): sn, cn are 4K-periodic and dn is 2K-periodic
    period = 4.0 * K
    u = np.mod(x_arr, period)

    n_steps = len(scales)
    phi = (2.0**n_steps) * scales[-1] * u
    for i in range(n_steps - 1, -1, -1):
        phi = 0.5 * (phi + np.arcsin(np.clip(ratios[i] * np.sin(phi), -1.0, 1.0)))

    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(np.maximum(1.0 - m * sn * sn, 0.0))
    if scalar:
        return float(sn[0]), float(cn[0]), float(dn[0])
    return sn, cn, dn


def sn_squared(x, m):
    """Convenience: sn(x, sqrt(m))**2 evaluated directly."""
    sn, _, _ = jacobi_sn_cn_dn(x, m)
    return sn * sn


def sn_squared_deriv2(x, m):
    """Second derivative of sn^2: 2(cn^2 dn^2 - sn^2 dn^2 - m sn^2 cn^2)."""
    sn, cn, dn = jacobi_sn_cn_dn(x, m)
    sn2, cn2, dn2 = sn * sn, cn * cn, dn * dn
    return 2.0 * (cn2 * dn2 - sn2 * dn2 - m * sn2 * cn2)


def mean_M(m):
    """Mean of sn^2(., sqrt(m)) over its period: (K - E) / (m K)."""
    m = _check_m(m)
    K = complete_K(m)
    return (K - complete_E(m)) / (m * K)


@dataclass(frozen=True)
class SnSquaredSeries:
    """Truncated cosine series of sn^2(x, sqrt(m)).

    sn^2(x) = mean + sum_k coef_k cos(pi k x / K); the mean equals
    (K - E)/(m K) and the coefficients decay like the nome power q^k.
    ``truncation_warning`` is set when the last kept coefficient is still
    above 1e-12, i.e. the tail was not resolved to rounding level.
    """

    m: float
    mean: float
    cosine_coefficients: np.ndarray
    K: float
    truncation_warning: bool

    @property
    def n_terms(self):
        return len(self.cosine_coefficients)

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        k = np.arange(1, self.n_terms + 1)
        phases = np.cos(np.pi * np.multiply.outer(x, k) / self.K)
        return self.mean + phases @ self.cosine_coefficients

    def exponential_coefficients(self, n_max):
        """Centered coefficients c_j, |j| <= n_max, of sum c_j e^{i pi j x / K}."""
        coeffs = np.zeros(2 * n_max + 1)
        coeffs[n_max] = self.mean
        upto = min(n_max, self.n_terms)
        half = 0.5 * self.cosine_coefficients[:upto]
        coeffs[n_max + 1 : n_max + 1 + upto] = half
        coeffs[n_max - upto : n_max] = half[::-1]
        return coeffs


def sn2_fourier(m, n_terms=64):
    """Cosine series of sn^2 with coefficients -(2 pi^2 / (m K^2)) k q^k / (1 - q^{2k})."""
    m = _check_m(m)
    if n_terms < 1:
        raise DomainError(f"n_terms must be a positive integer, got {n_terms!r}")
    K = complete_K(m)
    q = nome(m)
    k = np.arange(1, n_terms + 1)
    qk = q**k
    coefficients = -(2.0 * math.pi**2 / (m * K * K)) * k * qk / (1.0 - qk * qk)
    warn = bool(abs(coefficients[-1]) > 1e-12)
    return SnSquaredSeries(
        m=m,
        mean=mean_M(m),
        cosine_coefficients=coefficients,
        K=K,
        truncation_warning=warn,
    )


def sn2_terms_for_accuracy(m, tol=1e-18, minimum=32, cap=2048):
    """Number of series terms needed so the first omitted term is below tol."""
    q = nome(m)
    if q <= 0.0:
        return minimum
    # k q^k < tol, solved crudely via logarithms and clamped
    n = int(math.log(tol) / math.log(q)) + 8
    return max(minimum, min(cap, n))
