"""Periodic traveling waves of the regularized Boussinesq system.

A wave is parametrized by the ordered roots (alpha, beta, gamma) of the
cubic E - V(u), restricted to the admissible wedge

    alpha < beta < gamma,   alpha + beta + gamma > -3/2,

and takes the closed form u(x) = gamma - (gamma - beta) sn^2(a x, sqrt(m)).
The second component solves (1 - d^2/dx^2)^{-1} v + c u + b2 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import elliptic
from .errors import DomainError, NumericalError
from .fourier import PeriodicProfile, sample_grid, coefficients_from_samples

RESIDUAL_TOL = 1e-8
_RESIDUAL_GRID = 2048


@dataclass(frozen=True)
class RBouRoots:
    """Ordered roots of E - V; membership in the admissible wedge is checked."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.alpha, self.beta, self.gamma))):
            raise DomainError("roots must be finite")
        if not self.alpha < self.beta:
            raise DomainError(
                f"roots must satisfy alpha < beta, got alpha={self.alpha}, beta={self.beta}"
            )
        if not self.beta < self.gamma:
            raise DomainError(
                f"roots must satisfy beta < gamma, got beta={self.beta}, gamma={self.gamma}"
            )
        if not self.alpha + self.beta + self.gamma > -1.5:
            raise DomainError(
                "roots must satisfy alpha + beta + gamma > -3/2, got sum "
                f"{self.alpha + self.beta + self.gamma}"
            )

    @property
    def sum(self):
        return self.alpha + self.beta + self.gamma


@dataclass(frozen=True, eq=False)
class RBouWave:
    """Wave u(x) = gamma - (gamma - beta) sn^2(a x, sqrt(m)) with derived constants."""

    roots: RBouRoots
    c: float
    E: float
    b_combo: float  # the quadrature combination b1 - b2 c
    m: float
    a: float
    T: float
    K: float
    residual: float

    @property
    def model(self):
        return "rbou"

    def u(self, x):
        sn2 = elliptic.sn_squared(self.a * np.asarray(x, dtype=float), self.m)
        return self.roots.gamma - (self.roots.gamma - self.roots.beta) * sn2

    def u_xx(self, x):
        d2 = elliptic.sn_squared_deriv2(self.a * np.asarray(x, dtype=float), self.m)
        return -(self.roots.gamma - self.roots.beta) * self.a**2 * d2

    def fourier_coefficients(self, n_max):
        """Centered coefficients of u on e^{2 pi i k x / T}, analytic sn^2 series."""
        depth = self.roots.gamma - self.roots.beta
        series = elliptic.sn2_fourier(self.m, n_terms=max(n_max, 1))
        coeffs = np.zeros(2 * n_max + 1)
        coeffs[n_max] = self.roots.gamma - depth * series.mean
        upto = min(n_max, series.n_terms)
        half = -0.5 * depth * series.cosine_coefficients[:upto]
        coeffs[n_max + 1 : n_max + 1 + upto] = half
        coeffs[n_max - upto : n_max] = half[::-1]
        return coeffs

    def profile(self, n_max=None):
        if n_max is None:
            n_max = elliptic.sn2_terms_for_accuracy(self.m)
        return PeriodicProfile(self.T, self.fourier_coefficients(n_max).astype(complex))


def make_rbou_wave(roots, speed_sign=1):
    """Construct the wave for roots in the admissible wedge.

    speed_sign selects the branch of c = +-sqrt(1 + 2(alpha+beta+gamma)/3);
    the profile itself depends on the roots only.
    """
    if not isinstance(roots, RBouRoots):
        roots = RBouRoots(*roots)
    if speed_sign not in (1, -1):
        raise DomainError(f"speed_sign must be +1 or -1, got {speed_sign!r}")

    s = roots.sum
    c = speed_sign * math.sqrt(1.0 + 2.0 * s / 3.0)
    E = roots.alpha * roots.beta * roots.gamma / 3.0
    b_combo = (
        roots.alpha * roots.beta + roots.beta * roots.gamma + roots.alpha * roots.gamma
    ) / 3.0
    m = (roots.gamma - roots.beta) / (roots.gamma - roots.alpha)
    a = math.sqrt((roots.gamma - roots.alpha) / (4.0 * s + 6.0))
    K = elliptic.complete_K(m)
    T = 2.0 * K / a

    wave = RBouWave(
        roots=roots, c=c, E=E, b_combo=b_combo, m=m, a=a, T=T, K=K, residual=math.nan
    )
    residual = profile_residual(wave)
    if residual > RESIDUAL_TOL:
        raise NumericalError(
            f"profile equation residual {residual:.3e} exceeds {RESIDUAL_TOL:.1e}"
        )
    object.__setattr__(wave, "residual", residual)
    return wave


def profile_residual(wave, n_grid=_RESIDUAL_GRID):
    """Max-norm residual of c^2 u'' + (1 - c^2) u + u^2 + b_combo over a period.

    u'' is evaluated by spectral differentiation of the analytic series.
    """
    x = sample_grid(wave.T, n_grid)
    profile = wave.profile()
    u = profile(x)
    u_xx = profile.derivative(2)(x)
    res = wave.c**2 * u_xx + (1.0 - wave.c**2) * u + u * u + wave.b_combo
    return float(np.max(np.abs(res)))


def rbou_v_profile(wave, b2=0.0):
    """Second component v = (1 - d^2/dx^2)(-c u - b2) as a periodic profile."""
    n_max = elliptic.sn2_terms_for_accuracy(wave.m)
    u_hat = wave.fourier_coefficients(n_max).astype(complex)
    k = np.arange(-n_max, n_max + 1)
    kappa2 = (2.0 * np.pi * k / wave.T) ** 2
    v_hat = -wave.c * (1.0 + kappa2) * u_hat
    v_hat[n_max] -= b2
    return PeriodicProfile(wave.T, v_hat)


def rbou_ell(roots):
    """Spectral offset of the associated three-gap band structure.

    Both closed forms, 6(2 gamma + 1)/(gamma - alpha) and 4 + 4m + 1/a^2,
    are evaluated and must agree to rounding level.
    """
    if not isinstance(roots, RBouRoots):
        roots = RBouRoots(*roots)
    direct = 6.0 * (2.0 * roots.gamma + 1.0) / (roots.gamma - roots.alpha)
    m = (roots.gamma - roots.beta) / (roots.gamma - roots.alpha)
    a2 = (roots.gamma - roots.alpha) / (4.0 * roots.sum + 6.0)
    via_wave = 4.0 + 4.0 * m + 1.0 / a2
    if abs(direct - via_wave) > 1e-12 * max(1.0, abs(direct)):
        raise NumericalError(
            f"closed forms for the spectral offset disagree: {direct} vs {via_wave}"
        )
    return direct


def ode_fourier_coefficients(wave, n_max, n_samples=1024):
    """Coefficients of u by integrating the profile ODE and sampling.

    Independent of the analytic series route: integrates
    u'' = -((1 - c^2) u + u^2 + b_combo) / c^2 from the crest with a
    high-order adaptive method, then applies the FFT to dense samples.
    """
    from scipy.integrate import solve_ivp

    c2 = wave.c**2

    def rhs(x, y):
        u, up = y
        return (up, -((1.0 - c2) * u + u * u + wave.b_combo) / c2)

    x_eval = sample_grid(wave.T, n_samples)
    sol = solve_ivp(
        rhs,
        (0.0, wave.T),
        [wave.roots.gamma, 0.0],
        t_eval=x_eval,
        method="DOP853",
        rtol=1e-12,
        atol=1e-13,
    )
    if not sol.success:
        raise NumericalError(f"profile ODE integration failed: {sol.message}")
    return coefficients_from_samples(sol.y[0], n_max)
