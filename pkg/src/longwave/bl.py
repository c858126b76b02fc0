"""Mean-zero periodic traveling waves of the Benney-Luke equation.

The wave component v = u_x is parametrized by the elliptic parameter m and
the scaling a > 0:

    v(x) = A (M(m) - sn^2(a x, sqrt(m))),   A = 4 m a^2 c,

with M(m) = (K - E)/(m K) the mean of sn^2, so v has mean zero by
construction and crests at x = 0.  The wave speed c = 1/sqrt(1 + 4(1 + m - 3 m M(m)) a^2) is
real for every a when m <= m0, where m0 is the unique root of
1 + m - 3 m M(m); for m > m0 the scaling must stay below
1/(2 sqrt(3 m M - m - 1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import elliptic
from .errors import DomainError, NumericalError
from .fourier import PeriodicProfile, sample_grid, coefficients_from_samples

RESIDUAL_TOL = 1e-8
MEAN_TOL = 1e-10
_RESIDUAL_GRID = 2048


@lru_cache(maxsize=1)
def bl_m0():
    """Root of 1 + m - 3 m M(m) in (0, 1), by bisection to 1e-12."""

    def f(m):
        return 1.0 + m - 3.0 * m * elliptic.mean_M(m)

    lo, hi = 0.5, 0.999999
    if not (f(lo) > 0.0 > f(hi)):  # pragma: no cover - fixed analytic bracket
        raise NumericalError("bisection bracket for m0 lost its sign change")
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _a_bound(m):
    """Upper bound on a when m exceeds m0 (keeps the wave speed real)."""
    M = elliptic.mean_M(m)
    return 1.0 / (2.0 * math.sqrt(3.0 * m * M - m - 1.0))


@dataclass(frozen=True)
class BLParams:
    """Admissible (m, a) pair for the mean-zero wave family."""

    m: float
    a: float

    def __post_init__(self):
        if not (0.0 < self.m < 1.0) or not math.isfinite(self.m):
            raise DomainError(f"m must lie strictly in (0, 1), got {self.m!r}")
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise DomainError(f"a must be positive, got {self.a!r}")
        if self.m > bl_m0():
            bound = _a_bound(self.m)
            if not self.a < bound:
                raise DomainError(
                    f"for m = {self.m} > m0 the scaling must satisfy "
                    f"a < 1/(2 sqrt(3 m M - m - 1)) = {bound}, got a = {self.a}"
                )


@dataclass(frozen=True, eq=False)
class BLWave:
    """Mean-zero wave with derived constants (speed, quadrature constants)."""

    params: BLParams
    c: float
    b: float
    E: float
    T: float
    K: float
    v0_amplitude: float  # prefactor A = 4 m a^2 c
    residual: float

    @property
    def model(self):
        return "bl"

    @property
    def M(self):
        return elliptic.mean_M(self.params.m)

    def v(self, x):
        sn2 = elliptic.sn_squared(self.params.a * np.asarray(x, dtype=float), self.params.m)
        return self.v0_amplitude * (self.M - sn2)

    def v_xx(self, x):
        d2 = elliptic.sn_squared_deriv2(
            self.params.a * np.asarray(x, dtype=float), self.params.m
        )
        return -self.v0_amplitude * self.params.a**2 * d2

    def fourier_coefficients(self, n_max):
        """Centered coefficients of v; the mean term vanishes identically."""
        series = elliptic.sn2_fourier(self.params.m, n_terms=max(n_max, 1))
        coeffs = np.zeros(2 * n_max + 1)
        upto = min(n_max, series.n_terms)
        half = -0.5 * self.v0_amplitude * series.cosine_coefficients[:upto]
        coeffs[n_max + 1 : n_max + 1 + upto] = half
        coeffs[n_max - upto : n_max] = half[::-1]
        return coeffs

    def profile(self, n_max=None):
        if n_max is None:
            n_max = elliptic.sn2_terms_for_accuracy(self.params.m)
        return PeriodicProfile(self.T, self.fourier_coefficients(n_max).astype(complex))


def make_bl_wave(params):
    """Construct the mean-zero wave for admissible (m, a)."""
    if not isinstance(params, BLParams):
        params = BLParams(*params)
    m, a = params.m, params.a
    M = elliptic.mean_M(m)
    K = elliptic.complete_K(m)

    denom = 1.0 + 4.0 * (1.0 + m - 3.0 * m * M) * a * a
    c = 1.0 / math.sqrt(denom)
    A = 4.0 * m * a * a * c
    b = 8.0 * (1.0 - 2.0 * (1.0 + m) * M + 3.0 * m * M * M) * m * a**4 * c**3
    E = 32.0 * (1.0 - M) * (1.0 - m * M) * m * m * M * a**6 * c**4
    T = 2.0 * K / a

    wave = BLWave(
        params=params, c=c, b=b, E=E, T=T, K=K, v0_amplitude=A, residual=math.nan
    )
    residual = profile_residual(wave)
    if residual > RESIDUAL_TOL:
        raise NumericalError(
            f"profile equation residual {residual:.3e} exceeds {RESIDUAL_TOL:.1e}"
        )
    mean = abs(np.mean(wave.v(sample_grid(T, 512))))
    if mean > MEAN_TOL:
        raise NumericalError(f"wave mean {mean:.3e} exceeds {MEAN_TOL:.1e}")
    object.__setattr__(wave, "residual", residual)
    return wave


def profile_residual(wave, n_grid=_RESIDUAL_GRID):
    """Max-norm residual of c^2 v'' + (3c/2) v^2 + (1 - c^2) v + b over a period."""
    x = sample_grid(wave.T, n_grid)
    profile = wave.profile()
    v = profile(x)
    v_xx = profile.derivative(2)(x)
    c = wave.c
    res = c * c * v_xx + 1.5 * c * v * v + (1.0 - c * c) * v + wave.b
    return float(np.max(np.abs(res)))


def bl_ell(params):
    """Spectral offset of the wave's band-structure problem.

    In the scaled variable the short-wave pencil reduces to
    -y'' + 4 m sn^2 y = ell y with ell = 1/a^2 + 4(1 + m - 2 m M(m)); the
    band/gap location of ell classifies the spectrum at infinity.
    """
    if not isinstance(params, BLParams):
        params = BLParams(*params)
    M = elliptic.mean_M(params.m)
    return 1.0 / params.a**2 + 4.0 * (1.0 + params.m - 2.0 * params.m * M)


def ode_fourier_coefficients(wave, n_max, n_samples=1024):
    """Coefficients of v by integrating the profile ODE (series-free route)."""
    from scipy.integrate import solve_ivp

    c2 = wave.c**2

    def rhs(x, y):
        v, vp = y
        return (vp, -(1.5 * wave.c * v * v + (1.0 - c2) * v + wave.b) / c2)

    x_eval = sample_grid(wave.T, n_samples)
    v0 = wave.v0_amplitude * wave.M  # crest of v sits at x = 0
    sol = solve_ivp(
        rhs,
        (0.0, wave.T),
        [v0, 0.0],
        t_eval=x_eval,
        method="DOP853",
        rtol=1e-12,
        atol=1e-13,
    )
    if not sol.success:
        raise NumericalError(f"profile ODE integration failed: {sol.message}")
    return coefficients_from_samples(sol.y[0], n_max)
