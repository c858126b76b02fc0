"""Periodic traveling waves of the coupled BBM system.

Waves are parametrized by the speed c != 0 and two quadrature constants
(b1, b2).  The profile obeys (u')^2 = 2 Q(u) for the cubic

    Q(u) = -(3/5c) u^3 + (9/5) u^2
           - ((144 c^2 + 25 b2 - 900)/(330 c)) u
           - (1008 c^3 - 6300 c + 275 b1 - 100 b2 c)/(1320 c),

which has three simple real roots exactly when its discriminant is
positive; admissible speeds are the c for which that holds.  Shifting
u = v + c kills the quadratic term, and the orbit is a cn^2 wave whose
elliptic parameter solves a scalar equation in m.  The second component
eta follows from the u-equation by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import elliptic
from .errors import DomainError, InconsistencyError, NoCnoidalWaveError, NumericalError
from .fourier import sample_grid, coefficients_from_samples

RESIDUAL_TOL = 1e-8
QUARTIC_TOL = 1e-6
MEAN_TOL = 1e-10

#: b2 below which the two-interval region degenerates to "every c != 0 works"
B2_CNONZERO = 9.0 / 5.0 * (20.0 - 11.0 * math.sqrt(11.0))


@dataclass(frozen=True)
class BBMParams:
    c: float
    b1: float
    b2: float

    def __post_init__(self):
        if self.c == 0.0 or not math.isfinite(self.c):
            raise DomainError(f"wave speed must be finite and nonzero, got {self.c!r}")
        if not (math.isfinite(self.b1) and math.isfinite(self.b2)):
            raise DomainError("quadrature constants must be finite")


def q_coefficients(params):
    """Coefficients (q3, q2, q1, q0) of the quadrature cubic Q."""
    c, b1, b2 = params.c, params.b1, params.b2
    return (
        -3.0 / (5.0 * c),
        9.0 / 5.0,
        -(144.0 * c * c + 25.0 * b2 - 900.0) / (330.0 * c),
        -(1008.0 * c**3 - 6300.0 * c + 275.0 * b1 - 100.0 * b2 * c) / (1320.0 * c),
    )


def bbm_Q(u, params):
    """Quadrature cubic Q(u); (u')^2 = 2 Q(u) along the wave."""
    if not isinstance(params, BBMParams):
        params = BBMParams(*params)
    q3, q2, q1, q0 = q_coefficients(params)
    u = np.asarray(u, dtype=float)
    return ((q3 * u + q2) * u + q1) * u + q0


def bbm_Q_prime(u, params):
    if not isinstance(params, BBMParams):
        params = BBMParams(*params)
    q3, q2, q1, _ = q_coefficients(params)
    u = np.asarray(u, dtype=float)
    return (3.0 * q3 * u + 2.0 * q2) * u + q1


def bbm_discriminant(params):
    """Discriminant of Q from the standard cubic formula.

    Positive iff Q has three simple real roots, i.e. iff a periodic orbit
    exists at this speed.
    """
    if not isinstance(params, BBMParams):
        params = BBMParams(*params)
    a, b, c_, d = q_coefficients(params)
    return (
        18.0 * a * b * c_ * d
        - 4.0 * b**3 * d
        + b * b * c_ * c_
        - 4.0 * a * c_**3
        - 27.0 * a * a * d * d
    )


def bbm_instability_threshold(c):
    """b2 threshold -(144/1213)(2 + c^2) for short-wave spectral instability."""
    if c == 0.0 or not math.isfinite(c):
        raise DomainError(f"wave speed must be finite and nonzero, got {c!r}")
    return -(144.0 / 1213.0) * (2.0 + c * c)


def mean_one_plus_eta(params):
    """Closed form (4/33)(2 + c^2) + (1213/1188) b2 for the mean of 1 + eta."""
    if not isinstance(params, BBMParams):
        params = BBMParams(*params)
    return 4.0 / 33.0 * (2.0 + params.c**2) + 1213.0 / 1188.0 * params.b2


# ---------------------------------------------------------------------------
# admissible speed intervals and the (b1, b2) region diagram


@dataclass(frozen=True)
class SpeedIntervals:
    """Maximal open intervals of admissible c (disc > 0), zero excluded."""

    intervals: tuple
    region_label: str

    @property
    def count(self):
        return len(self.intervals)

    def finite_endpoints(self):
        out = []
        for lo, hi in self.intervals:
            if math.isfinite(lo):
                out.append(lo)
            if math.isfinite(hi):
                out.append(hi)
        return sorted(out)

    def contains(self, c):
        return any(lo < c < hi for lo, hi in self.intervals)


def _disc_at(c, b1, b2):
    return bbm_discriminant(BBMParams(c, b1, b2))


def _scan_halfline(b1, b2, sign, refine_tol):
    """Admissible intervals on one side of c = 0 by sign-change bracketing."""
    grid = np.concatenate([np.logspace(-3, 3, 400), np.linspace(1e-3, 10.0, 401)])
    grid = np.unique(grid) * sign
    grid = grid[np.argsort(np.abs(grid))]
    values = np.array([_disc_at(c, b1, b2) for c in grid])

    roots = []
    for c0, c1, v0, v1 in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if v0 == 0.0:
            roots.append(c0)
            continue
        if v0 * v1 < 0.0:
            lo, hi = c0, c1
            flo = v0
            while abs(hi - lo) > refine_tol * max(1.0, abs(hi)):
                mid = 0.5 * (lo + hi)
                fm = _disc_at(mid, b1, b2)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(0.5 * (lo + hi))

    # walk the half line; disc > 0 at the far tail for any (b1, b2)
    edges = [0.0] + roots + [sign * math.inf]
    intervals = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if math.isfinite(hi):
            mid = 0.5 * (lo + hi) if lo != 0.0 else sign * min(0.5 * abs(hi), 1e-4)
        else:
            mid = lo + sign * max(1.0, 2.0 * abs(lo)) if lo != 0.0 else sign * 1e4
        if _disc_at(mid, b1, b2) > 0.0:
            intervals.append((min(lo, hi), max(lo, hi)))
    return intervals


def admissible_speed_intervals(b1, b2, refine_tol=1e-12):
    """All maximal admissible-speed intervals, with the region label.

    The label comes from the closed-form region curves; an inconsistent
    interval count raises, since the two routes are independent.
    """
    neg = _scan_halfline(b1, b2, -1.0, refine_tol)
    pos = _scan_halfline(b1, b2, +1.0, refine_tol)
    intervals = tuple(sorted(neg + pos))
    if len(intervals) < 2:
        raise NumericalError(
            f"interval scan found {len(intervals)} admissible intervals at "
            f"(b1, b2) = ({b1}, {b2}); at least the two unbounded tails must exist"
        )
    label = region_classify(b1, b2)
    if label.isdigit() and int(label) != len(intervals):
        raise InconsistencyError(
            f"region label {label} does not match {len(intervals)} intervals "
            f"at (b1, b2) = ({b1}, {b2})"
        )
    if label == "c!=0":
        finite = [e for iv in intervals for e in iv if math.isfinite(e) and e != 0.0]
        if len(intervals) != 2 or finite:
            raise InconsistencyError(
                f"label c!=0 but intervals are {intervals} at (b1, b2) = ({b1}, {b2})"
            )
    return SpeedIntervals(intervals=intervals, region_label=label)


def _curve1(b2):
    """Interval endpoint crosses c = 0 along b1^2 = (800/323433)(36 - b2)^3."""
    return 800.0 / 323433.0 * (36.0 - b2) ** 3


def _curve2(b2):
    """Tangency curve of the discriminant (double root at real nonzero c)."""
    s = 25.0 * b2 * b2 - 1800.0 * b2 + 355833.0
    return (
        16.0
        / 1617165.0
        * (
            -125.0 * b2**3
            + 13500.0 * b2 * b2
            + 4365495.0 * b2
            - 168821820.0
            + math.sqrt(s) ** 3
        )
    )


def _curve3(b2):
    """Second tangency branch, b1^2 = 72 b2 - 2592 (live for b2 > 36)."""
    return 72.0 * b2 - 2592.0


def region_classify(b1, b2, boundary_tol=1e-9):
    """Region of the (b1, b2) plane by the closed-form boundary curves.

    Returns "4", "3", "2", or "c!=0" (only c = 0 inadmissible); points
    within boundary_tol of a curve return "boundary".
    """
    t = b1 * b1
    c1 = _curve1(b2) if b2 <= 36.0 else -math.inf
    c2 = _curve2(b2)
    c3 = _curve3(b2) if b2 > 36.0 else -math.inf

    scale = max(1.0, abs(t))
    for curve in (c1, c2, c3):
        if math.isfinite(curve) and abs(t - curve) <= boundary_tol * max(scale, abs(curve)):
            return "boundary"

    in1 = t < c1
    in2 = t < c2
    in3 = t < c3
    if in2 and b2 < B2_CNONZERO:
        return "c!=0"
    if in1 and in2:
        return "4"
    if in1 != in2:
        return "2" if in3 else "3"
    return "2"


# ---------------------------------------------------------------------------
# wave construction


@dataclass(frozen=True, eq=False)
class BBMWave:
    """cn^2 wave u = c + u0((2m - 1)/3 - m cn^2(a x)) and its eta component."""

    params: BBMParams
    m: float
    a: float
    u0: float
    T: float
    K: float
    alpha: tuple  # (alpha3, alpha1, alpha0) of the depressed cubic
    u_mean: float
    one_plus_eta_mean: float
    residual: float

    @property
    def model(self):
        return "bbm"

    @property
    def c(self):
        return self.params.c

    def u(self, x):
        sn2 = elliptic.sn_squared(self.a * np.asarray(x, dtype=float), self.m)
        cn2 = 1.0 - sn2
        return self.params.c + self.u0 * ((2.0 * self.m - 1.0) / 3.0 - self.m * cn2)

    def u_x(self, x):
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(self.a * np.asarray(x, dtype=float), self.m)
        return 2.0 * self.u0 * self.m * self.a * sn * cn * dn

    def u_xx(self, x):
        d2 = elliptic.sn_squared_deriv2(self.a * np.asarray(x, dtype=float), self.m)
        return self.u0 * self.m * self.a**2 * d2

    def eta(self, x):
        """Second component from the u-equation: b2 + c u - (c/6) u'' - u^2/2."""
        u = self.u(x)
        c = self.params.c
        return self.params.b2 + c * u - c / 6.0 * self.u_xx(x) - 0.5 * u * u

    def fourier_coefficients(self, n_max):
        """Centered coefficients of u via the sn^2 cosine series."""
        series = elliptic.sn2_fourier(self.m, n_terms=max(n_max, 1))
        coeffs = np.zeros(2 * n_max + 1)
        coeffs[n_max] = (
            self.params.c
            - self.u0 * (self.m + 1.0) / 3.0
            + self.u0 * self.m * series.mean
        )
        upto = min(n_max, series.n_terms)
        half = 0.5 * self.u0 * self.m * series.cosine_coefficients[:upto]
        coeffs[n_max + 1 : n_max + 1 + upto] = half
        coeffs[n_max - upto : n_max] = half[::-1]
        return coeffs

    def eta_fourier_coefficients(self, n_max, n_samples=2048):
        """Centered coefficients of eta from dense analytic samples."""
        x = sample_grid(self.T, n_samples)
        return coefficients_from_samples(self.eta(x), n_max)


def _solve_branch_m(ratio, alpha0, tol=1e-12):
    """Invert -(2 - 3m - 3m^2 + 2m^3)^2 / (27 (1 - m + m^2)^3) = ratio.

    The left side rises from -4/27 at m = 0 to 0 at m = 1/2, then falls
    back to -4/27 at m = 1.  Exactly one of the two preimages makes the
    scaling a real: the branch m > 1/2 when alpha0 > 0, m < 1/2 otherwise.
    """

    def lhs(m):
        return -((2.0 - 3.0 * m - 3.0 * m * m + 2.0 * m**3) ** 2) / (
            27.0 * (1.0 - m + m * m) ** 3
        )

    if alpha0 > 0.0:
        lo, hi = 0.5, 1.0 - 1e-15  # lhs decreasing on this branch
        increasing = False
    else:
        lo, hi = 1e-15, 0.5
        increasing = True
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (lhs(mid) < ratio) == increasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def make_bbm_wave(params):
    """Construct the cn^2 wave at (c, b1, b2) with admissible speed."""
    if not isinstance(params, BBMParams):
        params = BBMParams(*params)
    disc = bbm_discriminant(params)
    if disc <= 0.0:
        raise DomainError(
            f"discriminant {disc:.6e} is not positive at (c, b1, b2) = "
            f"({params.c}, {params.b1}, {params.b2}); no periodic orbit"
        )
    c = params.c
    # depressed cubic in v = u - c: (v')^2 = alpha3 v^3 + alpha1 v + alpha0
    alpha3 = -6.0 / (5.0 * c)
    alpha1 = 2.0 * bbm_Q_prime(c, params)
    alpha0 = 2.0 * bbm_Q(c, params)
    ratio = alpha0 * alpha0 * alpha3 / alpha1**3
    if not (-4.0 / 27.0 < ratio < 0.0):
        raise NoCnoidalWaveError(
            f"alpha0^2 alpha3 / alpha1^3 = {ratio} lies outside (-4/27, 0); "
            "no cnoidal branch at these parameters"
        )

    m = _solve_branch_m(ratio, alpha0)
    poly = 2.0 - 3.0 * m - 3.0 * m * m + 2.0 * m**3
    u0 = 9.0 * alpha0 * (1.0 - m + m * m) / (alpha1 * poly)
    a_sq = alpha3 * u0 / 4.0
    if a_sq <= 0.0:
        raise NumericalError(
            f"branch selection produced a^2 = {a_sq} <= 0 at m = {m}; "
            "the scaling must be real"
        )
    a = math.sqrt(a_sq)
    K = elliptic.complete_K(m)
    T = 2.0 * K / a

    wave = BBMWave(
        params=params,
        m=m,
        a=a,
        u0=u0,
        T=T,
        K=K,
        alpha=(alpha3, alpha1, alpha0),
        u_mean=math.nan,
        one_plus_eta_mean=math.nan,
        residual=math.nan,
    )

    x = sample_grid(T, 4096)
    u = wave.u(x)
    u_mean = float(np.mean(u))
    one_plus_eta = 1.0 + wave.eta(x)
    eta_mean = float(np.mean(one_plus_eta))

    v = u - c
    res = wave.u_x(x) ** 2 - (alpha3 * v**3 + alpha1 * v + alpha0)
    residual = float(np.max(np.abs(res)))
    if residual > RESIDUAL_TOL:
        raise NumericalError(
            f"quadrature residual {residual:.3e} exceeds {RESIDUAL_TOL:.1e}"
        )
    closed = mean_one_plus_eta(params)
    if abs(eta_mean - closed) > MEAN_TOL * max(1.0, abs(closed)):
        raise InconsistencyError(
            f"quadrature mean of 1 + eta = {eta_mean} disagrees with the "
            f"closed form {closed}"
        )

    object.__setattr__(wave, "u_mean", u_mean)
    object.__setattr__(wave, "one_plus_eta_mean", eta_mean)
    object.__setattr__(wave, "residual", residual)
    return wave


def quartic_residual(wave, n_grid=512):
    """Residual of the fourth-order profile equation obtained by eliminating eta.

    With P = Q' and (u')^2 = 2Q the equation reads
    c^2 u'''' + (u - c)(12 c u'' + 18 u^2 - 36 c u + b2) + 6 c (u')^2
    - 36 u + b1 = 0.
    """
    params = wave.params
    c = params.c
    x = sample_grid(wave.T, n_grid)
    u = wave.u(x)
    up2 = wave.u_x(x) ** 2
    upp = wave.u_xx(x)
    q3, q2, q1, _ = q_coefficients(params)
    # u'''' = 2 P'' Q + P' P with P = Q'
    P = bbm_Q_prime(u, params)
    Pp = 6.0 * q3 * u + 2.0 * q2
    u4 = 2.0 * (6.0 * q3) * bbm_Q(u, params) + Pp * P
    res = (
        c * c * u4
        + (u - c) * (12.0 * c * upp + 18.0 * u * u - 36.0 * c * u + params.b2)
        + 6.0 * c * up2
        - 36.0 * u
        + params.b1
    )
    return float(np.max(np.abs(res)))


def ode_fourier_coefficients(wave, n_max, n_samples=1024):
    """Coefficients of u by integrating u'' = Q'(u) from the crest."""
    from scipy.integrate import solve_ivp

    params = wave.params

    def rhs(x, y):
        return (y[1], bbm_Q_prime(y[0], params))

    u_at_0 = float(wave.u(0.0))
    x_eval = sample_grid(wave.T, n_samples)
    sol = solve_ivp(
        rhs,
        (0.0, wave.T),
        [u_at_0, 0.0],
        t_eval=x_eval,
        method="DOP853",
        rtol=1e-12,
        atol=1e-13,
    )
    if not sol.success:
        raise NumericalError(f"profile ODE integration failed: {sol.message}")
    return coefficients_from_samples(sol.y[0], n_max)
