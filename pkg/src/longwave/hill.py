"""Hill's-equation machinery: monodromy, band/gap classification, band edges.

Conventions.  A Hill problem is y'' + q(x) y = 0 with T-periodic q.  The
monodromy matrix Y is the fundamental solution over one period; |tr Y| < 2
is elliptic (band, bounded solutions), |tr Y| > 2 hyperbolic (gap, growth
rate sigma = log|mu| / T), |tr Y| = 2 parabolic (band edge).  Degenerate
edges at tolerance are reported as Edge and collapse to Band downstream.

The trace test on the physical problem is the authoritative classifier;
closed-form (three-gap) and collocation band edges act as validators and
supply the band/gap index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.integrate import solve_ivp

from . import bl as bl_module
from . import elliptic
from . import rbou as rbou_module
from .errors import (
    DomainError,
    EdgeMismatchError,
    InconsistencyError,
    IntegratorFailureError,
)
from .fourier import toeplitz_multiplication_matrix

EDGE_TOL = 1e-9
DET_TOL = 1e-6
EDGE_TRACE_TOL = 1e-6


@dataclass(frozen=True)
class HillProblem:
    """y'' + q(x) y = 0 with T-periodic coefficient q."""

    q: object  # callable x -> q(x)
    period: float
    label: str = ""


@dataclass(frozen=True)
class Monodromy:
    Y: np.ndarray
    trace: float
    eigenvalue_large: float  # modulus of the larger Floquet multiplier

    @property
    def det(self):
        return float(np.linalg.det(self.Y))


@dataclass(frozen=True)
class BandGapClass:
    kind: str  # "band" | "gap" | "edge"
    sigma: float  # Lyapunov exponent, > 0 iff kind == "gap"
    trace: float
    tolerance_used: float

    @property
    def is_gap(self):
        return self.kind == "gap"


def monodromy(problem, rtol=1e-12, atol=1e-14):
    """Fundamental solution over one period, integrated as a 4-vector.

    Columns start from (1, 0) and (0, 1); det Y = 1 (Wronskian) is the
    integrator quality gate.
    """

    def rhs(x, y):
        qx = problem.q(x)
        return (y[1], -qx * y[0], y[3], -qx * y[2])

    sol = solve_ivp(
        rhs,
        (0.0, problem.period),
        [1.0, 0.0, 0.0, 1.0],
        method="DOP853",
        rtol=rtol,
        atol=atol,
        dense_output=False,
    )
    if not sol.success:
        raise IntegratorFailureError(f"monodromy integration failed: {sol.message}")
    y1, y1p, y2, y2p = sol.y[:, -1]
    Y = np.array([[y1, y2], [y1p, y2p]])
    det = y1 * y2p - y2 * y1p
    # the Wronskian defect cannot beat rounding of the det cancellation,
    # which scales with ||Y||^2 once solutions grow exponentially
    gate = max(DET_TOL, 1e-13 * float(np.sum(Y * Y)))
    if abs(det - 1.0) > gate:
        raise IntegratorFailureError(
            f"monodromy determinant {det} deviates from 1 beyond {gate:.1e}"
        )
    trace = y1 + y2p
    if abs(trace) > 2.0:
        mu = 0.5 * (abs(trace) + math.sqrt(trace * trace - 4.0))
    else:
        mu = 1.0  # both multipliers on the unit circle
    return Monodromy(Y=Y, trace=float(trace), eigenvalue_large=float(mu))


def classify(problem, tol=EDGE_TOL, rtol=1e-12, atol=1e-14):
    """Band / gap / edge from the monodromy trace; gaps carry sigma."""
    mono = monodromy(problem, rtol=rtol, atol=atol)
    t = abs(mono.trace)
    if t < 2.0 - tol:
        return BandGapClass("band", 0.0, mono.trace, tol)
    if t > 2.0 + tol:
        sigma = math.log(mono.eigenvalue_large) / problem.period
        return BandGapClass("gap", sigma, mono.trace, tol)
    return BandGapClass("edge", 0.0, mono.trace, tol)


# ---------------------------------------------------------------------------
# physical Hill problems of the wave models


def hill_problem_rbou(wave):
    """c^2 y'' + (1 + 2u) y = 0 posed in the characteristic variable.

    Rescaling x -> |c| x turns the equation into Y'' + (1 + 2u(|c| x)) Y = 0
    with period T/|c|; the trace is unchanged and sigma = log|mu| / period
    is directly the real-part offset of the spectrum at infinity.
    """
    speed = abs(wave.c)

    def q(x):
        return 1.0 + 2.0 * wave.u(speed * x)

    return HillProblem(q=q, period=wave.T / speed, label="rbou")


def hill_problem_bl(wave):
    """c^2 y'' + (1 + c v) y = 0 posed in the characteristic variable."""
    c = wave.c
    speed = abs(c)

    def q(x):
        return 1.0 + c * wave.v(speed * x)

    return HillProblem(q=q, period=wave.T / speed, label="bl")


def lame_problem_rbou(m, ell):
    """y'' + (ell - 12 m sn^2) y = 0 over one period 2K (three-gap family)."""

    def q(x):
        return ell - 12.0 * m * elliptic.sn_squared(x, m)

    return HillProblem(q=q, period=2.0 * elliptic.complete_K(m), label="lame-rbou")


def lame_problem_bl(m, ell):
    """y'' + (ell - 4 m sn^2) y = 0 over one period 2K.

    Hill form of the eigenvalue problem -y'' + 4 m sn^2 y = ell y whose
    band structure classifies the Benney-Luke spectrum at infinity.
    """

    def q(x):
        return ell - 4.0 * m * elliptic.sn_squared(x, m)

    return HillProblem(q=q, period=2.0 * elliptic.complete_K(m), label="lame-bl")


# ---------------------------------------------------------------------------
# closed-form three-gap edges


@dataclass(frozen=True)
class LameEdges:
    """Seven finite band edges of the three-gap problem, ascending order.

    Periodic edges carry trace +2, anti-periodic edges trace -2.  Bands are
    (l1P, l1A), (l2A, l2P), (l3P, l3A), (l4A, inf); the complementary
    intervals are gaps, with (-inf, l1P) counted as the zeroth gap.
    """

    m: float
    l1P: float
    l1A: float
    l2A: float
    l2P: float
    l3P: float
    l3A: float
    l4A: float
    thetas: tuple
    l1A_form: str

    def ordered(self):
        return (self.l1P, self.l1A, self.l2A, self.l2P, self.l3P, self.l3A, self.l4A)

    def locate(self, ell):
        """(kind, index) for ell: gaps 0..3, bands 1..4; band 4 is semi-infinite."""
        l1P, l1A, l2A, l2P, l3P, l3A, l4A = self.ordered()
        if ell < l1P:
            return ("gap", 0)
        if ell < l1A:
            return ("band", 1)
        if ell < l2A:
            return ("gap", 1)
        if ell < l2P:
            return ("band", 2)
        if ell < l3P:
            return ("gap", 2)
        if ell < l3A:
            return ("band", 3)
        if ell < l4A:
            return ("gap", 3)
        return ("band", 4)


_L1A_FORMS = {
    "5+2m-2*theta2": lambda m, t2: 5.0 + 2.0 * m - 2.0 * t2,
    "5+2m-theta2": lambda m, t2: 5.0 + 2.0 * m - t2,
}
_l1a_resolved = None


def _edge_trace(m, ell):
    return monodromy(lame_problem_rbou(m, ell)).trace


def _resolve_l1a_form(m):
    """Pick the anti-periodic first-edge form whose monodromy trace is -2.

    Two candidate closed forms circulate; the validator integrates the
    equation at each candidate and keeps the one that lands on a genuine
    anti-periodic edge.  The decision is global over m and cached.
    """
    global _l1a_resolved
    if _l1a_resolved is not None:
        return _l1a_resolved
    t2 = math.sqrt(4.0 - m + m * m)
    errors = {
        name: abs(_edge_trace(m, form(m, t2)) + 2.0)
        for name, form in _L1A_FORMS.items()
    }
    best = min(errors, key=errors.get)
    if errors[best] > EDGE_TRACE_TOL:
        raise EdgeMismatchError(
            f"neither candidate first anti-periodic edge validates at m={m}: {errors}",
            edge_value=_L1A_FORMS[best](m, t2),
            trace=errors[best],
        )
    _l1a_resolved = best
    return best


def lame_edges_rbou(m, validate=False, l1a_form="auto"):
    """Closed-form edges of y'' + (ell - 12 m sn^2) y = 0.

    With validate=True every edge is cross-checked by the monodromy trace
    (+2 periodic, -2 anti-periodic) to EDGE_TRACE_TOL.
    """
    if not (0.0 < m < 1.0):
        raise DomainError(f"m must lie strictly in (0, 1), got {m!r}")
    theta1 = math.sqrt(1.0 - m + 4.0 * m * m)
    theta2 = math.sqrt(4.0 - m + m * m)
    theta3 = math.sqrt(4.0 - 7.0 * m + 4.0 * m * m)
    if l1a_form == "auto":
        l1a_form = _resolve_l1a_form(m)
    edges = LameEdges(
        m=m,
        l1P=2.0 + 5.0 * m - 2.0 * theta1,
        l1A=_L1A_FORMS[l1a_form](m, theta2),
        l2A=5.0 + 5.0 * m - 2.0 * theta3,
        l2P=4.0 + 4.0 * m,
        l3P=2.0 + 5.0 * m + 2.0 * theta1,
        l3A=5.0 + 2.0 * m + 2.0 * theta2,
        l4A=5.0 + 5.0 * m + 2.0 * theta3,
        thetas=(theta1, theta2, theta3),
        l1A_form=l1a_form,
    )
    values = edges.ordered()
    # strictly increasing for m in (0, 1); gaps close only at rounding level
    # in the degenerate limits, which the tolerance absorbs
    if any(b < a - 1e-12 * max(1.0, abs(a)) for a, b in zip(values, values[1:])):
        raise InconsistencyError(f"band edges are not strictly ordered at m={m}: {values}")
    if validate:
        signs = (2.0, -2.0, -2.0, 2.0, 2.0, -2.0, -2.0)
        for ell, want in zip(values, signs):
            trace = _edge_trace(m, ell)
            if abs(trace - want) > EDGE_TRACE_TOL:
                raise EdgeMismatchError(
                    f"edge {ell} of the three-gap problem at m={m} has trace "
                    f"{trace}, expected {want}",
                    edge_value=ell,
                    trace=trace,
                )
    return edges


def rbou_gap_conditions(m, a):
    """Closed-form gap test: 1/a^2 against the second- and third-gap windows."""
    inv_a2 = 1.0 / (a * a)
    theta1 = math.sqrt(1.0 - m + 4.0 * m * m)
    theta2 = math.sqrt(4.0 - m + m * m)
    theta3 = math.sqrt(4.0 - 7.0 * m + 4.0 * m * m)
    second = inv_a2 < m - 2.0 + 2.0 * theta1
    third = (1.0 - 2.0 * m + 2.0 * theta2) < inv_a2 < (1.0 + m + 2.0 * theta3)
    return second or third


@dataclass(frozen=True)
class RBouClassification:
    bandgap: BandGapClass
    ell: float
    kind: str  # interval location: "band" | "gap"
    index: int
    label: str  # g2, g3, b3, b_inf

    @property
    def sigma(self):
        return self.bandgap.sigma


_RBOU_LABELS = {("gap", 2): "g2", ("gap", 3): "g3", ("band", 3): "b3", ("band", 4): "b_inf"}


def classify_rbou_infinity(roots, tol=EDGE_TOL):
    """Locate the wave's spectral offset among the three-gap intervals.

    The interval location and the trace test of the physical Hill equation
    must agree; a gap result carries sigma from the unscaled problem.
    """
    wave = rbou_module.make_rbou_wave(roots)
    ell = rbou_module.rbou_ell(wave.roots)
    edges = lame_edges_rbou(wave.m)
    kind, index = edges.locate(ell)

    result = classify(hill_problem_rbou(wave), tol=tol)
    trace_kind = "band" if result.kind == "edge" else result.kind
    near_edge = min(abs(ell - e) for e in edges.ordered()) < 1e-7 * max(1.0, abs(ell))
    if trace_kind != kind and not near_edge:
        raise InconsistencyError(
            f"interval location says {kind} {index} but the monodromy trace "
            f"{result.trace} says {trace_kind} for roots {wave.roots}"
        )
    label = _RBOU_LABELS.get((kind, index), f"{kind}{index}")
    return RBouClassification(bandgap=result, ell=ell, kind=kind, index=index, label=label)


# ---------------------------------------------------------------------------
# numerically computed band edges (Benney-Luke family)


def lame_collocation_eigenvalues(m, strength, N, antiperiodic):
    """Eigenvalues of -y'' + strength sn^2 y on [-K, K], Fourier collocation.

    Periodic runs use integer modes k; anti-periodic runs use the
    half-shifted basis e^{i pi (k + 1/2) x / K}.  The multiplication by
    sn^2 is the Toeplitz matrix of its exponential coefficients.  Both
    Lame families used here are of this form: strength 12 m for the
    three-gap problem, 4 m for the Benney-Luke one.
    """
    K = elliptic.complete_K(m)
    series = elliptic.sn2_fourier(m, n_terms=max(2 * N + 8, 64))
    sn2_hat = series.exponential_coefficients(2 * N)
    modes = np.arange(-N, N + 1) + (0.5 if antiperiodic else 0.0)
    kinetic = np.diag((np.pi * modes / K) ** 2)
    matrix = kinetic + strength * toeplitz_multiplication_matrix(sn2_hat, N)
    return np.sort(scipy.linalg.eigvalsh(matrix))


@dataclass(frozen=True)
class BLBandEdges:
    """Leading periodic / anti-periodic eigenvalues, ascending.

    Interlacing p0 < a0 <= a1 < p1 <= p2 < a2 <= a3 < p3 ... defines
    band j as (p_{j-1}, a_{j-1}) for odd j and (a_{j-1}, p_{j-1}) for even
    j, and gap j as the open interval between bands j and j+1; the zeroth
    gap is (-inf, p0).
    """

    m: float
    periodic: np.ndarray
    antiperiodic: np.ndarray

    def interlaced(self, n_edges):
        """Ascending edge sequence p0, a0, a1, p1, p2, a2, a3, p3, ..."""
        out = []
        j = 1
        while len(out) < n_edges:
            lower, upper = self.band_interval(j)
            out.extend((lower, upper))
            j += 1
        return np.array(out[:n_edges])

    def band_interval(self, j):
        if j % 2 == 1:
            return (self.periodic[j - 1], self.antiperiodic[j - 1])
        return (self.antiperiodic[j - 1], self.periodic[j - 1])

    def gap_interval(self, j):
        if j == 0:
            return (-math.inf, self.periodic[0])
        if j % 2 == 1:
            return (self.antiperiodic[j - 1], self.antiperiodic[j])
        return (self.periodic[j - 1], self.periodic[j])

    def locate(self, ell):
        """(kind, index) of ell within the computed range of edges."""
        if ell < self.periodic[0]:
            return ("gap", 0)
        max_bands = min(len(self.periodic), len(self.antiperiodic)) - 1
        for j in range(1, max_bands + 1):
            lo, hi = self.band_interval(j)
            if lo <= ell <= hi:
                return ("band", j)
            glo, ghi = self.gap_interval(j)
            if glo < ell < ghi:
                return ("gap", j)
        raise DomainError(
            f"ell = {ell} exceeds the computed band structure (increase n_edges/N)"
        )


def bl_band_edges(m, n_edges=8, N=50, validate=False):
    """Band edges of -y'' + 4 m sn^2 y = ell y by Fourier collocation.

    With validate=True the first n_edges edges are cross-checked against
    the monodromy trace (+2 periodic, -2 anti-periodic).
    """
    if not (0.0 < m < 1.0):
        raise DomainError(f"m must lie strictly in (0, 1), got {m!r}")
    needed = max(n_edges, 4)
    per = lame_collocation_eigenvalues(m, 4.0 * m, N, antiperiodic=False)[:needed]
    anti = lame_collocation_eigenvalues(m, 4.0 * m, N, antiperiodic=True)[:needed]
    edges = BLBandEdges(m=m, periodic=per, antiperiodic=anti)
    if validate:
        for kind, values in (("periodic", per[:n_edges]), ("antiperiodic", anti[:n_edges])):
            want = 2.0 if kind == "periodic" else -2.0
            for ell in values:
                trace = monodromy(lame_problem_bl(m, ell)).trace
                if abs(trace - want) > EDGE_TRACE_TOL:
                    raise EdgeMismatchError(
                        f"{kind} edge {ell} at m={m} has trace {trace}, expected {want}",
                        edge_value=ell,
                        trace=trace,
                    )
    return edges


@dataclass(frozen=True)
class BLClassification:
    bandgap: BandGapClass
    ell: float
    kind: str
    index: int
    label: str

    @property
    def sigma(self):
        return self.bandgap.sigma


def classify_bl_infinity(params, tol=EDGE_TOL, N=50):
    """Trace-primary classification with the collocation index as diagnostic."""
    if not isinstance(params, bl_module.BLParams):
        params = bl_module.BLParams(*params)
    wave = bl_module.make_bl_wave(params)
    result = classify(hill_problem_bl(wave), tol=tol)

    ell = bl_module.bl_ell(params)
    edges = bl_band_edges(params.m, n_edges=12, N=N)
    kind, index = edges.locate(ell)

    trace_kind = "band" if result.kind == "edge" else result.kind
    all_edges = np.concatenate([edges.periodic, edges.antiperiodic])
    near_edge = np.min(np.abs(all_edges - ell)) < 1e-7 * max(1.0, abs(ell))
    if trace_kind != kind and not near_edge:
        raise InconsistencyError(
            f"collocation places ell={ell} in {kind} {index} but the trace "
            f"{result.trace} says {trace_kind} for (m, a) = {params}"
        )
    if result.is_gap:
        # the gap window in ell translates into the scaling bounds on a
        lo, hi = edges.gap_interval(index)
        offset = ell - 1.0 / params.a**2
        if lo - offset > 0.0 and hi - offset > 0.0:
            a_hi = 1.0 / math.sqrt(lo - offset)
            a_lo = 1.0 / math.sqrt(hi - offset)
            if not (a_lo < params.a < a_hi):
                raise InconsistencyError(
                    f"gap window ({a_lo}, {a_hi}) in a does not contain a = {params.a}"
                )
    return BLClassification(
        bandgap=result, ell=ell, kind=kind, index=index, label=f"{'g' if kind == 'gap' else 'b'}{index}"
    )
