"""Floquet spectra of the linearized operators by Fourier collocation.

For a T-periodic wave and Floquet exponent tau in (-1/2, 1/2], the Bloch
operator acts on truncated Fourier series with modes k = -Nk..Nk through
sums and products of diagonal matrices (derivatives, resolvents) and
Toeplitz matrices (multiplication by periodic profiles).  All eigenvalues
of every tau slice form the spectrum cloud.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

from . import bbm as bbm_module
from . import bl as bl_module
from . import hill
from . import rbou as rbou_module
from .errors import DomainError, InsufficientDataError, LogicError, NumericalError
from .fourier import toeplitz_multiplication_matrix

DUAL_PATH_TOL = 1e-8
EDGE_OF_RESOLUTION_FRACTION = 0.9


def default_tau_grid(n=200):
    """n uniform Floquet exponents filling (-1/2, 1/2]."""
    if n < 1:
        raise DomainError(f"tau grid needs at least one point, got {n}")
    return -0.5 + np.arange(1, n + 1) / n


@dataclass(frozen=True)
class SpectrumRequest:
    model: str
    wave: object
    Nk: int = 100
    tau_grid: np.ndarray = None
    keep_eigenvectors: bool = False  # memory: dim^2 complex entries per tau

    def __post_init__(self):
        if self.model not in ("rbou", "bl", "bbm"):
            raise DomainError(f"unknown model {self.model!r}")
        if self.Nk < 1:
            raise DomainError(f"Nk must be positive, got {self.Nk}")
        if self.tau_grid is None:
            object.__setattr__(self, "tau_grid", default_tau_grid())
        else:
            grid = np.asarray(self.tau_grid, dtype=float)
            if np.any(grid <= -0.5) or np.any(grid > 0.5):
                raise DomainError("Floquet exponents must lie in (-1/2, 1/2]")
            object.__setattr__(self, "tau_grid", grid)

    @property
    def matrix_dimension(self):
        return 2 * (2 * self.Nk + 1)


@lru_cache(maxsize=64)
def _checked_profile_coefficients(wave, n_max):
    """Analytic Fourier coefficients, cross-checked against the ODE route.

    The analytic elliptic-series route and quadrature of the numerically
    integrated profile equation must agree; their difference is asserted
    once per wave and the analytic coefficients are used thereafter.
    """
    module = {"rbou": rbou_module, "bl": bl_module, "bbm": bbm_module}[wave.model]
    analytic = wave.fourier_coefficients(n_max)
    n_check = min(n_max, 48)
    by_ode = module.ode_fourier_coefficients(wave, n_check)
    center, center_ode = n_max, n_check
    window = np.arange(-n_check, n_check + 1)
    gap = np.max(np.abs(analytic[center + window] - by_ode[center_ode + window].real))
    if gap > DUAL_PATH_TOL:
        raise NumericalError(
            f"analytic and ODE-quadrature Fourier coefficients disagree by "
            f"{gap:.3e} (tolerance {DUAL_PATH_TOL:.1e})"
        )
    return analytic


def build_collocation_matrix(request, tau):
    """Dense Bloch matrix of the linearized operator at Floquet exponent tau."""
    if abs(tau) > 0.5:
        raise DomainError(f"|tau| must not exceed 1/2, got {tau}")
    wave, Nk = request.wave, request.Nk
    if request.model == "rbou":
        u_hat = _checked_profile_coefficients(wave, 2 * Nk)
        return rbou_matrix(wave.c, wave.T, u_hat, Nk, tau)
    if request.model == "bl":
        v_hat = _checked_profile_coefficients(wave, 2 * Nk)
        return bl_matrix(wave.c, wave.T, v_hat, Nk, tau)
    u_hat = _checked_profile_coefficients(wave, 2 * Nk)
    eta_hat = wave.eta_fourier_coefficients(2 * Nk)
    return bbm_matrix(wave.c, wave.T, u_hat, eta_hat, Nk, tau)


def _bloch_derivative(Nk, tau, T):
    k = np.arange(-Nk, Nk + 1)
    return 2j * np.pi * (k + tau) / T


def rbou_matrix(c, T, u_hat, Nk, tau):
    """Blocks [[c D, D R], [D (1 + 2U), c D]] with R = (1 - D^2)^{-1}."""
    d = _bloch_derivative(Nk, tau, T)
    R = 1.0 / (1.0 - d * d)
    U = toeplitz_multiplication_matrix(u_hat, Nk)
    n = 2 * Nk + 1
    eye = np.eye(n)
    A11 = c * np.diag(d)
    A12 = np.diag(d * R)
    A21 = np.diag(d) @ (eye + 2.0 * U)
    return np.block([[A11, A12], [A21, A11]]).astype(complex)


def bl_matrix(c, T, v_hat, Nk, tau):
    """Blocks [[D(c - R V), D R], [D(1 + c V + V R V), D(c - R V)]]."""
    d = _bloch_derivative(Nk, tau, T)
    R = 1.0 / (1.0 - d * d)
    V = toeplitz_multiplication_matrix(v_hat, Nk)
    n = 2 * Nk + 1
    eye = np.eye(n)
    D = np.diag(d)
    RV = R[:, None] * V
    A11 = D @ (c * eye - RV)
    A12 = np.diag(d * R)
    A21 = D @ (eye + c * V + V @ RV)
    return np.block([[A11, A12], [A21, A11]]).astype(complex)


def bbm_matrix(c, T, u_hat, eta_hat, Nk, tau):
    """Blocks [[c D + D G U, D G (1 + H)], [D G, c D + D G U]].

    G = (D^2/6 - 1)^{-1} is the (negative) BBM resolvent; U and H are the
    multiplication operators of u and eta.
    """
    d = _bloch_derivative(Nk, tau, T)
    G = 1.0 / (d * d / 6.0 - 1.0)
    U = toeplitz_multiplication_matrix(u_hat, Nk)
    H = toeplitz_multiplication_matrix(eta_hat, Nk)
    n = 2 * Nk + 1
    eye = np.eye(n)
    dG = d * G
    diag = c * np.diag(d) + dG[:, None] * U
    A12 = dG[:, None] * (eye + H)
    A21 = np.diag(dG)
    return np.block([[diag, A12], [A21, diag]]).astype(complex)


@dataclass(frozen=True)
class FloquetSpectrum:
    """Point cloud of eigenvalues over the tau grid."""

    model: str
    tau: np.ndarray  # one entry per point, repeated across the slice
    eigenvalues: np.ndarray  # complex, sorted within each slice by (Im, Re)
    edge_flag: np.ndarray  # True for the outer 10 percent of the |Im| range
    metadata: dict = field(repr=False)
    eigenvectors: np.ndarray = None  # (n_points, dim) when requested

    @property
    def max_real_part(self):
        return float(np.max(self.eigenvalues.real))

    @property
    def points(self):
        return list(zip(self.tau, self.eigenvalues))

    def resolved(self):
        """Eigenvalues away from the truncation boundary."""
        return self.eigenvalues[~self.edge_flag]

    def high_im_max_abs_re(self, lower=0.5, upper=EDGE_OF_RESOLUTION_FRACTION):
        """Max |Re| over the band lower..upper of the |Im| range."""
        am = np.abs(self.eigenvalues.imag)
        top = am.max()
        sel = (am >= lower * top) & (am <= upper * top)
        if not np.any(sel):
            raise InsufficientDataError("no eigenvalues in the requested |Im| band")
        return float(np.max(np.abs(self.eigenvalues.real[sel])))


def compute_spectrum(request, jobs=None):
    """All eigenvalues of the collocation matrix for every tau in the grid."""
    start = time.monotonic()
    taus = request.tau_grid

    def solve(tau):
        matrix = build_collocation_matrix(request, tau)
        try:
            if request.keep_eigenvectors:
                return scipy.linalg.eig(matrix, check_finite=False)
            return scipy.linalg.eigvals(matrix, check_finite=False), None
        except scipy.linalg.LinAlgError as exc:
            raise NumericalError(f"eigenvalue solver failed at tau = {tau}") from exc

    if jobs is None or jobs <= 1 or len(taus) == 1:
        slices = [solve(tau) for tau in taus]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            slices = list(pool.map(solve, taus))

    dim = request.matrix_dimension
    tau_col = np.repeat(taus, dim)
    ordered = []
    ordered_vecs = []
    for lam, vecs in slices:
        idx = np.lexsort((lam.real, lam.imag))
        ordered.append(lam[idx])
        if vecs is not None:
            ordered_vecs.append(vecs[:, idx].T)
    eig = np.concatenate(ordered)
    cutoff = EDGE_OF_RESOLUTION_FRACTION * np.max(np.abs(eig.imag))
    flags = np.abs(eig.imag) >= cutoff
    metadata = {
        "model": request.model,
        "Nk": request.Nk,
        "n_tau": len(taus),
        "matrix_dimension": dim,
        "elapsed_seconds": time.monotonic() - start,
        "wave": _wave_summary(request.wave),
    }
    return FloquetSpectrum(
        model=request.model,
        tau=tau_col,
        eigenvalues=eig,
        edge_flag=flags,
        metadata=metadata,
        eigenvectors=np.concatenate(ordered_vecs) if ordered_vecs else None,
    )


def _wave_summary(wave):
    if wave.model == "rbou":
        r = wave.roots
        return {"alpha": r.alpha, "beta": r.beta, "gamma": r.gamma, "c": wave.c, "T": wave.T}
    if wave.model == "bl":
        return {"m": wave.params.m, "a": wave.params.a, "c": wave.c, "T": wave.T}
    p = wave.params
    return {"c": p.c, "b1": p.b1, "b2": p.b2, "T": wave.T, "m": wave.m}


# ---------------------------------------------------------------------------
# asymptotic spines of the spectrum at infinity


@dataclass(frozen=True)
class AsymptoteCurve:
    """lambda ~ lambda1 k + lambda0 + lambda_minus1 / k along high modes.

    lambda1 = 2 pi i c / T always; lambda0 is the +-sigma pair offset for a
    gap-classified wave (stored as sigma >= 0) and 0 otherwise;
    lambda_minus1 is used by the coupled BBM model only.
    """

    model: str
    lambda1: complex
    lambda0: float
    lambda_minus1: complex
    kind: str  # "band" | "gap" | "spine" | "imaginary"
    description: str

    def offset_lines(self):
        """The pair of vertical lines +-sigma; only a gap has them."""
        if self.kind != "gap" or self.lambda0 == 0.0:
            raise LogicError(
                f"a {self.kind}-classified wave has no +-sigma spine offset"
            )
        return (self.lambda0, -self.lambda0)


def asymptote(model, wave, classification=None):
    """Asymptote coefficients of the spectrum at infinity for the wave."""
    lambda1 = 2j * math.pi * wave.c / wave.T
    if model in ("rbou", "bl"):
        if classification is None:
            problem = (
                hill.hill_problem_rbou(wave) if model == "rbou" else hill.hill_problem_bl(wave)
            )
            classification = hill.classify(problem)
        kind = "band" if classification.kind == "edge" else classification.kind
        sigma = classification.sigma if kind == "gap" else 0.0
        if kind == "gap":
            desc = f"lambda ~ {lambda1.imag:.6g} i k +- {sigma:.6g}"
        else:
            desc = f"lambda ~ {lambda1.imag:.6g} i k (imaginary axis)"
        return AsymptoteCurve(
            model=model,
            lambda1=lambda1,
            lambda0=sigma,
            lambda_minus1=0.0j,
            kind=kind,
            description=desc,
        )
    if model != "bbm":
        raise DomainError(f"unknown model {model!r}")
    one_plus_eta = wave.one_plus_eta_mean
    scale = 3.0 * wave.T / math.pi
    lam_m1 = -1j * scale * wave.u_mean + scale * complex(np.sqrt(complex(-one_plus_eta)))
    kind = "spine" if one_plus_eta < 0.0 else "imaginary"
    if kind == "spine":
        desc = (
            f"lambda ~ {lambda1.imag:.6g} i k + (+-{lam_m1.real:.6g} "
            f"{lam_m1.imag:+.6g} i) / k"
        )
    else:
        desc = f"lambda ~ {lambda1.imag:.6g} i k {lam_m1.imag:+.6g} i / k (imaginary axis)"
    return AsymptoteCurve(
        model="bbm",
        lambda1=lambda1,
        lambda0=0.0,
        lambda_minus1=lam_m1,
        kind=kind,
        description=desc,
    )


@dataclass(frozen=True)
class AsymptoteResidualReport:
    n_points: int
    k_values: np.ndarray
    distances: np.ndarray
    distance_exponent: float
    re_decay_exponent: float
    max_abs_re: float


def asymptote_residual(spectrum, curve, k_min, min_points=8):
    """Distance of high-mode eigenvalues to the predicted curve.

    Selects non-edge-flagged eigenvalues whose effective mode number
    |Im(lambda) T / (2 pi c)| is at least k_min and fits power laws to the
    curve distance and to |Re lambda|.
    """
    speed = abs(curve.lambda1.imag)  # = 2 pi |c| / T
    if speed == 0.0:
        raise DomainError("degenerate asymptote with zero leading coefficient")
    lam = spectrum.eigenvalues[~spectrum.edge_flag]
    k_eff = np.abs(lam.imag) / speed
    sel = k_eff >= k_min
    lam, k_eff = lam[sel], k_eff[sel]
    if len(lam) < min_points:
        raise InsufficientDataError(
            f"only {len(lam)} resolved eigenvalues beyond |k| = {k_min}"
        )
    abs_re = np.abs(lam.real)
    if curve.kind == "gap":
        distances = np.abs(abs_re - curve.lambda0)
    elif curve.kind == "spine":
        # horizontal distance to the nearer spine branch at matched height
        pred = np.abs(curve.lambda_minus1.real) / k_eff
        distances = np.abs(abs_re - pred)
    else:
        distances = abs_re
    max_abs_re = float(np.max(abs_re))

    def fit(values):
        mask = values > 1e-14
        if np.count_nonzero(mask) < min_points:
            return -math.inf  # decayed below measurable: faster than any power
        return float(np.polyfit(np.log(k_eff[mask]), np.log(values[mask]), 1)[0])

    return AsymptoteResidualReport(
        n_points=len(lam),
        k_values=k_eff,
        distances=distances,
        distance_exponent=fit(distances),
        re_decay_exponent=fit(abs_re),
        max_abs_re=max_abs_re,
    )
