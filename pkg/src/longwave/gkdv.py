"""Disk enclosure of the generalized KdV spectrum outside a bounded set.

For the linearization lambda phi = phi''' - c phi' + (u phi)' about a
smooth 2 pi periodic profile u, every eigenvalue lies in the union of
disks S_k centered at i omega(k) = -i(k^3 + c k) with radius
|k| sum_n |u_hat_n|.  Once consecutive disks separate (|omega(k+1) -
omega(k)| outgrows the radius sum), each disk holds exactly one
eigenvalue, which the operator's symmetries pin to the imaginary axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError, NumericalError
from .fourier import toeplitz_multiplication_matrix

MEMBERSHIP_SLACK = 1e-8
REAL_PART_TOL = 1e-8


def _coefficient_l1(u_coeffs):
    return float(np.sum(np.abs(u_coeffs)))


def _omega(k, c):
    return -(k**3) - c * k


@dataclass(frozen=True)
class DiskFamily:
    """Enclosing disks S_k and the index beyond which they separate."""

    c: float
    fourier_l1: float
    k_values: np.ndarray
    centers: np.ndarray  # purely imaginary
    radii: np.ndarray
    k0: int

    def disk_of(self, k):
        i = int(np.where(self.k_values == k)[0][0])
        return self.centers[i], self.radii[i]

    def contains(self, k, lam, slack=MEMBERSHIP_SLACK):
        center, radius = self.disk_of(k)
        return abs(lam - center) <= radius + slack


def gkdv_disks(u_coeffs, c, K_max):
    """Disk family for the profile with centered Fourier coefficients u_coeffs."""
    if c == -1.0:
        raise DomainError("wave speed c = -1 is excluded")
    if not math.isfinite(c):
        raise DomainError(f"wave speed must be finite, got {c!r}")
    u_coeffs = np.asarray(u_coeffs)
    total = _coefficient_l1(u_coeffs)
    if not math.isfinite(total):
        raise DomainError("profile coefficients must be absolutely summable")
    k = np.arange(-K_max, K_max + 1)
    centers = 1j * _omega(k.astype(float), c)
    radii = np.abs(k) * total

    # smallest k0 >= 0 with all consecutive disks disjoint from |k| >= k0 on;
    # the center gaps grow like 3k^2 while radii grow linearly, so the scan
    # terminates within the computed family
    k0 = None
    for candidate in range(0, K_max):
        ok = True
        for j in range(candidate, K_max):
            gap = abs(_omega(j + 1.0, c) - _omega(float(j), c))
            if gap <= total * (abs(j) + abs(j + 1)):
                ok = False
                break
        if ok:
            k0 = candidate
            break
    if k0 is None:
        raise NumericalError(
            f"disks did not separate within |k| <= {K_max}; enlarge K_max"
        )
    return DiskFamily(
        c=float(c), fourier_l1=total, k_values=k, centers=centers, radii=radii, k0=k0
    )


def gkdv_operator_matrix(u_coeffs, c, Nk, tau=0.0):
    """Fourier collocation of phi''' - c phi' + (u phi)' on modes -Nk..Nk."""
    u_coeffs = np.asarray(u_coeffs, dtype=complex)
    offset = (len(u_coeffs) - 1) // 2
    if offset < 2 * Nk:
        padded = np.zeros(4 * Nk + 1, dtype=complex)
        padded[2 * Nk - offset : 2 * Nk + offset + 1] = u_coeffs
        u_coeffs = padded
    k = np.arange(-Nk, Nk + 1) + tau
    diag = 1j * _omega(k, c)
    U = toeplitz_multiplication_matrix(u_coeffs, Nk)
    return np.diag(diag) + 1j * k[:, None] * U


@dataclass(frozen=True)
class GKdVReport:
    passed: bool
    k0: int
    n_checked: int
    eigenvalues: np.ndarray
    disks: DiskFamily
    failures: tuple

    def __bool__(self):
        return self.passed


def gkdv_check(u_coeffs, c, Nk=64, K_report=None, tau=None):
    """Verify the enclosure on the computed periodic spectrum.

    Checks that (i) every eigenvalue above the non-separated band lies in
    exactly one disk, (ii) those eigenvalues sit on the imaginary axis to
    REAL_PART_TOL, and (iii) every separated disk with |k| <= K_report
    holds exactly one eigenvalue.  A nonzero tau shifts k -> k + tau in
    both the operator and the disk centers (quasi-periodic boundary).
    """
    if K_report is None:
        K_report = max(2, Nk // 4)
    if K_report > Nk // 2:
        raise DomainError("K_report beyond Nk/2 would test unresolved modes")
    disks = gkdv_disks(u_coeffs, c, K_max=Nk)
    shift = 0.0 if tau is None else float(tau)
    matrix = gkdv_operator_matrix(u_coeffs, c, Nk, tau=shift)
    lam = scipy.linalg.eigvals(matrix, check_finite=False)

    if shift:
        k = np.arange(-Nk, Nk + 1) + shift
        centers = 1j * _omega(k, c)
        radii = np.abs(k) * disks.fourier_l1
    else:
        centers, radii = disks.centers, disks.radii
    k0 = disks.k0

    failures = []
    # height above which disk membership is decidable: beyond the band
    # covered by the possibly-overlapping low disks
    low = np.abs(np.arange(-k0, k0 + 1) + shift)
    band = max(
        abs(_omega(kk + shift, c)) + abs(kk + shift) * disks.fourier_l1
        for kk in range(-k0, k0 + 1)
    ) if k0 > 0 else 0.0

    inside = np.abs(lam[:, None] - centers[None, :]) <= radii[None, :] + MEMBERSHIP_SLACK
    counts_per_eig = inside.sum(axis=1)
    for i, ev in enumerate(lam):
        if abs(ev.imag) <= band:
            continue
        n_disks = int(counts_per_eig[i])
        if n_disks != 1:
            failures.append(
                ("membership", complex(ev), f"eigenvalue lies in {n_disks} disks")
            )
            continue
        if abs(ev.real) > REAL_PART_TOL:
            failures.append(
                ("real-part", complex(ev), f"|Re| = {abs(ev.real):.3e} exceeds {REAL_PART_TOL:.1e}")
            )

    # one eigenvalue per separated reported disk
    k_arr = np.arange(-Nk, Nk + 1)
    report_sel = (np.abs(k_arr) <= K_report) & (np.abs(k_arr) >= k0)
    occupancy = inside.sum(axis=0)
    for idx in np.where(report_sel)[0]:
        if occupancy[idx] != 1:
            failures.append(
                (
                    "occupancy",
                    complex(centers[idx]),
                    f"disk k = {k_arr[idx]} holds {int(occupancy[idx])} eigenvalues",
                )
            )

    return GKdVReport(
        passed=not failures,
        k0=k0,
        n_checked=int(np.count_nonzero(report_sel)),
        eigenvalues=lam,
        disks=disks,
        failures=tuple(failures),
    )
