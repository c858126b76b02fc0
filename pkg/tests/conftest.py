import os

import numpy as np
import pytest
from scipy.spatial import cKDTree

from longwave import bbm, bl, floquet, rbou

JOBS = min(os.cpu_count() or 1, 8)

# waves appearing in the reproduced figures, one entry per figure wave
FIGURE_WAVES = {
    "rbou_band4": ("rbou", (-0.7600, -0.006403, 1.0)),
    "rbou_gap3": ("rbou", (-0.7872, -0.006403, 1.0)),
    "rbou_gap2": ("rbou", (-1.246, -1.149, 1.0)),
    "rbou_band3": ("rbou", (-2.034, 0.7131, 1.0)),
    "bl_gap1": ("bl", (0.9342, 2.25)),
    "bl_band2": ("bl", (0.8428, 1.621)),
    "bl_gap2": ("bl", (0.6872, 1.584)),
    "bl_band3": ("bl", (0.995, 0.628)),
    "bl_gap3": ("bl", (0.995, 0.618)),
    "bbm_spine_r4": ("bbm", (3.0, 0.0, -2.0)),
    "bbm_imag_r4": ("bbm", (4.0, 0.0, 0.0)),
    "bbm_imag_r3": ("bbm", (3.0, 15.97, 6.895)),
    "bbm_spine_r3": ("bbm", (3.0, 15.97, -1.5)),
    "bbm_imag_r3_fast": ("bbm", (4.0, 15.97, -1.5)),
    "bbm_imag_r2": ("bbm", (4.0, 0.0, 40.0)),
}


def build_wave(model, params):
    if model == "rbou":
        return rbou.make_rbou_wave(params)
    if model == "bl":
        return bl.make_bl_wave(params)
    return bbm.make_bbm_wave(params)


@pytest.fixture(scope="session")
def figure_wave():
    cache = {}

    def get(key):
        if key not in cache:
            model, params = FIGURE_WAVES[key]
            cache[key] = build_wave(model, params)
        return cache[key]

    return get


class CloudCache:
    """Session cache of spectrum clouds, keyed by (wave key, Nk, n_tau)."""

    def __init__(self, figure_wave):
        self._figure_wave = figure_wave
        self.cache = {}

    def __call__(self, key, Nk=100, n_tau=24):
        entry = (key, Nk, n_tau)
        if entry not in self.cache:
            model, _ = FIGURE_WAVES[key]
            request = floquet.SpectrumRequest(
                model,
                self._figure_wave(key),
                Nk=Nk,
                tau_grid=floquet.default_tau_grid(n_tau),
            )
            self.cache[entry] = floquet.compute_spectrum(request, jobs=JOBS)
        return self.cache[entry]


@pytest.fixture(scope="session")
def spectrum_cloud(figure_wave):
    return CloudCache(figure_wave)


def symmetry_residual(eigenvalues):
    """Largest nearest-neighbor defect of the cloud under conj and negation."""
    pts = np.column_stack([eigenvalues.real, eigenvalues.imag])
    tree = cKDTree(pts)
    d_neg, _ = tree.query(np.column_stack([-eigenvalues.real, -eigenvalues.imag]), k=1)
    d_conj, _ = tree.query(np.column_stack([eigenvalues.real, -eigenvalues.imag]), k=1)
    return float(max(d_neg.max(), d_conj.max()))


def sample_admissible_roots(rng, n, gamma_range=(0.2, 1.5)):
    """n random root triples in the admissible wedge, rejection sampled."""
    out = []
    while len(out) < n:
        gamma = rng.uniform(*gamma_range)
        beta = rng.uniform(gamma - 2.0, gamma)
        alpha = rng.uniform(beta - 2.0, beta)
        if beta < gamma and alpha < beta and alpha + beta + gamma > -1.5:
            # keep m away from the degenerate ends
            m = (gamma - beta) / (gamma - alpha)
            if 1e-3 < m < 1.0 - 1e-3:
                out.append((alpha, beta, gamma))
    return out
