#!/usr/bin/env python3
"""Coupled BBM system: admissible speeds, regions, and the mean identity.

For each (b1, b2) the cubic discriminant carves the speed axis into
admissible intervals; the count (4, 3, 2, or "every c != 0") is constant
between three closed-form curves.  Every constructed wave also satisfies
the exact mean identity 1 + mean(eta) = (4/33)(2 + c^2) + (1213/1188) b2,
which decides whether the spectrum leaves the imaginary axis at infinity.
"""

import numpy as np

from longwave import bbm

print("admissible speed intervals:")
for b1, b2 in [(0.0, 0.0), (15.97, 6.895), (15.97, -1.5), (1.0, -35.0)]:
    si = bbm.admissible_speed_intervals(b1, b2)
    pretty = ", ".join(
        f"({lo:+.4g}, {hi:+.4g})" for lo, hi in si.intervals
    )
    print(f"  (b1, b2) = ({b1}, {b2}): region {si.region_label}: {pretty}")

print("\nwaves and the mean identity:")
for c, b1, b2 in [(3.0, 0.0, -2.0), (4.0, 0.0, 0.0), (3.0, 15.97, -1.5)]:
    wave = bbm.make_bbm_wave((c, b1, b2))
    closed = bbm.mean_one_plus_eta(wave.params)
    thr = bbm.bbm_instability_threshold(c)
    verdict = "unstable spine" if b2 < thr else "spectrum stays on the axis"
    print(f"  (c, b1, b2) = ({c}, {b1}, {b2}): m = {wave.m:.6f}, T = {wave.T:.6f}")
    print(f"    1 + mean(eta): quadrature {wave.one_plus_eta_mean:+.12f} "
          f"vs closed form {closed:+.12f}")
    print(f"    threshold b2 < {thr:.4f} -> {verdict}")

print("\nmean identity on random admissible parameters:")
rng = np.random.default_rng(1)
worst = 0.0
for _ in range(10):
    b1, b2 = rng.uniform(-15, 15), rng.uniform(-4, 8)
    lo, _ = bbm.admissible_speed_intervals(b1, b2).intervals[-1]
    c = (lo if np.isfinite(lo) else 0.0) + 0.75
    try:
        wave = bbm.make_bbm_wave((c, b1, b2))
    except Exception:
        continue
    worst = max(worst, abs(wave.one_plus_eta_mean - bbm.mean_one_plus_eta(wave.params)))
print(f"  worst |quadrature - closed form| = {worst:.2e}")
