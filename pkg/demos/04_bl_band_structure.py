#!/usr/bin/env python3
"""Benney-Luke waves: the admissible region and numerical band edges.

The wave family is parametrized by (m, a); the speed stays real for all
a up to m0 (the root of 1 + m - 3 m M(m)) and below an explicit bound
beyond it.  The spectrum at infinity is classified by the eigenvalue
position of ell = 1/a^2 + 4(1 + m - 2 m M(m)) in the band structure of
-y'' + 4 m sn^2 y, computed by Fourier collocation with periodic and
anti-periodic (half-shifted) bases.
"""

from longwave import bl, hill

print(f"m0 = {bl.bl_m0():.9f} (speed stays real for every a below this m)\n")

for m, a in [(0.9342, 2.25), (0.8428, 1.621), (0.6872, 1.584), (0.995, 0.628), (0.995, 0.618)]:
    wave = bl.make_bl_wave((m, a))
    result = hill.classify_bl_infinity((m, a))
    tail = f"sigma = {result.sigma:.6f}" if result.kind == "gap" else "on the axis"
    print(f"(m, a) = ({m}, {a}): c = {wave.c:.6f}, T = {wave.T:.6f}, "
          f"ell = {result.ell:+.5f} -> {result.label}, {tail}")

m = 0.9342
edges = hill.bl_band_edges(m, n_edges=8, validate=True)
print(f"\nband edges at m = {m} (collocation, monodromy-validated):")
print("  periodic      ", " ".join(f"{e:9.5f}" for e in edges.periodic[:6]))
print("  anti-periodic ", " ".join(f"{e:9.5f}" for e in edges.antiperiodic[:6]))
print("  band 1 =", edges.band_interval(1), " gap 1 =", edges.gap_interval(1))
