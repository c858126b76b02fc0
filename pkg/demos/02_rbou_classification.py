#!/usr/bin/env python3
"""Regularized Boussinesq waves and their spectrum-at-infinity class.

Constructs the four gallery waves, prints the derived constants, and
classifies each one by locating its spectral offset among the closed-form
three-gap band edges, cross-checked by the monodromy trace.  A gap means
the spectrum escapes to infinity along vertical lines Re = +-sigma; a
band means it hugs the imaginary axis.
"""

from longwave import hill, rbou

CASES = [
    (-0.7600, -0.006403, 1.0),
    (-0.7872, -0.006403, 1.0),
    (-1.246, -1.149, 1.0),
    (-2.034, 0.7131, 1.0),
]

for roots in CASES:
    wave = rbou.make_rbou_wave(roots)
    result = hill.classify_rbou_infinity(roots)
    print(f"roots {roots}:")
    print(f"  c = {wave.c:+.6f}, T = {wave.T:.6f}, m = {wave.m:.6f}, a = {wave.a:.6f}")
    print(f"  profile-equation residual = {wave.residual:.2e}")
    tail = f"sigma = {result.sigma:.6f}" if result.kind == "gap" else "spectrum on the axis"
    print(f"  offset ell = {result.ell:.5f} -> {result.label} ({result.kind} {result.index}), {tail}")

m = 0.5
edges = hill.lame_edges_rbou(m, validate=True)
print(f"\nthree-gap band edges at m = {m} (monodromy-validated, trace = +-2):")
print("  periodic:", edges.l1P, edges.l2P, edges.l3P)
print("  anti-periodic:", edges.l1A, edges.l2A, edges.l3A, edges.l4A)
print("  first anti-periodic edge closed form:", edges.l1A_form)
