#!/usr/bin/env python3
"""Tour of the elliptic-function layer everything else is built on.

Shows the AGM integrals, the Jacobi functions, the mean M(m) of sn^2,
and how fast the sn^2 cosine series converges across the parameter range.
"""

import numpy as np

from longwave import elliptic

print("Complete elliptic integrals by the arithmetic-geometric mean:")
for m in (0.1, 0.5, 0.9, 0.995):
    K, E = elliptic.complete_K(m), elliptic.complete_E(m)
    print(f"  m = {m:<6} K = {K:.15f}  E = {E:.15f}  nome q = {elliptic.nome(m):.6f}")

print("\nJacobi functions at the quarter period (sn -> 1, cn -> 0, dn -> k'):")
for m in (0.3, 0.7, 0.99):
    K = elliptic.complete_K(m)
    sn, cn, dn = elliptic.jacobi_sn_cn_dn(K, m)
    print(f"  m = {m}: sn = {sn:.12f}, cn = {cn:+.2e}, dn = {dn:.12f}, "
          f"sqrt(1-m) = {np.sqrt(1-m):.12f}")

print("\nM(m) = (K - E)/(m K), the mean of sn^2 over a period:")
for m in (0.2, 0.6, 0.961):
    M = elliptic.mean_M(m)
    x = 2 * elliptic.complete_K(m) * np.arange(2048) / 2048
    quad = np.mean(elliptic.sn_squared(x, m))
    print(f"  m = {m:<6} closed form {M:.12f} vs grid average {quad:.12f}")

print("\nsn^2 cosine-series truncation error (coefficients decay like q^k):")
for m in (0.5, 0.9, 0.99):
    x = np.linspace(0, 2 * elliptic.complete_K(m), 400)
    direct = elliptic.sn_squared(x, m)
    row = []
    for n in (4, 8, 16, 32, 64):
        series = elliptic.sn2_fourier(m, n)
        row.append(f"{np.max(np.abs(series.evaluate(x) - direct)):.1e}")
    print(f"  m = {m:<5} n_terms 4/8/16/32/64 -> " + "  ".join(row))
