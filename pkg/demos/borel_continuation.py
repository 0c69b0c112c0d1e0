"""Divergent series made finite by Borel summation.

sum_n L_n(z) x^n diverges for |x| >= 1, yet its Borel integral agrees with
exp(-zx/(1-x))/(1-x) everywhere in Re(x) < 1.  Likewise sum_n B_n x^n/n!
has radius 2 pi, while its resummed form holds for every Re(x) > 0 with
|Im x| < 2 pi.

    python demos/borel_continuation.py
"""
import math

import numpy as np

from zetalab import borel

z = 1.0
print(f"Laguerre series at z = {z}")
print(f"{'x':>6}  {'N=10':>12}  {'N=30':>12}  {'Borel integral':>16}  {'closed form':>14}")
for x in (0.5, -0.9, -1.0, -3.0):
    parts = [borel.s1_partial(x, z, n).real for n in (10, 30)]
    integral = borel.s1_borel_integral(x, z).real
    print(f"{x:6}  {parts[0]:12.5g}  {parts[1]:12.5g}  {integral:16.12f}  "
          f"{borel.s1_closed(x, z).real:14.12f}")

print("\nClose to x = 1 the value exp(-z x/(1-x))/(1-x) is tiny compared with the")
print("integrand, so its relative accuracy is set by rounding:")
for x in (0.5, 0.8, 0.9):
    r = borel.s1_borel_integral(x, 5.0, full_output=True)
    c = borel.s1_closed(x, 5.0)
    print(f"  x = {x}, z = 5:  value {abs(c):.2e}, integrand L1 {r.l1:.2e}, "
          f"relative error {abs(r.value - c) / abs(c):.1e}")

print("\nBernoulli series x/(1 - e^-x)")
for x in (1.0, 6.0, 8.0):
    mags = np.abs(borel.s2_terms(x, 60))
    print(f"  x = {x}: partial sum (N=60) {borel.s2_partial(x, 60).real:.6g}, "
          f"resummed {borel.s2_resummed(x).real:.12f}, last term {mags[-1]:.1e}")

print("\nEven Bernoulli numbers from their integral representation")
for n in range(1, 6):
    print(f"  B_{2 * n:<2d} = {borel.bernoulli_integral(n):+.15f}")

print("\nKelvin-function integral against -(ux/2) sin(ux)")
for x, u in ((1.0, math.pi), (1.0, 1.0), (2.0, 0.5), (1.0, 20.0)):
    r, scale = borel.kelvin_integral_check(x, u)
    print(f"  x = {x}, u = {u:.4f}:  residual / (1 + ux/2) = {abs(r) / scale:.1e}")
