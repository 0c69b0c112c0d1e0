"""The eigenvalue problem in Mellin space.

The coefficients f_k of an eigenstate in the Laguerre basis are moments of
g_s(z) = z^s e^{-z} / (1 + e^z).  The moment recurrence contains the series
sum_m c_m g_{k+m}, which is only asymptotic: its terms shrink, bottom out and
then grow.  The ODE the profile satisfies, on the other hand, holds exactly.

    python demos/mellin_recurrence.py
"""
import numpy as np

from zetalab import mellinspace as ms
from zetalab.suites import KNOWN_ZEROS

s = 2.0
p = ms.MellinEigenprofile(s)
print("ODE residual relative to |g| at s = 2:")
for z in (0.1, 1.0, 5.0):
    print(f"  z = {z:4}:  {abs(ms.ode_residual(p, z)) / abs(p.g(z)):.1e}")

mv = ms.moments(p, 40)
print("\nmoment coefficients f_k = g_k / k!:")
for k in (0, 1, 2, 5, 10, 20, 40):
    print(f"  f_{k:<2d} = {mv.f[k].real:.6e}")

k = 1
terms = np.abs(ms.recurrence_terms(mv, k, 38))
m_opt = ms.optimal_truncation(mv, k)
print(f"\nseries terms |c_m g_(k+m)| / k! for k = {k} (odd m >= 3 vanish):")
for m in range(2, 39, 4):
    print(f"  m = {m:2d}:  {terms[m]:.3e}")
print(f"smallest term at m = {m_opt}")
for m_max in (2, 4, 8, 12):
    r, tail = ms.recurrence_residual(mv, s, k, m_max)
    print(f"  m_max = {m_max:2d}: |residual| = {abs(r):.3e}   last term = {tail:.3e}")

rho = complex(0.5, KNOWN_ZEROS[0])
q = ms.MellinEigenprofile(rho)
print(f"\nintegral boundary condition at the first zero: {abs(ms.integral_bc(q)):.1e}")
mvq = ms.moments(q, 128)
print("reconstructed eigenfunction at the first zero:")
for x in (0.0, 0.5, 2.0, 8.0, 30.0):
    v, last = ms.reconstruct(q, x, 128, mv=mvq)
    print(f"  x = {x:5.1f}:  |Psi| = {abs(v):.3e}   (last term {last:.1e})")
