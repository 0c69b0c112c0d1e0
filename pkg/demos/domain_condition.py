"""The weight function and the boundary term it leaves behind.

For power profiles y^(s-1) the boundary-term integral does not depend on z
and equals F(s) + F(1-s), i.e. 2 Re F(s) on the critical line.  It vanishes
at the zeros of zeta; it also vanishes where Re F happens to cross zero, so
the condition alone does not isolate the zeros.

    python demos/domain_condition.py
"""
import numpy as np

from zetalab import weightspace as ws
from zetalab.eigensystem import find_zeros

print("transport residual on a log grid:",
      f"{np.max(np.abs(ws.check_transport(*np.meshgrid(np.logspace(-2, 2, 20), np.logspace(-2, 2, 20)))[0])):.1e}")

print("\ndomain limit by quadrature at three z and in closed form")
for s in (0.5, 0.7, 0.3 + 2j):
    d = ws.domain_limit(s)
    print(f"  s = {s}:  closed {d.closed:.12f}  z-spread {d.spread:.1e}  deviation {d.deviation:.1e}")

zeros = find_zeros(50)
print("\nat the zeros:")
for z in zeros[:4]:
    print(f"  t = {z.height:.6f}:  |limit| = {abs(ws.domain_limit_closed(complex(0.5, z.height))):.1e}")

print("\nsign changes of 2 Re F(1/2 + it) on (0, 50]:")
t = np.arange(0.05, 50, 0.01)
v = np.array([ws.domain_limit_closed(complex(0.5, x)).real for x in t])
changes = t[1:][np.sign(v[1:]) != np.sign(v[:-1])]
near_zero = [c for c in changes if min(abs(c - z.height) for z in zeros) < 0.02]
print(f"  {len(changes)} crossings, {len(near_zero)} of them at zeros of zeta")
print(f"  first crossing away from a zero: t = {min(set(changes) - set(near_zero)):.2f}")

rho = zeros[0].point
r = ws.orthogonality_linearized(rho, 1e-3)
print(f"\nlinearised orthogonality at the first zero: Re F'(rho) = {r.reference:.10e}")
for e, q, err in zip(r.eps, r.quotients, r.rel_errors):
    print(f"  eps = {e:.2e}: quotient {q.real:.10e} (relative error {err:.1e})")
print(f"  Richardson: {r.richardson:.10e} (relative error {r.rel_error:.1e})")
