"""Zeros of the boundary value and the eigenvalues they produce.

The boundary value Psi_s(0) is proportional to F(s) = Gamma(s) eta(s), so
requiring it to vanish on the critical line picks out the zeros of zeta.
This script locates them, evaluates Psi_s(0) two ways at and near each
zero, and prints the resulting eigenvalues E = i(1/2 - s).

    python demos/zeros_and_boundary.py
"""
from zetalab import eigensystem, specfun
from zetalab.operators import ModelParams

params = ModelParams.beta_one()
print(f"model parameter t = {params.t.real:.6f}, alpha = {params.alpha.real:.6f}")

zeros = eigensystem.find_zeros(50)
print(f"\n{len(zeros)} zeros with 0 < t <= 50\n")
print(f"{'n':>2}  {'height':>18}  {'|Psi(0)| closed':>15}  {'|Psi(0)| quad':>13}"
      f"  {'|Psi(0)| at t+0.1':>17}  {'|zeta|':>8}  eigenvalue")
for z in zeros:
    s = z.point.s
    closed = abs(eigensystem.boundary_value_closed(s, params))
    quad = abs(eigensystem.boundary_value_quadrature(s, params))
    nearby = abs(eigensystem.boundary_value_closed(s + 0.1j, params))
    print(f"{z.index:2d}  {z.height:18.12f}  {closed:15.2e}  {quad:13.2e}  {nearby:17.2e}"
          f"  {abs(specfun.riemann_zeta(s)):8.1e}  {z.eigenvalue.real:.9f}{z.eigenvalue.imag:+.1e}i")

# Gamma(1/2 + it) decays like exp(-pi t / 2), so |Psi(0)| is small everywhere
# high on the line.  The zeta column shows the zeros are genuine.
print("\nA point off the line has a complex eigenvalue:")
p = eigensystem.SpectralPoint(complex(0.7, zeros[0].height))
print(f"  s = {p.s}  ->  E = {p.eigenvalue:.6f}")
