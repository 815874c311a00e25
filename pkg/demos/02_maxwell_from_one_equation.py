"""One octon equation, four Maxwell equations.

Build F = -E + xi H for a travelling plane wave, apply (1/c d/dt - nabla)
and read Gauss, div H, Ampere and Faraday off the four grades.  The
residuals shrink by about four each time the grid is refined.

Run:  python3 demos/02_maxwell_from_one_equation.py
"""
import numpy as np

from octon.analytic import plane_wave
from octon.electrodynamics import CurrentOcton, field_wave_residuals, maxwell_residual
from octon.fieldgrid import Grid3

for n in (16, 32, 64):
    g = Grid3.box(n)
    F = plane_wave(g, t=0.3, mode=(1, 2, 2), polarization=(2, -1, 0))
    res = maxwell_residual(F, CurrentOcton.vacuum(g))
    worst = {name: np.abs(a).max() for name, a in res.parts().items()}
    print(f"N={n:3d}  " + "  ".join(f"{k} {v:.2e}" for k, v in worst.items()))

# Squaring the operator gives wave equations.  With the d'Alembertian sign
# the residual converges; flipping the Laplacian sign leaves an O(k^2) gap.
print()
for n in (16, 32, 64):
    g = Grid3.box(n)
    F = plane_wave(g, t=0.3, mode=(1, 2, 2), polarization=(2, -1, 0))
    good = field_wave_residuals(F, CurrentOcton.vacuum(g))
    flipped = field_wave_residuals(F, CurrentOcton.vacuum(g), laplacian_sign=+1)
    print(f"N={n:3d}  wave E (-Laplacian) {np.abs(good.wave_e).max():.2e}"
          f"   wave E (+Laplacian) {np.abs(flipped.wave_e).max():.2e}")
