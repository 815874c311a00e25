"""Maxwell's equations in a medium from conjugate pairs of octon equations.

A plane wave in a medium with eps = 2, mu = 3 moves at c / sqrt(6).  The
first pair (div B, Faraday) comes from P+F_EB minus its complex conjugate,
the second (Gauss, Ampere) from P+F_DH plus its conjugate; the combined
octon carries all four at once.

Run:  python3 demos/04_matter.py
"""
import numpy as np

from octon.analytic import matter_plane_wave
from octon.electrodynamics import CurrentOcton
from octon.fieldgrid import Grid3
from octon.matter import combined_residual, conjugation_defect

for n in (16, 32, 64):
    g = Grid3.box(n)
    m = matter_plane_wave(g, 0.3, (1, 2, 2), (2, -1, 0), epsilon=2.0, mu=3.0)
    res = combined_residual(m, CurrentOcton.vacuum(g))
    print(f"N={n:3d}  " + "  ".join(f"{k} {np.abs(a).max():.2e}" for k, a in res.parts().items()))

# Conjugating before or after applying the operator is not the same thing:
# the cross-product terms carry xi and change sign.
m = matter_plane_wave(Grid3.box(16), 0.3, (1, 2, 2), (2, -1, 0), epsilon=2.0, mu=3.0)
print("\nconjugation defect, max:", np.abs(conjugation_defect(m).data).max())
