"""A walk through the octon product table.

Run:  python3 demos/01_algebra_tour.py
"""
import numpy as np

from octon import Octon, scalar_product, spatial_inversion, to_matrix_pair, vector_product

i, j, k = (Octon.unit(s) for s in "ijk")
I, J, K = (Octon.unit(s) for s in "IJK")
E = Octon.unit("E")

# Polar units square to one and anticommute; their product lands on an axial unit.
print("i*i =", i * i)
print("i*j =", i * j, "  j*i =", j * i)

# A polar unit times its own axial partner gives the pseudoscalar E,
# and E maps each polar unit onto its axial one.
print("i*I =", i * I, "  E*i =", E * i, "  E*E =", E * E)
print("-xi*i*j*k =", -1j * (i * j * k))

# Dot and cross products fall out of the symmetric and antisymmetric halves.
a = Octon.from_parts(vector=(1, 2, 3))
b = Octon.from_parts(pseudovector=(4, 5, 6))
print("(V,P) =", scalar_product(a, b))
print("[i,j] =", vector_product(i, j))

# Mirror the space: polar parts and E flip sign, axial parts do not.
print("R(1+i+E+I) =", spatial_inversion(Octon.from_parts(1, (1, 0, 0), 1, (1, 0, 0))))

# The matrix-pair picture is an independent check on the table.
x = Octon(np.arange(8) + 0.5j)
y = Octon(np.ones(8) - 1j)
lhs = to_matrix_pair(x * y)
rhs = to_matrix_pair(x) @ to_matrix_pair(y)
print("matrix-pair mismatch:", np.abs(lhs.plus - rhs.plus).max(), np.abs(lhs.minus - rhs.minus).max())
