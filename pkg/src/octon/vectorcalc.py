"""Gibbs vector calculus on the lattice, kept free of any octon arithmetic.

This is the classical side of every octonic-vs-classical comparison.  Vector
fields are real or complex arrays of shape ``(3, nx, ny, nz)``.  All spatial
derivatives come from one Jacobian ``jac[m, k] = d_m V_k`` built with the same
centred difference the octonic operators use, so the two routes differ only in
how the derivatives are combined.
"""

import numpy as np

from .fieldgrid import diff_array


def gradient(f, h):
    return np.stack([diff_array(f, a, h[a]) for a in range(3)])


def jacobian(v, h):
    """``jac[m, k] = d v_k / d x_m``."""
    return np.stack([diff_array(v, m, h[m]) for m in range(3)])


def div(v, h=None, jac=None):
    jac = jacobian(v, h) if jac is None else jac
    return jac[0, 0] + jac[1, 1] + jac[2, 2]


def curl(v, h=None, jac=None):
    jac = jacobian(v, h) if jac is None else jac
    return np.stack([
        jac[1, 2] - jac[2, 1],
        jac[2, 0] - jac[0, 2],
        jac[0, 1] - jac[1, 0],
    ])


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return np.stack([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def advective(a, jac_b):
    """``(a . nabla) b`` given the Jacobian of ``b``."""
    return np.einsum("m...,mk...->k...", a, jac_b)


def grad_dot(a, jac_a, b, jac_b):
    """``nabla (a . b)`` expanded by the product rule at each site."""
    return np.einsum("k...,mk...->m...", b, jac_a) + np.einsum("k...,mk...->m...", a, jac_b)
