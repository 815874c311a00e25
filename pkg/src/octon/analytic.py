"""Closed-form fields used as probes: plane waves, smooth potentials, random smooth fields.

Every function evaluates exact values and exact time derivatives on the
lattice, so only the spatial discretisation contributes error.
"""

from __future__ import annotations

import numpy as np

from .electrodynamics import CurrentOcton, FieldOcton, PotentialOcton
from .fieldgrid import Grid3


def wavevector(grid: Grid3, mode) -> np.ndarray:
    """Physical wavevector for integer mode numbers on the periodic box."""
    return 2 * np.pi * np.asarray(mode, dtype=float) / np.asarray(grid.lengths)


def _phase(grid: Grid3, k: np.ndarray, omega: float, t: float) -> np.ndarray:
    X, Y, Z = grid.coords()
    return k[0] * X + k[1] * Y + k[2] * Z - omega * t


def _orient(a: np.ndarray, profile: np.ndarray) -> np.ndarray:
    return a.reshape(3, 1, 1, 1) * profile


def plane_wave_parts(grid: Grid3, t: float, mode=(0, 0, 1), polarization=(1, 0, 0),
                     amplitude: float = 1.0, c: float = 1.0, epsilon: float = 1.0,
                     mu: float = 1.0) -> dict[str, np.ndarray]:
    """E, H and their first two time derivatives for a linearly polarised plane wave.

    Phase speed is ``c / sqrt(epsilon mu)`` and ``|H| = sqrt(epsilon/mu) |E|``.
    """
    k = wavevector(grid, mode)
    kn = np.linalg.norm(k)
    if kn == 0:
        raise ValueError("plane wave needs a nonzero mode")
    e = np.asarray(polarization, dtype=float)
    e = e / np.linalg.norm(e)
    if abs(e @ k) > 1e-12 * kn:
        raise ValueError("polarization must be perpendicular to the wavevector")
    b = np.sqrt(epsilon / mu) * np.cross(k / kn, e)
    omega = c * kn / np.sqrt(epsilon * mu)
    th = _phase(grid, k, omega, t)
    cs, sn = amplitude * np.cos(th), amplitude * np.sin(th)
    return {
        "E": _orient(e, cs), "E_t": _orient(e, omega * sn), "E_tt": _orient(e, -omega**2 * cs),
        "H": _orient(b, cs), "H_t": _orient(b, omega * sn), "H_tt": _orient(b, -omega**2 * cs),
        "omega": omega,
    }


def plane_wave(grid: Grid3, t: float = 0.0, mode=(0, 0, 1), polarization=(1, 0, 0),
               amplitude: float = 1.0, c: float = 1.0) -> FieldOcton:
    """Vacuum plane wave as a :class:`FieldOcton` with exact time derivatives."""
    p = plane_wave_parts(grid, t, mode, polarization, amplitude, c)
    return FieldOcton(grid, p["E"], p["H"], p["E_t"], p["H_t"], p["E_tt"], p["H_tt"])


def wave_potential(grid: Grid3, t: float = 0.0, mode=(1, 0, 0), c: float = 1.0) -> PotentialOcton:
    """``phi = sin(k.x - c|k| t)``, ``A = 0``: a source-free solution of the wave equation."""
    k = wavevector(grid, mode)
    omega = c * np.linalg.norm(k)
    th = _phase(grid, k, omega, t)
    zero = np.zeros((3,) + grid.shape)
    return PotentialOcton(grid, np.sin(th), zero, -omega * np.cos(th), zero,
                          -omega**2 * np.sin(th), zero)


def smooth_potential(grid: Grid3, t: float = 0.0, c: float = 1.0):
    """A generic smooth periodic potential (not a wave solution).

    Returns ``(pot, dalembert)`` where ``dalembert`` is the exact
    ``(1/c^2) d_tt - Laplacian`` applied to the octon ``phi + A``, shape (4, ...).
    """
    X, Y, Z = grid.coords()
    Lx, Ly, Lz = grid.lengths
    kx, ky, kz = 2 * np.pi / Lx, 2 * np.pi / Ly, 2 * np.pi / Lz
    w1, w2 = 1.3, 0.7

    # phi = sin(kx x + ky y) cos(w1 t)
    sxy = np.sin(kx * X + ky * Y)
    phi = sxy * np.cos(w1 * t)
    phi_t = -w1 * sxy * np.sin(w1 * t)
    phi_tt = -w1**2 * phi
    lap_phi = -(kx**2 + ky**2) * phi

    # A = (cos(kz z), sin(kx x) cos(2 ky y), cos(ky y + kz z)) * e^{...}-free time factor
    f1 = np.cos(kz * Z)
    f2 = np.sin(kx * X) * np.cos(2 * ky * Y)
    f3 = np.cos(ky * Y + kz * Z)
    tf, tf_t, tf_tt = np.cos(w2 * t), -w2 * np.sin(w2 * t), -w2**2 * np.cos(w2 * t)
    base = np.stack([f1, f2, f3])
    lap_base = np.stack([-kz**2 * f1, -(kx**2 + 4 * ky**2) * f2, -(ky**2 + kz**2) * f3])
    A, A_t, A_tt = base * tf, base * tf_t, base * tf_tt
    lap_A = lap_base * tf

    pot = PotentialOcton(grid, phi, A, phi_t, A_t, phi_tt, A_tt)
    dal = np.concatenate([(phi_tt / c**2 - lap_phi)[None], A_tt / c**2 - lap_A])
    return pot, dal


def _random_trig(grid: Grid3, rng: np.random.Generator, ncomp: int, modes: int) -> np.ndarray:
    X, Y, Z = grid.coords()
    k0 = 2 * np.pi / np.asarray(grid.lengths)
    out = np.zeros((ncomp,) + grid.shape)
    for comp in range(ncomp):
        for _ in range(modes):
            m = rng.integers(-2, 3, size=3)
            amp, ph = rng.normal(), rng.uniform(0, 2 * np.pi)
            out[comp] += amp * np.cos(m[0] * k0[0] * X + m[1] * k0[1] * Y + m[2] * k0[2] * Z + ph)
    return out


def random_smooth_fields(grid: Grid3, rng: np.random.Generator, modes: int = 3):
    """Random smooth periodic (E, H, rho, j) with unrelated "time derivatives".

    The fields are off-shell: nothing here solves Maxwell's equations.  They
    exercise the algebraic equivalence of two evaluation routes.
    """
    v = lambda: _random_trig(grid, rng, 3, modes)  # noqa: E731
    F = FieldOcton(grid, v(), v(), v(), v(), v(), v())
    cur = CurrentOcton(grid, _random_trig(grid, rng, 1, modes)[0], v(),
                       _random_trig(grid, rng, 1, modes)[0], v())
    return F, cur


def matter_plane_wave(grid: Grid3, t: float = 0.0, mode=(0, 0, 1), polarization=(1, 0, 0),
                      amplitude: float = 1.0, c: float = 1.0, epsilon: float = 1.0, mu: float = 1.0):
    """Plane wave in a homogeneous medium, closed with D = eps E and B = mu H."""
    from .matter import ConstitutiveModel
    p = plane_wave_parts(grid, t, mode, polarization, amplitude, c, epsilon, mu)
    return ConstitutiveModel(epsilon, mu).close(grid, p["E"], p["H"], p["E_t"], p["H_t"])
