"""Vacuum electrodynamics in octon form.

The potential octon is ``phi + A``, the current octon ``4 pi rho + (4 pi / c) j``
and the field octon ``F = -E + xi H``.  Gaussian units throughout.

Each residual here is computed twice: once by octon operations (apply the
operator, multiply, read off grades) and once with plain vector calculus from
:mod:`octon.vectorcalc`.  The two must agree to a scaled tolerance or a
:class:`~octon.errors.PathMismatchError` is raised.  Residual fields are
always returned in the classical sign convention (left side minus right side
of the vector-form relation, real-valued for real inputs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import vectorcalc as vc
from .algebra import XI, multiply_arrays
from .errors import GridMismatchError, MissingDerivativeError, PathMismatchError
from .fieldgrid import (
    Grid3,
    OctonField,
    TimeSlice,
    field_norms,
    interior,
    laplacian_array,
    nabla_apply,
    nabla_nabla_cross,
    p_apply,
    p_apply_slice,
    p_conj_apply,
)

FOUR_PI = 4.0 * np.pi

PATH_TOL = 1e-12
RELATION_TOL = 1e-11


@dataclass(frozen=True)
class Units:
    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"speed of light must be positive, got {self.c}")


def _real(value) -> np.ndarray:
    arr = np.asarray(value)
    if np.iscomplexobj(arr):
        raise TypeError("physical fields and sources must be real")
    return arr.astype(np.float64, copy=False)


def _scalar(grid: Grid3, value) -> np.ndarray | None:
    if value is None:
        return None
    return np.broadcast_to(_real(value), grid.shape).copy()


def _vector(grid: Grid3, value) -> np.ndarray | None:
    if value is None:
        return None
    arr = _real(value)
    if arr.shape == (3,):
        arr = arr.reshape(3, 1, 1, 1)
    return np.broadcast_to(arr, (3,) + grid.shape).copy()


def _need(value, what):
    if value is None:
        raise MissingDerivativeError(f"{what} is required for this operation")
    return value


def _same_grid(*objs) -> Grid3:
    grid = objs[0].grid
    for o in objs[1:]:
        if o.grid != grid:
            raise GridMismatchError(f"{grid} vs {o.grid}")
    return grid


def check_agreement(octonic, classical, what: str, tol: float = PATH_TOL) -> float:
    """Raise unless two routes agree to ``tol`` times the larger magnitude (at least 1)."""
    octonic = np.asarray(octonic)
    classical = np.asarray(classical)
    err = float(np.max(np.abs(octonic - classical))) if octonic.size else 0.0
    scale = max(1.0, float(np.max(np.abs(octonic))), float(np.max(np.abs(classical))))
    if not err <= tol * scale:
        raise PathMismatchError(f"{what}: octonic and classical routes differ by {err:.3e} "
                                f"(allowed {tol * scale:.3e})")
    return err


@dataclass(frozen=True, eq=False)
class PotentialOcton:
    """Scalar potential ``phi`` and vector potential ``A`` with optional time derivatives."""

    grid: Grid3
    phi: np.ndarray
    A: np.ndarray
    phi_t: np.ndarray | None = None
    A_t: np.ndarray | None = None
    phi_tt: np.ndarray | None = None
    A_tt: np.ndarray | None = None

    def __post_init__(self):
        g = self.grid
        for name in ("phi", "phi_t", "phi_tt"):
            object.__setattr__(self, name, _scalar(g, getattr(self, name)))
        for name in ("A", "A_t", "A_tt"):
            object.__setattr__(self, name, _vector(g, getattr(self, name)))

    def _octon(self, phi, A) -> OctonField:
        return OctonField.from_parts(self.grid, scalar=phi, vector=A)

    def octon(self) -> OctonField:
        return self._octon(self.phi, self.A)

    def time_slice(self, order: int = 1) -> TimeSlice:
        d1 = self._octon(_need(self.phi_t, "d(phi)/dt"), _need(self.A_t, "dA/dt"))
        d2 = None
        if order >= 2:
            d2 = self._octon(_need(self.phi_tt, "d2(phi)/dt2"), _need(self.A_tt, "d2A/dt2"))
        return TimeSlice(self.octon(), d1, d2)


@dataclass(frozen=True, eq=False)
class CurrentOcton:
    """Charge density ``rho`` and current density ``j``; scalars broadcast over the grid."""

    grid: Grid3
    rho: np.ndarray = 0.0
    j: np.ndarray = (0.0, 0.0, 0.0)
    rho_t: np.ndarray | None = None
    j_t: np.ndarray | None = None

    def __post_init__(self):
        g = self.grid
        object.__setattr__(self, "rho", _scalar(g, self.rho))
        object.__setattr__(self, "j", _vector(g, self.j))
        object.__setattr__(self, "rho_t", _scalar(g, self.rho_t))
        object.__setattr__(self, "j_t", _vector(g, self.j_t))

    @classmethod
    def vacuum(cls, grid: Grid3) -> CurrentOcton:
        return cls(grid, 0.0, (0.0, 0.0, 0.0), 0.0, (0.0, 0.0, 0.0))

    def octon(self, units: Units = Units()) -> OctonField:
        return OctonField.from_parts(self.grid, scalar=FOUR_PI * self.rho,
                                     vector=(FOUR_PI / units.c) * self.j)

    def time_slice(self, units: Units = Units()) -> TimeSlice:
        rho_t = np.zeros(self.grid.shape) if self.rho_t is None else self.rho_t
        j_t = np.zeros((3,) + self.grid.shape) if self.j_t is None else self.j_t
        d1 = OctonField.from_parts(self.grid, scalar=FOUR_PI * rho_t,
                                   vector=(FOUR_PI / units.c) * j_t)
        return TimeSlice(self.octon(units), d1)


@dataclass(frozen=True, eq=False)
class FieldOcton:
    """Real electric field ``E`` (polar) and magnetic field ``H`` (axial)."""

    grid: Grid3
    E: np.ndarray
    H: np.ndarray
    E_t: np.ndarray | None = None
    H_t: np.ndarray | None = None
    E_tt: np.ndarray | None = None
    H_tt: np.ndarray | None = None

    def __post_init__(self):
        for name in ("E", "H", "E_t", "H_t", "E_tt", "H_tt"):
            object.__setattr__(self, name, _vector(self.grid, getattr(self, name)))

    @classmethod
    def static(cls, grid: Grid3, E, H) -> FieldOcton:
        zero = np.zeros((3,) + grid.shape)
        return cls(grid, E, H, zero, zero, zero, zero)

    @staticmethod
    def _build(grid, E, H) -> OctonField:
        return OctonField.from_parts(grid, vector=-E, pseudovector=XI * H)

    def octon(self) -> OctonField:
        return self._build(self.grid, self.E, self.H)

    def time_slice(self, order: int = 1) -> TimeSlice:
        d1 = self._build(self.grid, _need(self.E_t, "dE/dt"), _need(self.H_t, "dH/dt"))
        d2 = None
        if order >= 2:
            d2 = self._build(self.grid, _need(self.E_tt, "d2E/dt2"), _need(self.H_tt, "d2H/dt2"))
        return TimeSlice(self.octon(), d1, d2)


@dataclass(eq=False)
class RelationResiduals:
    """Left-minus-right residual of one relation, split by grade.

    ``octon`` holds the raw octon-valued residual the grades were read from.
    """

    scalar: np.ndarray
    pseudoscalar: np.ndarray
    vector: np.ndarray
    pseudovector: np.ndarray
    grid: Grid3
    octon: OctonField | None = field(default=None, repr=False)
    names: tuple[str, str, str, str] = ("scalar", "pseudoscalar", "vector", "pseudovector")

    def parts(self) -> dict[str, np.ndarray]:
        return dict(zip(self.names, (self.scalar, self.pseudoscalar, self.vector, self.pseudovector)))

    def norms(self, band: int = 0) -> dict[str, dict[str, float]]:
        out = {}
        for name, arr in self.parts().items():
            linf, l2 = field_norms(interior(arr, band), self.grid)
            out[name] = {"linf": linf, "l2": l2}
        return out


class PotentialFields(NamedTuple):
    E: np.ndarray
    H: np.ndarray
    gauge: np.ndarray
    octon: OctonField


def field_from_potentials(pot: PotentialOcton, units: Units = Units()) -> PotentialFields:
    """E and H from the potentials, plus the Lorenz-gauge residual.

    Applying P to ``phi + A`` gives ``gauge - E + xi H``; that octon is
    returned too and checked against the classical formulas.
    """
    c, h = units.c, pot.grid.h
    phi_t = _need(pot.phi_t, "d(phi)/dt")
    A_t = _need(pot.A_t, "dA/dt")

    jac_A = vc.jacobian(pot.A, h)
    E = -A_t / c - vc.gradient(pot.phi, h)
    H = vc.curl(pot.A, jac=jac_A)
    gauge = phi_t / c + vc.div(pot.A, jac=jac_A)

    P = p_apply(pot.time_slice(), c)
    check_agreement(P.scalar, gauge, "Lorenz gauge term")
    check_agreement(P.vector, -E, "electric field")
    check_agreement(P.pseudoscalar, 0.0, "pseudoscalar of P(Pi)")
    check_agreement(P.pseudovector, XI * H, "magnetic field")
    return PotentialFields(E, H, gauge, P)


class GeneralizedResidual(NamedTuple):
    full: OctonField        # P+ P Pi - J, by operator composition
    wave: OctonField        # (1/c^2 d_tt - Laplacian) Pi - J, 7-point Laplacian
    commutator: OctonField  # [nabla, nabla] Pi from discrete mixed differences


def generalized_equation_residual(pot: PotentialOcton, cur: CurrentOcton,
                                  units: Units = Units()) -> GeneralizedResidual:
    grid = _same_grid(pot, cur)
    c = units.c
    s = pot.time_slice(order=2)
    J = cur.octon(units)
    full = p_conj_apply(p_apply_slice(s, c), c) - J
    wave = OctonField(grid, s.d2_dt2.data / c**2 - laplacian_array(s.value.data, grid.h)) - J
    return GeneralizedResidual(full, wave, nabla_nabla_cross(s.value))


def maxwell_residual(F: FieldOcton, cur: CurrentOcton, units: Units = Units()) -> RelationResiduals:
    """Grade-split ``P+ F - J`` into the four Maxwell residuals.

    scalar        div E - 4 pi rho
    pseudovector  rot E + (1/c) dH/dt
    pseudoscalar  div H
    vector        rot H - (4 pi / c) j - (1/c) dE/dt
    """
    grid = _same_grid(F, cur)
    c, h = units.c, grid.h
    E_t, H_t = _need(F.E_t, "dE/dt"), _need(F.H_t, "dH/dt")

    X = p_conj_apply(F.time_slice(), c) - cur.octon(units)
    # P+F carries div H as -xi E and rot E + H_t/c as xi (axial).
    o_s, o_v = X.scalar, X.vector
    o_ps, o_pv = XI * X.pseudoscalar, -XI * X.pseudovector

    jE, jH = vc.jacobian(F.E, h), vc.jacobian(F.H, h)
    s = vc.div(F.E, jac=jE) - FOUR_PI * cur.rho
    pv = vc.curl(F.E, jac=jE) + H_t / c
    ps = vc.div(F.H, jac=jH)
    v = vc.curl(F.H, jac=jH) - (FOUR_PI / c) * cur.j - E_t / c

    check_agreement(o_s, s, "Gauss law")
    check_agreement(o_pv, pv, "Faraday law")
    check_agreement(o_ps, ps, "div H")
    check_agreement(o_v, v, "Ampere law")
    return RelationResiduals(o_s.real, o_ps.real, o_v.real, o_pv.real, grid, X,
                             names=("gauss", "div_h", "ampere", "faraday"))


class WaveResiduals(NamedTuple):
    wave_e: np.ndarray
    wave_h: np.ndarray
    continuity: np.ndarray


def field_wave_residuals(F: FieldOcton, cur: CurrentOcton, units: Units = Units(),
                         laplacian_sign: int = -1) -> WaveResiduals:
    """Wave equations for E and H and the continuity equation.

    ``laplacian_sign=-1`` is the d'Alembertian ``(1/c^2) d_tt - Laplacian``.
    ``+1`` evaluates the same expressions with ``+ Laplacian``, which is what
    a plane wave must *not* satisfy; it exists so that difference can be
    measured.  Missing source time derivatives are taken as zero.

    The octonic route is ``(1/c^2) F_tt + sign Laplacian F - P J``.
    """
    if laplacian_sign not in (-1, 1):
        raise ValueError("laplacian_sign must be -1 or +1")
    grid = _same_grid(F, cur)
    c, h = units.c, grid.h
    E_tt, H_tt = _need(F.E_tt, "d2E/dt2"), _need(F.H_tt, "d2H/dt2")
    Js = cur.time_slice(units)
    rho_t = Js.d_dt.scalar.real / FOUR_PI
    j_t = Js.d_dt.vector.real * (c / FOUR_PI)

    Ftt = FieldOcton._build(grid, E_tt, H_tt)
    lapF = laplacian_array(F.octon().data, h)
    R = Ftt.data / c**2 + laplacian_sign * lapF - p_apply(Js, c).data
    o_e, o_h = -R[1:4], -XI * R[5:8]
    o_cont = R[0] * (-c / FOUR_PI)

    wave_e = (E_tt / c**2 + laplacian_sign * laplacian_array(F.E, h)
              + FOUR_PI * vc.gradient(cur.rho, h) + (FOUR_PI / c**2) * j_t)
    wave_h = (H_tt / c**2 + laplacian_sign * laplacian_array(F.H, h)
              - (FOUR_PI / c) * vc.curl(cur.j, h))
    continuity = rho_t + vc.div(cur.j, h)

    check_agreement(o_e, wave_e, "E wave equation")
    check_agreement(o_h, wave_h, "H wave equation")
    check_agreement(R[4], 0.0, "pseudoscalar of wave equation")
    check_agreement(o_cont, continuity, "continuity equation")
    return WaveResiduals(wave_e, wave_h, continuity)


class _Terms:
    """Pointwise classical building blocks shared by the quadratic relations."""

    def __init__(self, F: FieldOcton, cur: CurrentOcton, units: Units):
        h = F.grid.h
        self.c = units.c
        self.E, self.H = F.E, F.H
        self.E_t, self.H_t = _need(F.E_t, "dE/dt"), _need(F.H_t, "dH/dt")
        self.rho, self.j = cur.rho, cur.j
        self.jE, self.jH = vc.jacobian(F.E, h), vc.jacobian(F.H, h)
        self.divE, self.divH = vc.div(F.E, jac=self.jE), vc.div(F.H, jac=self.jH)
        self.rotE, self.rotH = vc.curl(F.E, jac=self.jE), vc.curl(F.H, jac=self.jH)


def _octonic_product(left: np.ndarray, F: FieldOcton, cur: CurrentOcton, units: Units) -> OctonField:
    X = p_conj_apply(F.time_slice(), units.c) - cur.octon(units)
    return OctonField(F.grid, multiply_arrays(left, X.data))


def _div_cross(a, jac_a, b, jac_b):
    """div(a x b) by the product rule on the Jacobians."""
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    return (np.einsum("mkl,mk...,l...->...", eps, jac_a, b)
            + np.einsum("mkl,k...,ml...->...", eps, a, jac_b))


def power_relations(F: FieldOcton, cur: CurrentOcton, units: Units = Units(),
                    tol: float = RELATION_TOL) -> RelationResiduals:
    """Energy/momentum relations from left-multiplying the Maxwell octon by ``E + xi H``.

    scalar        d_t (E^2+H^2)/8pi + (c/4pi) div(E x H) + j.E             (Poynting)
    pseudoscalar  (1/c)(E.H_t - H.E_t) + H.rot H + E.rot E - (4pi/c) j.H
    vector        momentum balance with the Maxwell stress divergence
    pseudovector  E x rot H - H x rot E + H div E - E div H - (1/c)(E x E_t + H x H_t)
                  - 4pi rho H + (4pi/c) j x E
    """
    grid = _same_grid(F, cur)
    t = _Terms(F, cur, units)
    c, E, H, j, rho = t.c, t.E, t.H, t.j, t.rho

    left = OctonField.from_parts(grid, vector=E, pseudovector=XI * H).data
    M = _octonic_product(left, F, cur, units)

    r57 = ((vc.dot(E, t.E_t) + vc.dot(H, t.H_t)) / FOUR_PI
           + (c / FOUR_PI) * _div_cross(E, t.jE, H, t.jH) + vc.dot(j, E))
    r59 = ((vc.dot(E, t.H_t) - vc.dot(H, t.E_t)) / c + vc.dot(H, t.rotH) + vc.dot(E, t.rotE)
           - (FOUR_PI / c) * vc.dot(j, H))
    r61 = ((vc.cross(t.E_t, H) + vc.cross(E, t.H_t)) / (FOUR_PI * c)
           + (vc.grad_dot(E, t.jE, E, t.jE) + vc.grad_dot(H, t.jH, H, t.jH)) / (2 * FOUR_PI)
           + rho * E + vc.cross(j, H) / c
           - (E * t.divE + vc.advective(E, t.jE) + H * t.divH + vc.advective(H, t.jH)) / FOUR_PI)
    r63 = (vc.cross(E, t.rotH) - vc.cross(H, t.rotE) + H * t.divE - E * t.divH
           - (vc.cross(E, t.E_t) + vc.cross(H, t.H_t)) / c
           - FOUR_PI * rho * H + (FOUR_PI / c) * vc.cross(j, E))

    check_agreement(M.scalar * (-c / FOUR_PI), r57, "Poynting theorem", tol)
    check_agreement(M.pseudoscalar * -XI, r59, "pseudoscalar power relation", tol)
    check_agreement(M.vector / -FOUR_PI, r61, "momentum relation", tol)
    check_agreement(M.pseudovector * -XI, r63, "pseudovector power relation", tol)
    return RelationResiduals(r57, r59, r61, r63, grid, M,
                             names=("poynting", "ps_corollary", "momentum", "pv_relation"))


def lorentz_invariant_relations(F: FieldOcton, cur: CurrentOcton, units: Units = Units(),
                                tol: float = RELATION_TOL) -> RelationResiduals:
    """Relations for the two Lorentz invariants, from left-multiplying by ``xi H - E``.

    scalar        d_t (E^2-H^2)/8pi - (c/4pi)(E.rot H + H.rot E) + j.E
    pseudoscalar  (1/c) d_t(E.H) + E.rot E - H.rot H + (4pi/c) j.H
    vector        grad (E^2-H^2)/8pi + ... (Gibbs form of the vector grade)
    pseudovector  grad(E.H) minus its expansion in divergences and convective terms
    """
    grid = _same_grid(F, cur)
    t = _Terms(F, cur, units)
    c, E, H, j, rho = t.c, t.E, t.H, t.j, t.rho

    left = OctonField.from_parts(grid, vector=-E, pseudovector=XI * H).data
    M = _octonic_product(left, F, cur, units)

    r67 = ((vc.dot(E, t.E_t) - vc.dot(H, t.H_t)) / FOUR_PI
           - (c / FOUR_PI) * (vc.dot(E, t.rotH) + vc.dot(H, t.rotE)) + vc.dot(j, E))
    r69 = ((vc.dot(t.E_t, H) + vc.dot(E, t.H_t)) / c + vc.dot(E, t.rotE) - vc.dot(H, t.rotH)
           + (FOUR_PI / c) * vc.dot(j, H))
    r71 = ((vc.grad_dot(E, t.jE, E, t.jE) - vc.grad_dot(H, t.jH, H, t.jH)) / (2 * FOUR_PI)
           + (vc.cross(E, t.H_t) + vc.cross(H, t.E_t)) / (FOUR_PI * c)
           + rho * E - vc.cross(j, H) / c
           - (E * t.divE + vc.advective(E, t.jE) - H * t.divH - vc.advective(H, t.jH)) / FOUR_PI)
    r73 = (vc.grad_dot(E, t.jE, H, t.jH)
           - (H * t.divE + E * t.divH + vc.advective(E, t.jH) + vc.advective(H, t.jE)
              - FOUR_PI * rho * H - (FOUR_PI / c) * vc.cross(j, E)
              - vc.cross(H, t.H_t) / c + vc.cross(E, t.E_t) / c))

    check_agreement(M.scalar * (c / FOUR_PI), r67, "first invariant relation", tol)
    check_agreement(M.pseudoscalar * XI, r69, "second invariant relation", tol)
    check_agreement(M.vector / FOUR_PI, r71, "first invariant gradient relation", tol)
    check_agreement(M.pseudovector * XI, r73, "second invariant gradient relation", tol)
    return RelationResiduals(r67, r69, r71, r73, grid, M,
                             names=("inv1_rate", "inv2_rate", "inv1_gradient", "inv2_gradient"))


class InvariantScalars(NamedTuple):
    energy_density: np.ndarray
    poynting: np.ndarray
    inv1: np.ndarray
    inv2: np.ndarray


def invariant_scalars(E: np.ndarray, H: np.ndarray, units: Units = Units()) -> InvariantScalars:
    """Energy density, Poynting vector ``(c/4pi) E x H`` and the two Lorentz invariants."""
    E, H = np.asarray(E, dtype=float), np.asarray(H, dtype=float)
    E2, H2 = vc.dot(E, E), vc.dot(H, H)
    return InvariantScalars((E2 + H2) / (2 * FOUR_PI), (units.c / FOUR_PI) * vc.cross(E, H),
                            (E2 - H2) / (2 * FOUR_PI), vc.dot(E, H))


def residual_report(*results: RelationResiduals, band: int = 0) -> dict[str, dict[str, float]]:
    """Flatten residuals to ``{relation_name: {"linf": .., "l2": ..}}``."""
    report = {}
    for r in results:
        report.update(r.norms(band))
    return report
