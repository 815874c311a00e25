"""Maxwell's equations in matter via complex-conjugation extraction.

Three octons are built from the four matter fields::

    F_EB = -E + xi B
    F_DH = -D + xi H
    F0   = xi H - xi E - B - D  (= xi F_EB + F_DH)

``P+ F_EB - (P+ F_EB)*`` keeps only the homogeneous pair (div B, Faraday),
``P+ F_DH + (P+ F_DH)* - 2J`` only the sourced pair (Gauss, Ampere), and
``Re{P+ F0} - J`` carries all four at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import vectorcalc as vc
from .algebra import XI
from .electrodynamics import (
    FOUR_PI,
    PATH_TOL,
    CurrentOcton,
    RelationResiduals,
    Units,
    _need,
    _same_grid,
    _vector,
    check_agreement,
)
from .fieldgrid import Grid3, OctonField, TimeSlice, p_conj_apply


@dataclass(frozen=True, eq=False)
class MatterFields:
    """E, D (polar) and H, B (axial) on one grid, with optional time derivatives."""

    grid: Grid3
    E: np.ndarray
    D: np.ndarray
    H: np.ndarray
    B: np.ndarray
    E_t: np.ndarray | None = None
    D_t: np.ndarray | None = None
    H_t: np.ndarray | None = None
    B_t: np.ndarray | None = None

    def __post_init__(self):
        for name in ("E", "D", "H", "B", "E_t", "D_t", "H_t", "B_t"):
            try:
                value = _vector(self.grid, getattr(self, name))
            except TypeError:
                raise TypeError(f"{name} must be real") from None
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class ConstitutiveModel:
    """Homogeneous isotropic medium: D = epsilon E, B = mu H."""

    epsilon: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if not (self.epsilon > 0 and self.mu > 0):
            raise ValueError("epsilon and mu must be positive")

    def phase_speed(self, units: Units = Units()) -> float:
        return units.c / np.sqrt(self.epsilon * self.mu)

    def close(self, grid: Grid3, E, H, E_t=None, H_t=None) -> MatterFields:
        E, H = _vector(grid, E), _vector(grid, H)
        E_t, H_t = _vector(grid, E_t), _vector(grid, H_t)
        scale = lambda k, v: None if v is None else k * v  # noqa: E731
        return MatterFields(grid, E, self.epsilon * E, H, self.mu * H,
                            E_t, scale(self.epsilon, E_t), H_t, scale(self.mu, H_t))


class MatterOctons(NamedTuple):
    F_EB: OctonField
    F_DH: OctonField
    F0: OctonField


def _eb(grid, E, B):
    return OctonField.from_parts(grid, vector=-E, pseudovector=XI * B)


def _dh(grid, D, H):
    return OctonField.from_parts(grid, vector=-D, pseudovector=XI * H)


def _f0(grid, E, D, H, B):
    return OctonField.from_parts(grid, vector=-D - XI * E, pseudovector=XI * H - B)


def build_octons(m: MatterFields) -> MatterOctons:
    g = m.grid
    F_EB, F_DH, F0 = _eb(g, m.E, m.B), _dh(g, m.D, m.H), _f0(g, m.E, m.D, m.H, m.B)
    if not np.array_equal(F0.data, (XI * F_EB + F_DH).data):
        raise ArithmeticError("F0 differs from xi F_EB + F_DH")
    return MatterOctons(F_EB, F_DH, F0)


def _slices(m: MatterFields) -> tuple[TimeSlice, TimeSlice, TimeSlice]:
    g = m.grid
    E_t, D_t = _need(m.E_t, "dE/dt"), _need(m.D_t, "dD/dt")
    H_t, B_t = _need(m.H_t, "dH/dt"), _need(m.B_t, "dB/dt")
    octs = build_octons(m)
    return (TimeSlice(octs.F_EB, _eb(g, E_t, B_t)),
            TimeSlice(octs.F_DH, _dh(g, D_t, H_t)),
            TimeSlice(octs.F0, _f0(g, E_t, D_t, H_t, B_t)))


class FirstPair(NamedTuple):
    div_b: np.ndarray
    faraday: np.ndarray
    octon: OctonField


class SecondPair(NamedTuple):
    gauss: np.ndarray
    ampere: np.ndarray
    octon: OctonField


def first_pair_residual(m: MatterFields, units: Units = Units()) -> FirstPair:
    """div B and rot E + (1/c) dB/dt from ``P+ F_EB - (P+ F_EB)*``.

    The difference is purely imaginary: ``-2 xi div B`` on E and
    ``2 xi (rot E + B_t / c)`` on the axial units.
    """
    c = units.c
    s_eb, _, _ = _slices(m)
    X = p_conj_apply(s_eb, c)
    Y = X - X.conj()
    if np.any(Y.scalar) or np.any(Y.vector):
        raise ArithmeticError("conjugate difference left scalar or vector content")
    div_b = Y.pseudoscalar / (-2 * XI)
    faraday = Y.pseudovector / (2 * XI)

    jE = vc.jacobian(m.E, m.grid.h)
    check_agreement(div_b, vc.div(m.B, m.grid.h), "div B", PATH_TOL)
    check_agreement(faraday, vc.curl(m.E, jac=jE) + m.B_t / c, "Faraday law", PATH_TOL)
    return FirstPair(div_b.real, faraday.real, Y)


def second_pair_residual(m: MatterFields, cur: CurrentOcton, units: Units = Units()) -> SecondPair:
    """div D - 4 pi rho and rot H - (4 pi/c) j - (1/c) dD/dt from ``P+ F_DH + (P+ F_DH)* - 2J``."""
    _same_grid(m, cur)
    c = units.c
    _, s_dh, _ = _slices(m)
    X = p_conj_apply(s_dh, c)
    Z = X + X.conj() - 2 * cur.octon(units)
    if np.any(Z.pseudoscalar) or np.any(Z.pseudovector):
        raise ArithmeticError("conjugate sum left pseudoscalar or pseudovector content")
    gauss, ampere = Z.scalar / 2, Z.vector / 2

    h = m.grid.h
    check_agreement(gauss, vc.div(m.D, h) - FOUR_PI * cur.rho, "Gauss law", PATH_TOL)
    check_agreement(ampere, vc.curl(m.H, h) - (FOUR_PI / c) * cur.j - m.D_t / c,
                    "Ampere law", PATH_TOL)
    return SecondPair(gauss.real, ampere.real, Z)


def combined_residual(m: MatterFields, cur: CurrentOcton, units: Units = Units()) -> RelationResiduals:
    """All four matter equations from ``Re{P+ F0} - J``.

    Grades of the octon: scalar = Gauss, pseudoscalar = div B, vector = Ampere,
    pseudovector = -(Faraday).  The returned residuals use the classical signs
    and are required to match the two conjugation pairs exactly.
    """
    grid = _same_grid(m, cur)
    _, _, s0 = _slices(m)
    W = OctonField(grid, p_conj_apply(s0, units.c).data.real) - cur.octon(units)
    res = RelationResiduals(W.scalar.real, W.pseudoscalar.real, W.vector.real,
                            -W.pseudovector.real, grid, W,
                            names=("gauss", "div_b", "ampere", "faraday"))

    first = first_pair_residual(m, units)
    second = second_pair_residual(m, cur, units)
    for name, a, b in (("gauss", res.scalar, second.gauss), ("div B", res.pseudoscalar, first.div_b),
                       ("ampere", res.vector, second.ampere), ("faraday", res.pseudovector, first.faraday)):
        if not np.array_equal(a, b):
            err = float(np.max(np.abs(a - b)))
            raise ArithmeticError(f"combined {name} residual differs from the pair residual by {err:.3e}")
    return res


def conjugation_defect(m: MatterFields, units: Units = Units()) -> OctonField:
    """``(P+ F_EB)* - P+ (F_EB*)``: nonzero whenever rot E or rot B is.

    Conjugation does not commute with the operator because the cross-product
    structure constants carry xi.
    """
    s_eb, _, _ = _slices(m)
    lhs = p_conj_apply(s_eb, units.c).conj()
    rhs = p_conj_apply(TimeSlice(s_eb.value.conj(), s_eb.d_dt.conj()), units.c)
    return lhs - rhs
