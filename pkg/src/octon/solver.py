"""Time-domain evolution of E and H from the vector and pseudovector grades of ``P+ F = J``.

The curls are read off the octon ``nabla F``: its polar part is ``-rot H``
and its axial part ``-xi rot E``.  Divergence grades are monitored, never
projected out.  Classical RK4 on the collocated periodic lattice.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable

import numpy as np

from . import vectorcalc as vc
from .algebra import XI
from .electrodynamics import (
    FOUR_PI,
    CurrentOcton,
    FieldOcton,
    Units,
    invariant_scalars,
    maxwell_residual,
    power_relations,
)
from .errors import ConfigError, NumericalAbort
from .fieldgrid import Grid3, OctonField, field_norms, nabla_apply


class ScenarioKind(enum.Enum):
    PLANE_WAVE = "plane_wave"
    GAUSSIAN_PULSE = "gaussian_pulse"
    STATIC_LINEAR = "static_linear"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Source:
    """Charge and current densities as functions of ``(X, Y, Z, t)``.

    ``j`` returns an array of shape ``(3, ...)``.  Missing entries are zero.
    """

    rho: Callable | None = None
    j: Callable | None = None
    rho_t: Callable | None = None

    def current(self, grid: Grid3, t: float) -> CurrentOcton:
        X, Y, Z = grid.coords()
        rho = 0.0 if self.rho is None else self.rho(X, Y, Z, t)
        j = (0.0, 0.0, 0.0) if self.j is None else self.j(X, Y, Z, t)
        rho_t = 0.0 if self.rho_t is None else self.rho_t(X, Y, Z, t)
        return CurrentOcton(grid, rho, j, rho_t)


@dataclass(frozen=True)
class Scenario:
    kind: ScenarioKind = ScenarioKind.PLANE_WAVE
    amplitude: float = 1.0
    mode: tuple[int, int, int] = (0, 0, 1)
    wavevector: tuple[float, float, float] | None = None
    polarization: tuple[float, float, float] = (1.0, 0.0, 0.0)
    width: float | None = None
    center: tuple[float, float, float] | None = None
    epsilon: float = 1.0
    mu: float = 1.0
    source: Source | None = None
    initial: Callable | None = None   # CUSTOM: grid -> (E, H)
    exact: Callable | None = None     # CUSTOM: (grid, t) -> (E, H)

    def __post_init__(self):
        object.__setattr__(self, "kind", ScenarioKind(self.kind))
        if not (self.epsilon > 0 and self.mu > 0):
            raise ValueError("epsilon and mu must be positive")


@dataclass
class State:
    t: float
    E: np.ndarray
    H: np.ndarray

    def copy(self) -> State:
        return State(self.t, self.E.copy(), self.H.copy())


@dataclass
class Problem:
    """An initialised scenario: starting state, medium, sources and optional exact solution."""

    grid: Grid3
    state: State
    units: Units = field(default_factory=Units)
    epsilon: float = 1.0
    mu: float = 1.0
    source: Source | None = None
    exact: Callable[[float], tuple[np.ndarray, np.ndarray]] | None = None
    period: float | None = None


def _mode_from(s: Scenario, grid: Grid3) -> np.ndarray:
    if s.wavevector is None:
        mode = np.asarray(s.mode, dtype=float)
    else:
        mode = np.asarray(s.wavevector, dtype=float) * np.asarray(grid.lengths) / (2 * np.pi)
    if not np.allclose(mode, np.round(mode), atol=1e-9):
        raise ValueError(f"wavevector is not commensurate with the periodic box (modes {mode})")
    mode = np.round(mode)
    if not np.any(mode):
        raise ValueError("wavevector must be nonzero")
    return mode


def init_scenario(s: Scenario, grid: Grid3, units: Units = Units()) -> Problem:
    c = units.c
    common = dict(units=units, epsilon=s.epsilon, mu=s.mu, source=s.source)

    if s.kind is ScenarioKind.PLANE_WAVE:
        from .analytic import plane_wave_parts
        mode = _mode_from(s, grid)

        def exact(t):
            p = plane_wave_parts(grid, t, mode, s.polarization, s.amplitude, c, s.epsilon, s.mu)
            return p["E"], p["H"]

        omega = plane_wave_parts(grid, 0.0, mode, s.polarization, 1.0, c, s.epsilon, s.mu)["omega"]
        E, H = exact(0.0)
        return Problem(grid, State(0.0, E, H), exact=exact, period=2 * np.pi / omega, **common)

    if s.kind is ScenarioKind.GAUSSIAN_PULSE:
        mode = _mode_from(s, grid)
        axis = int(np.flatnonzero(mode)[0])
        if np.count_nonzero(mode) != 1:
            raise ValueError("gaussian pulse propagates along one lattice axis")
        if s.width is None or s.width <= 0:
            raise ValueError("gaussian pulse needs a positive width")
        if s.width < 4 * grid.h[axis]:
            raise ValueError(f"pulse width {s.width} is below 4 grid spacings ({4 * grid.h[axis]})")
        khat = np.zeros(3)
        khat[axis] = np.sign(mode[axis])
        e = np.asarray(s.polarization, dtype=float)
        e = e / np.linalg.norm(e)
        if abs(e @ khat) > 1e-12:
            raise ValueError("polarization must be perpendicular to the propagation axis")
        b = np.sqrt(s.epsilon / s.mu) * np.cross(khat, e)
        L = grid.lengths[axis]
        center = grid.origin[axis] + L / 2 if s.center is None else s.center[axis]
        speed = c / np.sqrt(s.epsilon * s.mu)
        coord = grid.coords()[axis]

        def exact(t):
            g = np.zeros(grid.shape)
            for n in range(-3, 4):
                d = coord - center - khat[axis] * speed * t + n * L
                g += np.exp(-0.5 * (d / s.width) ** 2)
            g *= s.amplitude
            return e.reshape(3, 1, 1, 1) * g, b.reshape(3, 1, 1, 1) * g

        E, H = exact(0.0)
        return Problem(grid, State(0.0, E, H), exact=exact, period=L / speed, **common)

    if s.kind is ScenarioKind.STATIC_LINEAR:
        # Non-periodic probe: meaningful on interior sites only.
        X, Y, Z = grid.coords()
        E = s.amplitude * np.stack([X, Y, Z])
        H = np.zeros_like(E)
        rho0 = 3 * s.amplitude * s.epsilon / FOUR_PI
        source = s.source or Source(rho=lambda X, Y, Z, t: np.full(X.shape, rho0))
        common["source"] = source
        return Problem(grid, State(0.0, E, H), exact=lambda t: (E, H), **common)

    if s.initial is None:
        raise ValueError("custom scenario needs an `initial` callable")
    E, H = s.initial(grid)
    exact = None if s.exact is None else (lambda t: s.exact(grid, t))
    return Problem(grid, State(0.0, np.asarray(E, float), np.asarray(H, float)), exact=exact, **common)


@dataclass(frozen=True)
class SolverConfig:
    grid: Grid3
    dt: float | None = None
    steps: int | None = None
    sample_every: int = 1
    allow_high_cfl: bool = False
    integrator: str = "rk4"
    snapshot_every: int = 0

    MAX_CFL = 0.5

    def resolved_dt(self, units: Units = Units()) -> float:
        return 0.25 * min(self.grid.h) / units.c if self.dt is None else self.dt

    def cfl(self, units: Units = Units()) -> float:
        return self.resolved_dt(units) * units.c * math.sqrt(sum(1 / d**2 for d in self.grid.h))

    def validate(self, units: Units = Units()) -> None:
        if self.integrator != "rk4":
            raise ConfigError("integrator", f"only rk4 is available, got {self.integrator!r}")
        if self.dt is not None and not self.dt > 0:
            raise ConfigError("dt", "must be positive")
        if self.steps is not None and self.steps < 1:
            raise ConfigError("steps", "must be a positive integer")
        if self.sample_every < 1:
            raise ConfigError("sample_every", "must be a positive integer")
        if self.cfl(units) > self.MAX_CFL and not self.allow_high_cfl:
            raise ConfigError("dt", f"CFL number {self.cfl(units):.3f} exceeds {self.MAX_CFL}; "
                                    "pass allow_high_cfl to override")


def curls(E: np.ndarray, H: np.ndarray, grid: Grid3) -> tuple[np.ndarray, np.ndarray]:
    """``(rot E, rot H)`` extracted from the octon ``nabla (-E + xi H)``."""
    F = OctonField.from_parts(grid, vector=-E, pseudovector=XI * H)
    nF = nabla_apply(F)
    return (XI * nF.pseudovector).real, -nF.vector.real


def rhs(state: State, problem: Problem) -> tuple[np.ndarray, np.ndarray]:
    """Time derivatives of E and H from the two curl grades.

    ``dE/dt = (c/eps)(rot H) - (4 pi/eps) j`` and ``dH/dt = -(c/mu) rot E``.
    """
    c = problem.units.c
    rotE, rotH = curls(state.E, state.H, problem.grid)
    dE = (c / problem.epsilon) * rotH
    if problem.source is not None and problem.source.j is not None:
        X, Y, Z = problem.grid.coords()
        dE = dE - (FOUR_PI / problem.epsilon) * np.asarray(problem.source.j(X, Y, Z, state.t))
    dH = -(c / problem.mu) * rotE
    return dE, dH


def step(state: State, problem: Problem, dt: float, step_index: int = 0) -> State:
    """One classical RK4 step."""
    # overflow is caught below and reported as an abort
    with np.errstate(over="ignore", invalid="ignore"):
        k1 = rhs(state, problem)
        s2 = State(state.t + dt / 2, state.E + dt / 2 * k1[0], state.H + dt / 2 * k1[1])
        k2 = rhs(s2, problem)
        s3 = State(state.t + dt / 2, state.E + dt / 2 * k2[0], state.H + dt / 2 * k2[1])
        k3 = rhs(s3, problem)
        s4 = State(state.t + dt, state.E + dt * k3[0], state.H + dt * k3[1])
        k4 = rhs(s4, problem)
        E = state.E + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        H = state.H + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
    if not (np.all(np.isfinite(E)) and np.all(np.isfinite(H))):
        raise NumericalAbort(step_index, "non-finite field values")
    return State(state.t + dt, E, H)


CSV_COLUMNS = ("step", "time", "energy", "Sx", "Sy", "Sz", "inv1", "inv2",
               "res_scalar", "res_pseudoscalar", "res_vector", "res_pseudovector",
               "continuity", "poynting", "l2err")


@dataclass(frozen=True)
class DiagnosticsRecord:
    step: int
    time: float
    energy: float
    Sx: float
    Sy: float
    Sz: float
    inv1: float
    inv2: float
    res_scalar: float
    res_pseudoscalar: float
    res_vector: float
    res_pseudovector: float
    continuity: float
    poynting: float
    l2err: float | None = None

    def row(self) -> list[str]:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            out.append("" if v is None else (str(v) if isinstance(v, int) else repr(float(v))))
        return out


def l2_error(state: State, problem: Problem) -> float | None:
    """Volume-averaged RMS error of E against the exact solution."""
    if problem.exact is None:
        return None
    E_ref, _ = problem.exact(state.t)
    err = np.sum((state.E - E_ref) ** 2) / (np.prod(problem.grid.shape))
    return float(np.sqrt(err))


def diagnose(state: State, problem: Problem, step_index: int = 0) -> DiagnosticsRecord:
    g, units = problem.grid, problem.units
    dV = g.cell_volume
    E_t, H_t = rhs(state, problem)
    inv = invariant_scalars(state.E, state.H, units)
    eps, mu = problem.epsilon, problem.mu
    cur = (problem.source or Source()).current(g, state.t)
    # With D = eps E and B = mu H the Poynting relation takes eps E_t, mu H_t.
    F = FieldOcton(g, state.E, state.H, eps * E_t, mu * H_t)
    if eps == 1.0 and mu == 1.0:
        mx = maxwell_residual(F, cur, units)
    else:
        from .matter import ConstitutiveModel, combined_residual
        m = ConstitutiveModel(eps, mu).close(g, state.E, state.H, E_t, H_t)
        mx = combined_residual(m, cur, units)
    pw = power_relations(F, cur, units)
    norm = lambda a: field_norms(a, g)[1]  # noqa: E731
    cont = cur.rho_t + vc.div(cur.j, g.h)
    S = inv.poynting.reshape(3, -1).sum(axis=1) * dV
    energy = (eps * vc.dot(state.E, state.E) + mu * vc.dot(state.H, state.H)) / (2 * FOUR_PI)
    return DiagnosticsRecord(
        step=step_index, time=state.t,
        energy=float(np.sum(energy) * dV),
        Sx=float(S[0]), Sy=float(S[1]), Sz=float(S[2]),
        inv1=float(np.sum(inv.inv1) * dV), inv2=float(np.sum(inv.inv2) * dV),
        res_scalar=norm(mx.scalar), res_pseudoscalar=norm(mx.pseudoscalar),
        res_vector=norm(mx.vector), res_pseudovector=norm(mx.pseudovector),
        continuity=norm(cont), poynting=norm(pw.scalar),
        l2err=l2_error(state, problem),
    )


def run(problem: Problem, cfg: SolverConfig, snapshot_dir: str | Path | None = None,
        final_state: list | None = None) -> list[DiagnosticsRecord]:
    """Advance ``problem`` and return diagnostics every ``cfg.sample_every`` steps.

    Without ``cfg.steps`` the run covers one period of the scenario.  When
    ``final_state`` is a list, the last state is appended to it.
    """
    units = problem.units
    cfg.validate(units)
    if cfg.grid != problem.grid:
        raise ConfigError("grid", "solver grid differs from the scenario grid")
    dt = cfg.resolved_dt(units)
    steps = cfg.steps
    if steps is None:
        if problem.period is None:
            raise ConfigError("steps", "needed for scenarios without a natural period")
        steps = max(1, int(round(problem.period / dt)))
        dt = problem.period / steps

    state = problem.state.copy()
    records = [diagnose(state, problem, 0)]
    _maybe_snapshot(state, problem, cfg, 0, snapshot_dir)
    for n in range(1, steps + 1):
        state = step(state, problem, dt, n)
        if n % cfg.sample_every == 0 or n == steps:
            records.append(diagnose(state, problem, n))
        _maybe_snapshot(state, problem, cfg, n, snapshot_dir)
    if final_state is not None:
        final_state.append(state)
    return records


def _maybe_snapshot(state, problem, cfg, n, snapshot_dir):
    if snapshot_dir is None or cfg.snapshot_every <= 0 or n % cfg.snapshot_every:
        return
    from .io import write_snapshot
    F = OctonField.from_parts(problem.grid, vector=-state.E, pseudovector=XI * state.H)
    write_snapshot(Path(snapshot_dir) / f"field_{n:06d}", F, time=state.t)


def energy_drift(records: list[DiagnosticsRecord]) -> float:
    e0 = records[0].energy
    return abs(records[-1].energy - e0) / e0 if e0 else abs(records[-1].energy)
