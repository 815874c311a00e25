import numpy as np
import pytest

from octon import vectorcalc as vc
from octon.analytic import plane_wave_parts
from octon.electrodynamics import FOUR_PI, Units
from octon.errors import ConfigError, NumericalAbort
from octon.fieldgrid import Grid3, diff_array
from octon.solver import (
    CSV_COLUMNS,
    Scenario,
    ScenarioKind,
    SolverConfig,
    Source,
    State,
    curls,
    energy_drift,
    init_scenario,
    rhs,
    run,
    step,
)

THIN = Grid3.box((4, 4, 32))


def test_curl_of_transverse_magnetic_field():
    g = THIN
    _, _, z = g.coords()
    f = np.sin(2 * np.pi * z)
    H = np.stack([0 * z, f, 0 * z])
    p = init_scenario(Scenario(ScenarioKind.CUSTOM, initial=lambda gr: (0 * H, H)), g, Units(2.0))
    dE, dH = rhs(p.state, p)
    assert np.allclose(dE, 2.0 * vc.curl(H, g.h))
    assert np.allclose(dE[0], -2.0 * diff_array(f, 2, g.h[2]))
    assert not np.any(dH)


def test_uniform_fields_are_stationary():
    ones = np.ones(THIN.shape)
    E = np.stack([ones, 2 * ones, 0 * ones])
    p = init_scenario(Scenario(ScenarioKind.CUSTOM, initial=lambda g: (E, -E)), THIN)
    dE, dH = rhs(p.state, p)
    assert not np.any(dE) and not np.any(dH)


def test_curls_match_classical():
    rng = np.random.default_rng(0)
    g = Grid3.box(6)
    E, H = rng.normal(size=(2, 3) + g.shape)
    rotE, rotH = curls(E, H, g)
    assert np.allclose(rotE, vc.curl(E, g.h), atol=1e-12)
    assert np.allclose(rotH, vc.curl(H, g.h), atol=1e-12)


def test_plane_wave_derivatives_converge():
    errs = []
    for n in (16, 32, 64):
        g = Grid3.box((4, 4, n))
        p = init_scenario(Scenario(mode=(0, 0, 1)), g)
        dE, dH = rhs(p.state, p)
        exact = plane_wave_parts(g, 0.0, (0, 0, 1), (1, 0, 0))
        errs.append(max(np.abs(dE - exact["E_t"]).max(), np.abs(dH - exact["H_t"]).max()))
    assert 3.5 < errs[0] / errs[1] < 4.5 and 3.5 < errs[1] / errs[2] < 4.5


def test_plane_wave_initial_state():
    p = init_scenario(Scenario(mode=(0, 0, 1)), THIN)
    _, _, z = THIN.coords()
    assert np.allclose(p.state.E[0], np.cos(2 * np.pi * z))
    assert np.allclose(p.state.H[1], np.cos(2 * np.pi * z))
    assert p.period == pytest.approx(1.0)


def test_static_linear_scenario():
    p = init_scenario(Scenario(ScenarioKind.STATIC_LINEAR), Grid3.box(6))
    X, Y, Z = p.grid.coords()
    assert np.array_equal(p.state.E, np.stack([X, Y, Z]))
    cur = p.source.current(p.grid, 0.0)
    assert np.allclose(cur.rho, 3 / FOUR_PI)


def test_gaussian_pulse_resolution_enforced():
    g = Grid3.box((4, 4, 64))
    with pytest.raises(ValueError, match="4 grid spacings"):
        init_scenario(Scenario(ScenarioKind.GAUSSIAN_PULSE, width=2 * g.h[2]), g)
    p = init_scenario(Scenario(ScenarioKind.GAUSSIAN_PULSE, width=0.08), g)
    peak = np.unravel_index(np.argmax(p.state.E[0]), g.shape)
    assert p.grid.coords()[2][peak] == pytest.approx(0.5)


def test_incommensurate_wavevector_rejected():
    with pytest.raises(ValueError, match="commensurate"):
        init_scenario(Scenario(wavevector=(0, 0, 1.0)), THIN)


def test_zero_state_is_fixed_point():
    zero = np.zeros((3,) + THIN.shape)
    p = init_scenario(Scenario(ScenarioKind.CUSTOM, initial=lambda g: (zero, zero)), THIN)
    s = step(p.state, p, 0.01)
    assert not np.any(s.E) and not np.any(s.H)


def test_forward_backward_returns_to_start():
    p = init_scenario(Scenario(mode=(0, 0, 1)), THIN)
    dt = 0.25 * THIN.h[2]
    s = p.state
    for _ in range(32):
        s = step(s, p, dt)
    for _ in range(32):
        s = step(s, p, -dt)
    scale = np.abs(p.state.E).max()
    assert np.abs(s.E - p.state.E).max() <= 1e-8 * scale
    assert np.abs(s.H - p.state.H).max() <= 1e-8 * scale


def test_discrete_poynting_balance():
    # d(energy)/dt = -integral of j.E on the periodic box
    g = THIN
    src = Source(j=lambda X, Y, Z, t: np.stack([0.1 * np.sin(2 * np.pi * Z) * np.cos(t), 0 * X, 0 * X]))
    p = init_scenario(Scenario(mode=(0, 0, 1), source=src), g)
    X, Y, Z = g.coords()
    energy = lambda s: np.sum(vc.dot(s.E, s.E) + vc.dot(s.H, s.H)) / (2 * FOUR_PI) * g.cell_volume  # noqa: E731
    work = lambda s: np.sum(vc.dot(src.j(X, Y, Z, s.t), s.E)) * g.cell_volume  # noqa: E731
    worst = []
    for dt in (0.25 * g.h[2], 0.125 * g.h[2]):
        s, w = p.state, 0.0
        for _ in range(16):
            s2 = step(s, p, dt)
            w = max(w, abs((energy(s2) - energy(s)) / dt + 0.5 * (work(s) + work(s2))))
            s = s2
        worst.append(w)
    assert worst[0] < 1e-3 * abs(work(p.state)) + 1e-4
    assert worst[0] / worst[1] > 3.5


def test_nonfinite_state_aborts():
    E = np.zeros((3,) + THIN.shape)
    E[0, 0, 0, 0] = np.nan
    p = init_scenario(Scenario(ScenarioKind.CUSTOM, initial=lambda g: (E, 0 * E)), THIN)
    with pytest.raises(NumericalAbort) as info:
        step(p.state, p, 0.01, step_index=7)
    assert info.value.step == 7


def test_cfl_limit_enforced():
    cfg = SolverConfig(THIN, dt=0.5)
    with pytest.raises(ConfigError) as info:
        cfg.validate()
    assert info.value.field == "dt"
    SolverConfig(THIN, dt=0.5, allow_high_cfl=True).validate()
    assert SolverConfig(THIN).resolved_dt() == pytest.approx(0.25 * THIN.h[2])


def test_run_one_period_records():
    p = init_scenario(Scenario(mode=(0, 0, 1)), THIN)
    recs = run(p, SolverConfig(THIN, sample_every=16))
    assert recs[0].step == 0 and recs[-1].time == pytest.approx(1.0)
    assert len(recs[0].row()) == len(CSV_COLUMNS)
    assert energy_drift(recs) < 1e-6
    assert recs[0].l2err == 0.0


def test_run_requires_matching_grid():
    p = init_scenario(Scenario(mode=(0, 0, 1)), THIN)
    with pytest.raises(ConfigError):
        run(p, SolverConfig(Grid3.box((4, 4, 16))))


def test_run_is_deterministic():
    p = init_scenario(Scenario(mode=(0, 1, 1), polarization=(1, 0, 0)), Grid3.box((4, 16, 16)))
    cfg = SolverConfig(p.grid, steps=20)
    a = [r.row() for r in run(p, cfg)]
    b = [r.row() for r in run(p, cfg)]
    assert a == b


def test_matter_run_uses_reduced_speed():
    g = Grid3.box((4, 4, 32))
    p = init_scenario(Scenario(mode=(0, 0, 1), epsilon=2.0, mu=3.0), g)
    assert p.period == pytest.approx(np.sqrt(6.0))
    recs = run(p, SolverConfig(g, sample_every=64))
    assert energy_drift(recs) < 1e-6
    assert recs[-1].l2err < 0.05
    assert max(r.res_vector for r in recs) < 1e-12


def test_state_copy_is_independent():
    s = State(0.0, np.zeros((3, 4, 4, 4)), np.zeros((3, 4, 4, 4)))
    c = s.copy()
    c.E[0, 0, 0, 0] = 1
    assert s.E[0, 0, 0, 0] == 0
