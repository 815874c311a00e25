"""Carry a plane wave once around the periodic box with RK4.

The wave varies only along z, so a 4 x 4 x N lattice is enough.  Energy is
conserved to round-off over a period; the L2 error is the phase lag of
centred differences and falls by four per refinement.

Run:  python3 demos/03_plane_wave_solver.py
"""
from octon.fieldgrid import Grid3
from octon.solver import Scenario, SolverConfig, energy_drift, init_scenario, run

previous = None
for n in (32, 64, 128):
    g = Grid3.box((4, 4, n))
    problem = init_scenario(Scenario(mode=(0, 0, 1), polarization=(1, 0, 0)), g)
    records = run(problem, SolverConfig(g, sample_every=n))
    err = records[-1].l2err
    ratio = "" if previous is None else f"  ratio {previous / err:.2f}"
    print(f"N={n:4d}  steps {records[-1].step:4d}  L2 error {err:.3e}  "
          f"energy drift {energy_drift(records):.1e}{ratio}")
    previous = err
