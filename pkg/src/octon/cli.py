"""Command-line entry point.

    octon verify-algebra     [--seed S] [--n-random N] [--corrupt-table i,j]
    octon check-identities   [--levels 16,32,64]
    octon simulate           --config run.json [--allow-high-cfl]
    octon convergence        --config run.json [--levels 16,32,64]

Every subcommand accepts ``--config`` and ``--out``; flags override the
JSON file.  Exit codes: 0 pass, 1 verification failure, 2 configuration
error, 3 numerical abort.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import algebra as alg
from .convergence import ConvergenceResult
from .electrodynamics import Units
from .errors import ConfigError, NumericalAbort
from .fieldgrid import Grid3
from .io import write_diagnostics_csv, write_report
from .solver import Scenario, ScenarioKind, SolverConfig, energy_drift, init_scenario, run
from .verify import DEFAULT_TOLERANCES, check_identities, summarize_algebra, verify_algebra

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_ABORT = 0, 1, 2, 3

DEFAULT_LEVELS = (16, 32, 64)
_SCENARIO_KEYS = {"kind", "amplitude", "mode", "wavevector", "polarization", "width",
                  "center", "epsilon", "mu"}
_SOLVER_KEYS = {"dt", "steps", "sample_every", "snapshot_every", "integrator", "allow_high_cfl"}


# --- configuration --------------------------------------------------------

def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return cfg


def merge_flags(cfg: dict, args: argparse.Namespace) -> dict:
    cfg = json.loads(json.dumps(cfg))
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    if getattr(args, "levels", None) is not None:
        cfg["levels"] = args.levels
    if getattr(args, "n_random", None) is not None:
        cfg["n_random"] = args.n_random
    if getattr(args, "allow_high_cfl", False):
        cfg.setdefault("solver", {})["allow_high_cfl"] = True
    if getattr(args, "out", None) is not None:
        cfg["out"] = args.out
    cfg.setdefault("seed", 0)
    return cfg


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()


def _section(cfg: dict, name: str, required: bool = False) -> dict:
    sec = cfg.get(name)
    if sec is None:
        if required:
            raise ConfigError(name, "missing required section")
        return {}
    if not isinstance(sec, dict):
        raise ConfigError(name, "must be a JSON object")
    return sec


def _triple(value, field: str, kind=float):
    if isinstance(value, (int, float)):
        value = [value] * 3
    if not (isinstance(value, list) and len(value) == 3):
        raise ConfigError(field, "expected a number or a list of three numbers")
    try:
        return tuple(kind(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(field, f"bad entry: {exc}") from exc


def parse_units(cfg: dict) -> Units:
    c = _section(cfg, "units").get("c", 1.0)
    try:
        return Units(float(c))
    except (TypeError, ValueError) as exc:
        raise ConfigError("units.c", str(exc)) from exc


def parse_grid(cfg: dict) -> Grid3:
    g = _section(cfg, "grid", required=True)
    if "n" not in g:
        raise ConfigError("grid.n", "missing")
    n = _triple(g["n"], "grid.n", int)
    length = _triple(g.get("length", 1.0), "grid.length")
    try:
        return Grid3.box(n, length)
    except ValueError as exc:
        raise ConfigError("grid", str(exc)) from exc


def parse_scenario(cfg: dict) -> Scenario:
    s = dict(_section(cfg, "scenario"))
    unknown = set(s) - _SCENARIO_KEYS
    if unknown:
        raise ConfigError(f"scenario.{sorted(unknown)[0]}", "unknown key")
    kind = s.pop("kind", "plane_wave")
    try:
        s["kind"] = ScenarioKind(kind)
    except ValueError:
        allowed = ", ".join(k.value for k in ScenarioKind if k is not ScenarioKind.CUSTOM)
        raise ConfigError("scenario.kind", f"{kind!r} is not one of {allowed}") from None
    if s["kind"] is ScenarioKind.CUSTOM:
        raise ConfigError("scenario.kind", "custom scenarios need Python callables")
    for key in ("mode", "wavevector", "polarization", "center"):
        if key in s and s[key] is not None:
            s[key] = _triple(s[key], f"scenario.{key}")
    for key in ("amplitude", "width", "epsilon", "mu"):
        if key in s and s[key] is not None and not isinstance(s[key], (int, float)):
            raise ConfigError(f"scenario.{key}", "must be a number")
    try:
        return Scenario(**s)
    except ValueError as exc:
        raise ConfigError("scenario", str(exc)) from exc


def parse_solver(cfg: dict, grid: Grid3) -> SolverConfig:
    s = _section(cfg, "solver")
    unknown = set(s) - _SOLVER_KEYS
    if unknown:
        raise ConfigError(f"solver.{sorted(unknown)[0]}", "unknown key")
    for key in ("steps", "sample_every", "snapshot_every"):
        if key in s and s[key] is not None and not isinstance(s[key], int):
            raise ConfigError(f"solver.{key}", "must be an integer")
    if s.get("snapshot_every", 0) < 0:
        raise ConfigError("solver.snapshot_every", "must be >= 0")
    return SolverConfig(grid, dt=s.get("dt"), steps=s.get("steps"),
                        sample_every=s.get("sample_every", 1),
                        allow_high_cfl=bool(s.get("allow_high_cfl", False)),
                        integrator=s.get("integrator", "rk4"),
                        snapshot_every=s.get("snapshot_every", 0))


def parse_levels(text) -> list[int]:
    if isinstance(text, str):
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    try:
        levels = [int(p) for p in parts]
    except (TypeError, ValueError):
        raise ConfigError("levels", f"expected comma-separated integers, got {text!r}") from None
    if len(levels) < 2 or any(n < 4 for n in levels) or levels != sorted(set(levels)):
        raise ConfigError("levels", "need at least two increasing resolutions, each >= 4")
    return levels


def _tolerances(cfg: dict) -> dict:
    tol = _section(cfg, "tolerances")
    unknown = set(tol) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(f"tolerances.{sorted(unknown)[0]}", "unknown key")
    return {**DEFAULT_TOLERANCES, **tol}


def _out_dir(cfg: dict) -> Path:
    out = Path(cfg.get("out", "octon-out"))
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError("out", f"cannot create {out}: {exc.strerror}") from exc
    return out


def _stamp(report: dict, cfg: dict, tolerances: dict) -> dict:
    return {**report, "config": cfg, "config_hash": config_hash(cfg), "seed": cfg["seed"],
            "tolerances": tolerances, "version": __version__}


# --- subcommands ----------------------------------------------------------

def corrupted_table(pair: str):
    """Copy of the product table with the sign of one entry flipped."""
    names = [p.strip() for p in pair.split(",")]
    if len(names) != 2 or any(n not in alg.BASIS_SYMBOLS for n in names):
        raise ConfigError("corrupt_table", f"expected two basis symbols like 'i,j', got {pair!r}")
    u, v = (alg.BASIS_SYMBOLS.index(n) for n in names)
    coeff = alg.PRODUCT_COEFF.copy()
    coeff[u, v] = -coeff[u, v]
    return alg.PRODUCT_INDEX.copy(), coeff


def cmd_verify_algebra(cfg: dict, args) -> int:
    tol = _tolerances(cfg)
    n_random = int(cfg.get("n_random", 10_000))
    if n_random < 1:
        raise ConfigError("n_random", "must be positive")
    table = corrupted_table(args.corrupt_table) if args.corrupt_table else None
    report = verify_algebra(n_random, int(cfg["seed"]), table, tol)
    if args.corrupt_table:
        report["corrupted_pair"] = args.corrupt_table
    report = _stamp(report, cfg, tol)
    write_report(_out_dir(cfg) / "verify_algebra.json", report)
    print(summarize_algebra(report))
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def cmd_check_identities(cfg: dict, args) -> int:
    tol = _tolerances(cfg)
    levels = parse_levels(cfg.get("levels", DEFAULT_LEVELS))
    medium = _section(cfg, "matter")
    report = check_identities(levels, parse_units(cfg), float(medium.get("epsilon", 2.0)),
                              float(medium.get("mu", 3.0)), tol)
    report = _stamp(report, cfg, tol)
    write_report(_out_dir(cfg) / "check_identities.json", report)
    for name, r in report["results"].items():
        if r["kind"] == "must-not-converge":
            status = "NON-CONVERGENT" if r["passed"] else "CONVERGES (unexpected)"
        elif r["exact"]:
            status = "exact"
        else:
            status = f"order {r['order']:.2f}"
        print(f"{'PASS' if r['passed'] else 'FAIL'}  {name:32s} {status}")
    if report["failures"]:
        print("failing identities: " + "; ".join(report["failures"]))
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def _simulate_once(cfg: dict, grid: Grid3, snapshot_dir: Path | None):
    units = parse_units(cfg)
    scenario = parse_scenario(cfg)
    solver_cfg = parse_solver(cfg, grid)
    try:
        problem = init_scenario(scenario, grid, units)
    except ValueError as exc:
        raise ConfigError("scenario", str(exc)) from exc
    final = []
    records = run(problem, solver_cfg, snapshot_dir, final_state=final)
    return problem, solver_cfg, records


def cmd_simulate(cfg: dict, args) -> int:
    grid = parse_grid(cfg)
    out = _out_dir(cfg)
    problem, solver_cfg, records = _simulate_once(cfg, grid, out / "snapshots")
    csv_path = write_diagnostics_csv(out / "diagnostics.csv", records)
    drift = energy_drift(records)
    res_max = {k: max(abs(getattr(r, k)) for r in records)
               for k in ("res_scalar", "res_pseudoscalar", "res_vector", "res_pseudovector",
                         "continuity", "poynting")}
    last = records[-1]
    summary = {"suite": "simulate", "passed": True, "steps": last.step, "time": last.time,
               "dt": last.time / last.step if last.step else solver_cfg.resolved_dt(problem.units),
               "cfl": solver_cfg.cfl(problem.units), "energy_drift": drift,
               "final_l2_error": last.l2err, "max_residuals": res_max, "csv": str(csv_path)}
    write_report(out / "simulate.json", _stamp(summary, cfg, _tolerances(cfg)))
    print(f"{last.step} steps to t={last.time:.6g}, cfl {summary['cfl']:.3f}")
    print(f"relative energy drift {drift:.3e}")
    if last.l2err is not None:
        print(f"L2 error vs analytic {last.l2err:.3e}")
    print("max residual norms: " + ", ".join(f"{k} {v:.2e}" for k, v in res_max.items()))
    print(f"diagnostics written to {csv_path}")
    return EXIT_PASS


def refined_grid(base: Grid3, n: int, mode) -> Grid3:
    """Resolution ``n`` along every axis the wave varies on; other axes keep their size."""
    mode = np.asarray(mode, dtype=float)
    sizes = tuple(n if mode[a] else base.n[a] for a in range(3))
    return Grid3.box(sizes, base.lengths, base.origin)


def cmd_convergence(cfg: dict, args) -> int:
    tol = _tolerances(cfg)
    levels = parse_levels(cfg.get("levels", DEFAULT_LEVELS))
    base = parse_grid(cfg)
    scenario = parse_scenario(cfg)
    if scenario.kind is ScenarioKind.STATIC_LINEAR:
        raise ConfigError("scenario.kind", "convergence needs a propagating scenario")
    mode = scenario.mode if scenario.wavevector is None else scenario.wavevector
    errors, drifts = [], []
    for n in levels:
        level_cfg = dict(cfg, solver={**_section(cfg, "solver"), "dt": None})
        _, _, records = _simulate_once(level_cfg, refined_grid(base, n, mode), None)
        errors.append(records[-1].l2err)
        drifts.append(energy_drift(records))
    res = ConvergenceResult("solver_l2_error", levels, errors)
    passed = res.within(tol["order_target"], tol["order_band"])
    report = _stamp({"suite": "convergence", "passed": passed, **res.as_dict(),
                     "energy_drift": drifts}, cfg, tol)
    write_report(_out_dir(cfg) / "convergence.json", report)
    for n, e, d in zip(levels, errors, drifts):
        print(f"N={n:4d}  L2 error {e:.4e}  energy drift {d:.2e}")
    order = "exact" if res.exact else f"{res.order:.3f}"
    print(f"observed order {order} (target {tol['order_target']} +/- {tol['order_band']}): "
          f"{'PASS' if passed else 'FAIL'}")
    return EXIT_PASS if passed else EXIT_FAIL


COMMANDS = {
    "verify-algebra": cmd_verify_algebra,
    "check-identities": cmd_check_identities,
    "simulate": cmd_simulate,
    "convergence": cmd_convergence,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output directory (default octon-out)")
    common.add_argument("--seed", type=int, help="seed recorded in every report")
    common.add_argument("--levels", help="refinement levels, e.g. 16,32,64")
    common.add_argument("--allow-high-cfl", action="store_true",
                        help="permit time steps above the stability limit")

    parser = argparse.ArgumentParser(prog="octon", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    va = sub.add_parser("verify-algebra", parents=[common], help="product table and oracle suites")
    va.add_argument("--n-random", type=int, help="random octons per suite (default 10000)")
    va.add_argument("--corrupt-table", metavar="U,V",
                    help="negative control: flip the sign of one table entry")
    sub.add_parser("check-identities", parents=[common], help="residual convergence study")
    sub.add_parser("simulate", parents=[common], help="run the time-domain solver")
    sub.add_parser("convergence", parents=[common], help="solver refinement study")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None and not 0 <= args.seed < 2**64:
        print("configuration error: seed: must fit in an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = merge_flags(load_config(args.config), args)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalAbort as exc:
        print(f"numerical abort at {exc}", file=sys.stderr)
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())
