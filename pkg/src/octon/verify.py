"""Verification suites behind the ``verify-algebra``, ``check-identities`` and
``convergence`` commands.  Each returns a JSON-ready report with a ``passed``
flag; nothing here prints.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import algebra as alg
from .algebra import BASIS_SYMBOLS, XI, Octon, multiply_arrays, to_matrix_pair
from .analytic import matter_plane_wave, plane_wave, smooth_potential, wave_potential
from .convergence import ConvergenceResult, study_many
from .electrodynamics import (
    CurrentOcton,
    FieldOcton,
    PotentialOcton,
    Units,
    field_wave_residuals,
    generalized_equation_residual,
    lorentz_invariant_relations,
    maxwell_residual,
    power_relations,
)
from .fieldgrid import Grid3, OctonField, interior, laplacian, nabla_nabla_cross, p_apply_slice, p_conj_apply
from .matter import combined_residual, first_pair_residual, second_pair_residual

DEFAULT_TOLERANCES = {
    "oracle_rel": 1e-12,
    "assoc_rel": 1e-12,
    "gibbs_abs": 1e-13,
    "min_order": 1.8,
    "order_target": 2.0,
    "order_band": 0.2,
}

PLANE_WAVE_MODE = (1, 2, 2)
PLANE_WAVE_POL = (2.0, -1.0, 0.0)


def _pair(u, v) -> str:
    return f"({BASIS_SYMBOLS[u]},{BASIS_SYMBOLS[v]})"


def _check(name, failures, detail=None, total=None):
    out = {"name": name, "passed": not failures, "failures": failures[:20]}
    if total is not None:
        out["count"] = f"{total - len(failures)}/{total}"
    if detail is not None:
        out.update(detail)
    return out


def random_octons(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` random complex octons as an (8, n) array."""
    return rng.normal(size=(8, n)) + 1j * rng.normal(size=(8, n))


def verify_algebra(n_random: int = 10_000, seed: int = 0,
                   table: tuple[np.ndarray, np.ndarray] | None = None,
                   tolerances: dict | None = None) -> dict:
    """Basis table, associativity, (anti)commutation, oracle and Gibbs suites."""
    tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    index, coeff = (alg.PRODUCT_INDEX, alg.PRODUCT_COEFF) if table is None else table
    table = (index, coeff)
    eye = np.eye(8, dtype=np.complex128)
    prod = lambda a, b: multiply_arrays(a, b, table)  # noqa: E731
    checks = []

    bad = alg.table_oracle_mismatches(table)
    checks.append(_check("basis_products", [_pair(u, v) for u, v in bad], total=64))

    assoc_fail = []
    for u, v, w in itertools.product(range(8), repeat=3):
        lhs = prod(prod(eye[u], eye[v]), eye[w])
        rhs = prod(eye[u], prod(eye[v], eye[w]))
        if not np.array_equal(lhs, rhs):
            assoc_fail.append(f"({BASIS_SYMBOLS[u]},{BASIS_SYMBOLS[v]},{BASIS_SYMBOLS[w]})")
    checks.append(_check("associativity_triples", assoc_fail, total=512))

    squares = [BASIS_SYMBOLS[u] for u in range(1, 8) if not np.array_equal(prod(eye[u], eye[u]), eye[0])]
    checks.append(_check("unit_squares", squares, total=7))

    central = [_pair(4, u) for u in range(8) if not np.array_equal(prod(eye[4], eye[u]), prod(eye[u], eye[4]))]
    checks.append(_check("pseudoscalar_commutes", central, total=8))

    vec_units = [1, 2, 3, 5, 6, 7]
    anti_fail, pairs = [], 0
    for u, v in itertools.combinations(vec_units, 2):
        if abs(u - v) == 4:  # parallel polar/axial pair: commutes
            continue
        pairs += 1
        if not np.array_equal(prod(eye[u], eye[v]), -prod(eye[v], eye[u])):
            anti_fail.append(_pair(u, v))
    checks.append(_check("anticommutativity", anti_fail, total=pairs))

    ijk = prod(prod(eye[1], eye[2]), eye[3])
    checks.append(_check("pseudoscalar_from_ijk",
                         [] if np.array_equal(-XI * ijk, eye[4]) else ["E != -xi ijk"]))

    inv = alg._INVERSION_SIGNS
    aut_fail = [_pair(u, v) for u, v in itertools.product(range(8), repeat=2)
                if not np.array_equal(inv * prod(eye[u], eye[v]), prod(inv * eye[u], inv * eye[v]))]
    checks.append(_check("inversion_automorphism", aut_fail, total=64))

    rng = np.random.default_rng(seed)
    a, b, c = (random_octons(rng, n_random) for _ in range(3))
    ab = prod(a, b)
    ra, rb, rab = to_matrix_pair(a), to_matrix_pair(b), to_matrix_pair(ab)
    norms = np.max(np.abs(a), axis=0) * np.max(np.abs(b), axis=0)
    per = np.maximum(np.max(np.abs(rab.plus - ra.plus @ rb.plus), axis=(-1, -2)),
                     np.max(np.abs(rab.minus - ra.minus @ rb.minus), axis=(-1, -2))) / norms
    oracle_err = float(per.max())
    checks.append(_check("random_oracle", [] if oracle_err <= tol["oracle_rel"] else [f"max rel err {oracle_err:.3e}"],
                         {"max_rel_err": oracle_err, "samples": n_random}))

    lhs, rhs = prod(ab, c), prod(a, prod(b, c))
    scale = np.max(np.abs(a), 0) * np.max(np.abs(b), 0) * np.max(np.abs(c), 0)
    assoc_err = float((np.max(np.abs(lhs - rhs), axis=0) / scale).max())
    checks.append(_check("random_associativity",
                         [] if assoc_err <= tol["assoc_rel"] else [f"max rel err {assoc_err:.3e}"],
                         {"max_rel_err": assoc_err, "samples": n_random}))

    gibbs_err = 0.0
    kinds = [("vector", slice(1, 4)), ("pseudovector", slice(5, 8))]
    n_gibbs = min(1000, n_random)
    for _ in range(n_gibbs):
        (_, s1), (_, s2) = kinds[rng.integers(2)], kinds[rng.integers(2)]
        c1, c2 = np.zeros(8, complex), np.zeros(8, complex)
        c1[s1], c2[s2] = rng.normal(size=3), rng.normal(size=3)
        gibbs_err = max(gibbs_err, alg.gibbs_correspondence_check(Octon(c1), Octon(c2)))
    checks.append(_check("gibbs_correspondence",
                         [] if gibbs_err <= tol["gibbs_abs"] else [f"max err {gibbs_err:.3e}"],
                         {"max_abs_err": gibbs_err, "samples": n_gibbs}))

    return {"suite": "verify-algebra", "passed": all(c["passed"] for c in checks),
            "checks": checks, "seed": seed, "tolerances": tol}


def summarize_algebra(report: dict) -> str:
    by = {c["name"]: c for c in report["checks"]}
    verdict = "PASS" if report["passed"] else "FAIL"
    line = (f"{by['basis_products']['count']} basis products, "
            f"{by['associativity_triples']['count']} associativity triples, "
            f"oracle max-err {by['random_oracle']['max_rel_err']:.1e}: {verdict}")
    failed = [f"{c['name']} {', '.join(c['failures'])}" for c in report["checks"] if not c["passed"]]
    return line + ("".join(f"\n  FAILED {f}" for f in failed))


# --- identities -----------------------------------------------------------

def _linf(arr, band: int = 0) -> float:
    arr = interior(np.asarray(arr), band)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def vacuum_errors(n: int, units: Units = Units(), t: float = 0.3) -> dict[str, float]:
    """Every vacuum residual at resolution ``n`` (max-norm over the lattice)."""
    c = units.c
    g = Grid3.box(n)
    out = {}

    pot, dal = smooth_potential(g, t, c)
    s = pot.time_slice(order=2)
    composed = p_conj_apply(p_apply_slice(s, c), c)
    out["operator_composition"] = _linf(composed.data[:4] - dal)
    out["nabla_nabla_term"] = _linf(nabla_nabla_cross(s.value).data)

    wp = wave_potential(g, t, mode=(1, 1, 0), c=c)
    gen = generalized_equation_residual(wp, CurrentOcton.vacuum(g), units)
    out["generalized_equation"] = _linf(gen.full.data)
    out["potential_wave_equation"] = _linf(gen.wave.data)

    F = plane_wave(g, t, PLANE_WAVE_MODE, PLANE_WAVE_POL, 1.0, c)
    vac = CurrentOcton.vacuum(g)
    for prefix, res in (("maxwell", maxwell_residual(F, vac, units)),
                        ("power", power_relations(F, vac, units)),
                        ("lorentz", lorentz_invariant_relations(F, vac, units))):
        for name, arr in res.parts().items():
            out[f"{prefix}.{name}"] = _linf(arr)
    w = field_wave_residuals(F, vac, units)
    out["wave.E"], out["wave.H"], out["wave.continuity"] = map(_linf, w)
    wp_ = field_wave_residuals(F, vac, units, laplacian_sign=+1)
    out["printed_sign.E"], out["printed_sign.H"] = _linf(wp_.wave_e), _linf(wp_.wave_h)
    return out


def matter_errors(n: int, epsilon: float = 2.0, mu: float = 3.0, units: Units = Units(),
                  t: float = 0.3) -> dict[str, float]:
    g = Grid3.box(n)
    m = matter_plane_wave(g, t, PLANE_WAVE_MODE, PLANE_WAVE_POL, 1.0, units.c, epsilon, mu)
    vac = CurrentOcton.vacuum(g)
    first = first_pair_residual(m, units)
    second = second_pair_residual(m, vac, units)
    comb = combined_residual(m, vac, units)
    out = {"first_pair.div_b": _linf(first.div_b), "first_pair.faraday": _linf(first.faraday),
           "second_pair.gauss": _linf(second.gauss), "second_pair.ampere": _linf(second.ampere)}
    for name, arr in comb.parts().items():
        out[f"combined.{name}"] = _linf(arr)
    return out


def exact_probes(units: Units = Units()) -> dict[str, float]:
    """Linear/quadratic probes whose residuals vanish exactly on interior sites."""
    c = units.c
    g = Grid3.box(8)
    X, Y, Z = g.coords()
    out = {}
    rho0 = 0.7
    phi = -(X**2 + Y**2 + Z**2) * (2 * np.pi / 3) * rho0
    zero3 = np.zeros((3,) + g.shape)
    pot = PotentialOcton(g, phi, zero3, 0.0, zero3, 0.0, zero3)
    gen = generalized_equation_residual(pot, CurrentOcton(g, rho0), units)
    out["static_quadratic_potential"] = _linf(gen.full.data, 2)
    E = np.stack([X, Y, Z])
    st = FieldOcton.static(g, E, zero3)
    out["static_linear_maxwell"] = max(
        _linf(a, 1) for a in maxwell_residual(st, CurrentOcton(g, 3 / (4 * np.pi)), units).parts().values())
    out["static_linear_poynting"] = _linf(power_relations(st, CurrentOcton.vacuum(g), units).scalar, 1)
    q = OctonField.from_parts(g, scalar=X**2 + Y**2)
    out["laplacian_quadratic"] = _linf(laplacian(q).data[0] - 4.0, 1)
    return out


def check_identities(levels=(16, 32, 64), units: Units = Units(), epsilon: float = 2.0,
                     mu: float = 3.0, tolerances: dict | None = None) -> dict:
    """Refinement study over every residual; PASS needs order >= min_order or exact zeros."""
    tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    vac = study_many(levels, lambda n: vacuum_errors(n, units))
    mat = study_many(levels, lambda n: matter_errors(n, epsilon, mu, units))
    results: dict[str, dict] = {}
    failures = []

    def record(res: ConvergenceResult, passed: bool, kind: str):
        results[res.name] = {**res.as_dict(), "passed": passed, "kind": kind}
        if not passed:
            failures.append(f"{res.name} (order {res.order:.2f})")

    for name, res in {**vac, **mat}.items():
        if name.startswith("printed_sign"):
            record(res, res.non_convergent(floor=1e-3), "must-not-converge")
        else:
            record(res, res.at_least(tol["min_order"]), "order")

    probes = exact_probes(units)
    for name, err in probes.items():
        ok = err <= 1e-9
        results[name] = {"errors": [err], "exact": ok, "passed": ok, "kind": "exact-probe"}
        if not ok:
            failures.append(f"{name} (residual {err:.3e})")

    return {"suite": "check-identities", "passed": not failures, "levels": list(levels),
            "results": results, "failures": failures, "tolerances": tol,
            "epsilon": epsilon, "mu": mu}
