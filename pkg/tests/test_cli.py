import json

import pytest

from octon import __version__
from octon.cli import EXIT_ABORT, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, config_hash, main, parse_levels
from octon.errors import ConfigError
from octon.io import read_diagnostics_csv
from octon.solver import CSV_COLUMNS

PLANE = {
    "grid": {"n": [4, 4, 32]},
    "scenario": {"kind": "plane_wave", "mode": [0, 0, 1], "polarization": [1, 0, 0]},
    "solver": {"sample_every": 16},
}


def write_cfg(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def test_verify_algebra_passes(tmp_path, capsys):
    rc = main(["verify-algebra", "--out", str(tmp_path), "--seed", "7", "--n-random", "2000"])
    out = capsys.readouterr().out
    assert rc == EXIT_PASS
    assert out.startswith("64/64 basis products, 512/512 associativity triples, oracle max-err")
    assert out.rstrip().endswith("PASS")
    report = json.loads((tmp_path / "verify_algebra.json").read_text())
    assert report["seed"] == 7 and report["version"] == __version__
    assert report["config_hash"] == config_hash(report["config"])
    assert report["tolerances"]["oracle_rel"] == 1e-12


def test_corrupted_table_names_pair(tmp_path, capsys):
    rc = main(["verify-algebra", "--out", str(tmp_path), "--n-random", "100", "--corrupt-table", "i,j"])
    out = capsys.readouterr().out
    assert rc == EXIT_FAIL
    assert "FAILED basis_products (i,j)" in out


def test_bad_corruption_pair_is_config_error(tmp_path, capsys):
    assert main(["verify-algebra", "--out", str(tmp_path), "--corrupt-table", "q"]) == EXIT_CONFIG
    assert "corrupt_table" in capsys.readouterr().err


def test_check_identities_reports_orders(tmp_path, capsys):
    rc = main(["check-identities", "--out", str(tmp_path), "--levels", "16,32"])
    out = capsys.readouterr().out
    assert rc == EXIT_PASS
    assert "NON-CONVERGENT" in out and "printed_sign.E" in out
    report = json.loads((tmp_path / "check_identities.json").read_text())
    assert report["levels"] == [16, 32]
    assert report["results"]["maxwell.ampere"]["order"] > 1.8


def test_check_identities_fails_with_named_identity(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"tolerances": {"min_order": 2.5}})
    rc = main(["check-identities", "--config", cfg, "--out", str(tmp_path), "--levels", "16,32"])
    out = capsys.readouterr().out
    assert rc == EXIT_FAIL
    assert "failing identities:" in out and "maxwell.ampere (order" in out


def test_simulate_writes_csv_and_prints_drift(tmp_path, capsys):
    rc = main(["simulate", "--config", write_cfg(tmp_path, PLANE), "--out", str(tmp_path / "o")])
    out = capsys.readouterr().out
    assert rc == EXIT_PASS
    assert "relative energy drift" in out
    csv_path = tmp_path / "o" / "diagnostics.csv"
    header = csv_path.read_text().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)
    rows = read_diagnostics_csv(csv_path)
    assert rows[-1]["time"] == pytest.approx(1.0)
    assert not (tmp_path / "o" / "snapshots").exists()
    summary = json.loads((tmp_path / "o" / "simulate.json").read_text())
    assert summary["energy_drift"] < 1e-6 and summary["seed"] == 0


def test_simulate_snapshot_cadence(tmp_path):
    cfg = dict(PLANE, solver={"steps": 8, "snapshot_every": 4})
    assert main(["simulate", "--config", write_cfg(tmp_path, cfg), "--out", str(tmp_path)]) == EXIT_PASS
    names = sorted(p.name for p in (tmp_path / "snapshots").iterdir())
    assert names == [f"field_00000{i}.{ext}" for i in (0, 4, 8) for ext in ("bin", "json")]


def test_simulate_is_deterministic(tmp_path):
    cfg = write_cfg(tmp_path, dict(PLANE, solver={"steps": 12}))
    main(["simulate", "--config", cfg, "--out", str(tmp_path / "a")])
    main(["simulate", "--config", cfg, "--out", str(tmp_path / "b")])
    assert (tmp_path / "a" / "diagnostics.csv").read_bytes() == (tmp_path / "b" / "diagnostics.csv").read_bytes()


@pytest.mark.parametrize("cfg,field", [
    ({"scenario": {}}, "grid"),
    ({"grid": {}}, "grid.n"),
    ({"grid": {"n": [4, 4]}}, "grid.n"),
    ({"grid": {"n": 8}, "scenario": {"kind": "vortex"}}, "scenario.kind"),
    ({"grid": {"n": 8}, "scenario": {"colour": 1}}, "scenario.colour"),
    ({"grid": {"n": 8}, "solver": {"steps": "ten"}}, "solver.steps"),
    ({"grid": {"n": 8}, "solver": {"dt": 1.0}}, "dt"),
    ({"grid": {"n": 8}, "units": {"c": -1}}, "units.c"),
])
def test_config_errors_name_the_field(tmp_path, capsys, cfg, field):
    rc = main(["simulate", "--config", write_cfg(tmp_path, cfg), "--out", str(tmp_path)])
    assert rc == EXIT_CONFIG
    assert f"configuration error: {field}" in capsys.readouterr().err


def test_unreadable_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["simulate", "--config", str(bad)]) == EXIT_CONFIG
    assert main(["simulate", "--config", str(tmp_path / "missing.json")]) == EXIT_CONFIG


def test_numerical_abort_exit_code(tmp_path, capsys):
    cfg = {"grid": {"n": [4, 4, 64]}, "scenario": {"kind": "gaussian_pulse", "width": 0.08},
           "solver": {"dt": 0.2, "steps": 400, "sample_every": 400}}
    rc = main(["simulate", "--config", write_cfg(tmp_path, cfg), "--out", str(tmp_path), "--allow-high-cfl"])
    assert rc == EXIT_ABORT
    assert "numerical abort at step" in capsys.readouterr().err


def test_convergence_subcommand(tmp_path, capsys):
    cfg = write_cfg(tmp_path, PLANE)
    rc = main(["convergence", "--config", cfg, "--out", str(tmp_path), "--levels", "32,64"])
    out = capsys.readouterr().out
    assert rc == EXIT_PASS and "observed order" in out
    report = json.loads((tmp_path / "convergence.json").read_text())
    assert report["order"] == pytest.approx(2.0, abs=0.2)


def test_flags_override_config(tmp_path):
    cfg = write_cfg(tmp_path, {"seed": 1, "n_random": 50})
    main(["verify-algebra", "--config", cfg, "--seed", "9", "--out", str(tmp_path)])
    report = json.loads((tmp_path / "verify_algebra.json").read_text())
    assert report["seed"] == 9 and report["config"]["n_random"] == 50


def test_parse_levels():
    assert parse_levels("16,32,64") == [16, 32, 64]
    for bad in ("16", "32,16", "a,b", "2,4"):
        with pytest.raises(ConfigError):
            parse_levels(bad)


def test_seed_range_checked(capsys):
    assert main(["verify-algebra", "--seed", "-1"]) == EXIT_CONFIG
