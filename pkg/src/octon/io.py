"""File formats: field snapshots, residual reports and the diagnostics CSV.

Snapshot layout (little-endian)::

    3 x uint64   nx, ny, nz
    3 x float64  hx, hy, hz
    nx*ny*nz*16 float64   per site (z fastest): re, im of the 8 components
                          in basis order 1, i, j, k, E, I, J, K

A ``.json`` sidecar next to the ``.bin`` names the layout and grades.
"""

from __future__ import annotations

import csv
import json
import struct
from pathlib import Path

import numpy as np

from .algebra import BASIS_SYMBOLS, Grade
from .fieldgrid import Grid3, OctonField

_HEADER = struct.Struct("<3Q3d")


def write_snapshot(path, field: OctonField, **meta) -> tuple[Path, Path]:
    """Write ``<path>.bin`` and ``<path>.json``; returns both paths."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    g = field.grid
    bin_path, json_path = path.with_suffix(".bin"), path.with_suffix(".json")
    # (8, nx, ny, nz) complex -> (nx, ny, nz, 8, 2) real
    per_site = np.stack([field.data.real, field.data.imag], axis=-1)
    per_site = np.moveaxis(per_site, 0, 3).astype("<f8", copy=False)
    with open(bin_path, "wb") as fh:
        fh.write(_HEADER.pack(*g.n, *g.h))
        fh.write(np.ascontiguousarray(per_site).tobytes())
    sidecar = {
        "format": "octon-field-snapshot",
        "version": 1,
        "n": list(g.n),
        "h": list(g.h),
        "origin": list(g.origin),
        "byte_order": "little",
        "site_order": "row-major, z fastest",
        "reals_per_site": 16,
        "components": [f"{s}.{part}" for s in BASIS_SYMBOLS for part in ("re", "im")],
        "grades": {gr.value: [BASIS_SYMBOLS[i] for i in gr.indices] for gr in Grade},
        **meta,
    }
    json_path.write_text(json.dumps(sidecar, indent=2))
    return bin_path, json_path


def read_snapshot(path) -> OctonField:
    path = Path(path)
    raw = path.with_suffix(".bin").read_bytes()
    nx, ny, nz, hx, hy, hz = _HEADER.unpack_from(raw)
    body = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    expected = nx * ny * nz * 16
    if body.size != expected:
        raise ValueError(f"snapshot body holds {body.size} reals, expected {expected}")
    sites = body.reshape(nx, ny, nz, 8, 2)
    data = np.moveaxis(sites[..., 0] + 1j * sites[..., 1], 3, 0)
    origin = (0.0, 0.0, 0.0)
    sidecar = path.with_suffix(".json")
    if sidecar.exists():
        origin = tuple(json.loads(sidecar.read_text()).get("origin", origin))
    return OctonField(Grid3((nx, ny, nz), (hx, hy, hz), origin), data)


def write_report(path, report: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, sort_keys=True, default=_jsonable))
    return path


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_diagnostics_csv(path, records) -> Path:
    from .solver import CSV_COLUMNS
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow(r.row())
    return path


def read_diagnostics_csv(path) -> list[dict[str, float | None]]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [{k: (None if v == "" else float(v)) for k, v in row.items()} for row in rows]
