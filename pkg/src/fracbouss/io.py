"""File formats: diagnostics/region/shell CSV, spectral dumps, witness JSON.

Every writer goes through :func:`write_atomic` so a reader never sees a
half-written file.

Spectral dump layout (little-endian)::

    magic    4 bytes   b"FBSD"
    version  uint32    1
    n        uint32    grid size
    nfields  uint32
    t, alpha, beta     float64 each
    then per field:
        name   8 bytes, NUL padded
        n*n records of (int32 xi1, int32 xi2, float64 re, float64 im)
        in FFT order (row-major over the coefficient array)
"""
from __future__ import annotations

import json
import os
import struct
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from .region import WITNESS_FIELDS, FeasibilityWitness, RegionMap
from .spectral import Grid, SpectralField

DUMP_MAGIC = b"FBSD"
DUMP_VERSION = 1
_HEADER = struct.Struct("<4sIIIddd")
_RECORD = np.dtype([("xi1", "<i4"), ("xi2", "<i4"), ("re", "<f8"), ("im", "<f8")])


class DumpFormatError(ValueError):
    pass


def write_atomic(path, data) -> None:
    """Write ``data`` (str or bytes) to a temp file, then rename over ``path``."""
    path = Path(path)
    if isinstance(data, str):
        data = data.encode("utf-8")
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_value(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return str(x)
    return "%.17g" % x


def csv_text(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row has {len(row)} values for {len(columns)} columns")
        lines.append(",".join("" if v is None else format_value(v) for v in row))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# spectral dumps


def dump_bytes(fields: dict, t: float, alpha: float, beta: float) -> bytes:
    grids = {f.grid for f in fields.values()}
    if len(grids) != 1:
        raise ValueError("all dumped fields must share a grid")
    grid = grids.pop()
    n = grid.n
    parts = [_HEADER.pack(DUMP_MAGIC, DUMP_VERSION, n, len(fields), t, alpha, beta)]
    k1 = grid.k1.ravel().astype("<i4")
    k2 = grid.k2.ravel().astype("<i4")
    for name, f in fields.items():
        raw = name.encode("ascii")
        if len(raw) > 8:
            raise ValueError(f"field name {name!r} longer than 8 bytes")
        rec = np.empty(n * n, dtype=_RECORD)
        rec["xi1"], rec["xi2"] = k1, k2
        rec["re"], rec["im"] = f.coeffs.real.ravel(), f.coeffs.imag.ravel()
        parts += [raw.ljust(8, b"\0"), rec.tobytes()]
    return b"".join(parts)


def dump_state(path, state, alpha: float, beta: float) -> None:
    write_atomic(
        path, dump_bytes({"omega": state.omega, "theta": state.theta}, state.t, alpha, beta)
    )


def load_dump(path) -> tuple[dict, dict]:
    """Read a dump; returns ``(fields, meta)`` with meta keys t, alpha, beta, n."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise DumpFormatError("file too short for a dump header")
    magic, version, n, count, t, alpha, beta = _HEADER.unpack_from(data)
    if magic != DUMP_MAGIC:
        raise DumpFormatError(f"bad magic {magic!r}")
    if version != DUMP_VERSION:
        raise DumpFormatError(f"unsupported dump version {version}")
    grid = Grid(int(n))
    size = 8 + n * n * _RECORD.itemsize
    if len(data) != _HEADER.size + count * size:
        raise DumpFormatError("dump length does not match its header")
    fields = {}
    pos = _HEADER.size
    for _ in range(count):
        name = data[pos : pos + 8].rstrip(b"\0").decode("ascii")
        rec = np.frombuffer(data, dtype=_RECORD, count=n * n, offset=pos + 8)
        if not (
            np.array_equal(rec["xi1"], grid.k1.ravel()) and np.array_equal(rec["xi2"], grid.k2.ravel())
        ):
            raise DumpFormatError(f"field {name!r}: wavenumbers out of order")
        coeffs = (rec["re"] + 1j * rec["im"]).reshape(n, n)
        fields[name] = SpectralField(grid, coeffs)
        pos += size
    return fields, {"t": t, "alpha": alpha, "beta": beta, "n": int(n)}


# ----------------------------------------------------------------------------
# witnesses and region maps


def _pair(x: Fraction) -> list:
    return [x.numerator, x.denominator]


def witness_to_dict(w: FeasibilityWitness) -> dict:
    out = {"alpha": _pair(w.alpha), "beta": _pair(w.beta)}
    for name in WITNESS_FIELDS:
        out[name] = _pair(getattr(w, name))
    d = w.derived
    out["derived"] = {
        "mu": _pair(d.mu),
        "varsigma": _pair(d.varsigma),
        "lambda": _pair(d.lam),
        "l": _pair(d.l),
        "s1": _pair(d.s1),
        "s2": _pair(d.s2),
    }
    return out


def witness_from_dict(doc: dict) -> FeasibilityWitness:
    values = {k: Fraction(*doc[k]) for k in ("alpha", "beta") + WITNESS_FIELDS}
    return FeasibilityWitness(**values)


def witness_json(w: FeasibilityWitness) -> str:
    return json.dumps(witness_to_dict(w), indent=2) + "\n"


REGION_COLUMNS = ["alpha", "beta", "feasible"] + list(WITNESS_FIELDS)


def region_csv_text(rmap: RegionMap) -> str:
    rows = []
    for c in rmap.cells:
        wit = [getattr(c.witness, f) if c.witness else None for f in WITNESS_FIELDS]
        rows.append([c.alpha, c.beta, c.feasible] + wit)
    return csv_text(REGION_COLUMNS, rows)


def shells_csv_text(spectrum, s_values) -> str:
    columns = ["j", "L2", "Linf"] + [f"weight_s{s:g}" for s in s_values]
    rows = []
    for i, j in enumerate(spectrum.j):
        rows.append(
            [int(j), float(spectrum.l2[i]), float(spectrum.linf[i])]
            + [float(2.0 ** (j * s)) for s in s_values]
        )
    return csv_text(columns, rows)
