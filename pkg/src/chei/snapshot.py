"""Lossless field snapshot format.

Layout: magic ``CHF1\\n``, ASCII header ``M_s <int>\\nN <int>\\ntime <float>\\n``,
then M_s^2 little-endian float64 samples, row-major.
"""
from __future__ import annotations

import numpy as np

from .errors import GridMismatch, MalformedFile
from .spectral import GridSpec, RealField

MAGIC = b"CHF1\n"


def write_snapshot(field: RealField, time: float, path) -> None:
    g = field.grid
    header = f"M_s {g.samples_per_axis}\nN {g.modes_per_axis}\ntime {time:.17g}\n"
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(header.encode("ascii"))
        fh.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes())


def read_snapshot(path) -> tuple[RealField, float]:
    with open(path, "rb") as fh:
        raw = fh.read()
    if not raw.startswith(MAGIC):
        raise MalformedFile(f"{path}: missing CHF1 magic")
    body = raw[len(MAGIC):]
    fields = {}
    offset = 0
    for key in ("M_s", "N", "time"):
        end = body.find(b"\n", offset)
        if end < 0:
            raise MalformedFile(f"{path}: truncated header")
        line = body[offset:end].decode("ascii", errors="replace")
        parts = line.split()
        if len(parts) != 2 or parts[0] != key:
            raise MalformedFile(f"{path}: expected header line '{key} <value>', got '{line}'")
        fields[key] = parts[1]
        offset = end + 1
    try:
        m = int(fields["M_s"])
        n = int(fields["N"])
        time = float(fields["time"])
    except ValueError as exc:
        raise MalformedFile(f"{path}: bad header value ({exc})") from None
    data = body[offset:]
    expected = m * m * 8
    if len(data) != expected:
        raise MalformedFile(
            f"{path}: expected {expected} payload bytes for M_s={m}, got {len(data)}")
    try:
        grid = GridSpec(n, m)
    except ValueError as exc:
        raise MalformedFile(f"{path}: inconsistent grid header ({exc})") from None
    values = np.frombuffer(data, dtype="<f8").reshape(m, m).astype(float)
    return RealField(grid, values), time


def require_grid(field: RealField, grid: GridSpec, path) -> RealField:
    if field.grid != grid:
        raise GridMismatch(
            f"{path}: snapshot grid (N={field.grid.modes_per_axis}, "
            f"M_s={field.grid.samples_per_axis}) does not match requested grid "
            f"(N={grid.modes_per_axis}, M_s={grid.samples_per_axis})")
    return field
