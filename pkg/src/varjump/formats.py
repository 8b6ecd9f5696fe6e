"""Field and sequence file formats.

* Field CSV, n=1: header ``x,value`` then one row per grid point.
* Field CSV, n=2: header ``x0\\x1`` followed by the axis-1 coordinates; each
  row starts with its axis-0 coordinate (row-major values).
* Blob: raw little-endian float64 ``<stem>.bin`` plus ``<stem>.hdr`` with
  ``key=value`` lines (dimension, N, L, shape, and scales for families).
* Sequence CSV: one value per line, or ``index,value``; an optional
  non-numeric header line and ``#`` comments are skipped.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import DomainError
from .fields import Grid, SampledField, ScaleFamilyField
from .kernels import ScaleSet
from .seqvar import RealSequence


def write_field_csv(path, field: SampledField) -> Path:
    path = Path(path)
    grid = field.grid
    ax = grid.axis()
    vals = np.asarray(field.values)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        if grid.n == 1:
            w.writerow(["x", "value"])
            for x, v in zip(ax, vals):
                w.writerow([repr(float(x)), _fmt(v)])
        else:
            w.writerow(["x0\\x1", *(repr(float(x)) for x in ax)])
            for x, row in zip(ax, vals):
                w.writerow([repr(float(x)), *(_fmt(v) for v in row)])
    return path


def _fmt(v) -> str:
    return str(int(v)) if isinstance(v, (np.integer, int)) else repr(float(v))


def _grid_from_axis(ax: np.ndarray, n: int) -> Grid:
    if ax.size < 2:
        raise DomainError("field CSV needs at least two grid points")
    return Grid(n, float(-ax[0]), int(ax.size))


def read_field_csv(path) -> SampledField:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header[:2] == ["x", "value"]:
        ax = np.array([float(r[0]) for r in body])
        vals = np.array([float(r[1]) for r in body])
        return SampledField(_grid_from_axis(ax, 1), vals)
    ax = np.array([float(v) for v in header[1:]])
    vals = np.array([[float(v) for v in r[1:]] for r in body])
    return SampledField(_grid_from_axis(ax, 2), vals)


def write_blob(stem, values: np.ndarray, grid: Grid, scales: ScaleSet | None = None) -> tuple:
    stem = Path(stem)
    data = np.ascontiguousarray(values, dtype="<f8")
    bin_path, hdr_path = stem.with_suffix(".bin"), stem.with_suffix(".hdr")
    bin_path.write_bytes(data.tobytes())
    lines = [f"dimension={grid.n}", f"N={grid.N}", f"L={grid.L!r}",
             "shape=" + ",".join(str(s) for s in data.shape), "dtype=float64-le"]
    if scales is not None:
        lines.append("scales=" + ",".join(repr(t) for t in scales))
    hdr_path.write_text("\n".join(lines) + "\n")
    return bin_path, hdr_path


def read_blob(stem):
    """Return ``(SampledField or ScaleFamilyField, header dict)``."""
    stem = Path(stem)
    header = {}
    for line in stem.with_suffix(".hdr").read_text().splitlines():
        if line.strip():
            key, _, value = line.partition("=")
            header[key.strip()] = value.strip()
    shape = tuple(int(s) for s in header["shape"].split(","))
    data = np.frombuffer(stem.with_suffix(".bin").read_bytes(), dtype="<f8").reshape(shape)
    grid = Grid(int(header["dimension"]), float(header["L"]), int(header["N"]))
    if "scales" in header:
        scales = ScaleSet(tuple(float(t) for t in header["scales"].split(",")))
        return ScaleFamilyField(grid, scales, data), header
    return SampledField(grid, data.copy()), header


def parse_sequence(text: str) -> RealSequence:
    indices, values = [], []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        try:
            nums = [float(p) for p in parts]
        except ValueError:
            if first:
                first = False
                continue
            raise DomainError(f"line {lineno}: not a number: {line!r}") from None
        first = False
        if len(nums) == 1:
            values.append(nums[0])
            indices.append(None)
        elif len(nums) == 2:
            indices.append(nums[0])
            values.append(nums[1])
        else:
            raise DomainError(f"line {lineno}: expected 'value' or 'index,value'")
    if any(i is None for i in indices):
        if any(i is not None for i in indices):
            raise DomainError("mixed one- and two-column rows in sequence input")
        return RealSequence.from_values(values)
    return RealSequence(tuple(indices), tuple(values))
