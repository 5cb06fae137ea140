"""Series ingestion from CSV and tidy plot-data emission."""

from __future__ import annotations

import csv

import numpy as np

from .exceptions import CsvParseError, DataGapError
from .models import spectral_density_single_scale

__all__ = ["ingest_csv", "emit_plot_data"]

_MISSING = ("", "na", "nan", "null", "none")


def _is_missing(cell: str) -> bool:
    return cell.strip().lower() in _MISSING


def ingest_csv(path, column="x", *, difference: bool = False,
               demean: bool = False) -> tuple[np.ndarray, dict]:
    """Read one numeric column of a headed CSV into a series.

    column is a header name or a 0-based integer index.  Missing cells
    are tolerated only at the edges of the column and stripped; one in
    the interior raises.  Optional preprocessing applies a first
    difference, then demeaning; both are recorded in the returned
    metadata together with the values needed to invert them later
    (the subtracted mean, the last pre-difference level).
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvParseError("empty file", 1) from None
        if isinstance(column, int):
            if not 0 <= column < len(header):
                raise CsvParseError(f"no column index {column}", 1)
            col_idx = column
        else:
            try:
                col_idx = header.index(str(column))
            except ValueError:
                raise CsvParseError(f"no column named {column!r}", 1) from None
        cells: list[float | None] = []
        for rownum, record in enumerate(reader, start=2):
            if len(record) <= col_idx:
                raise CsvParseError("row too short", rownum)
            cell = record[col_idx]
            if _is_missing(cell):
                cells.append(None)
                continue
            try:
                cells.append(float(cell))
            except ValueError:
                raise CsvParseError(f"non-numeric cell {cell!r}", rownum) from None

    lead = 0
    while lead < len(cells) and cells[lead] is None:
        lead += 1
    trail = len(cells)
    while trail > lead and cells[trail - 1] is None:
        trail -= 1
    core = cells[lead:trail]
    if not core:
        raise CsvParseError("column holds no values", 2)
    for offset, value in enumerate(core):
        if value is None:
            raise DataGapError(f"missing value at row {lead + offset + 2}")
    x = np.asarray(core, dtype=float)

    meta: dict = {"column": column, "rows": len(x),
                  "difference": bool(difference), "demean": bool(demean)}
    if difference:
        if len(x) < 2:
            raise DataGapError("cannot difference a single observation")
        meta["last_level"] = float(x[-1])
        x = np.diff(x)
    if demean:
        meta["mean"] = float(x.mean())
        x = x - x.mean()
    return x, meta


def _write_rows(out, header, rows):
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def emit_plot_data(kind: str, payload, out) -> None:
    """Write tidy CSV ready for any plotting tool.

    kind "path": payload is a series; columns t,x.
    kind "coeffs-with-scales": payload is a fit report; columns
    lag,beta_hat,beta_constrained,is_scale_boundary.
    kind "spectral": payload is (alpha1, tau1, n_grid); n_grid
    frequencies over (0, 1/2), columns f,density.
    """
    if kind == "path":
        x = np.asarray(payload, dtype=float)
        _write_rows(out, ["t", "x"], [(t + 1, repr(float(v))) for t, v in enumerate(x)])
    elif kind == "coeffs-with-scales":
        report = payload
        boundaries = set(report.scales)
        rows = []
        for lag in range(1, report.chosen_p + 1):
            rows.append((
                lag,
                repr(report.beta_unconstrained.coeffs[lag - 1]),
                repr(report.beta_constrained.coeffs[lag - 1]),
                int(lag in boundaries),
            ))
        _write_rows(out, ["lag", "beta_hat", "beta_constrained", "is_scale_boundary"], rows)
    elif kind == "spectral":
        alpha1, tau1, n = payload
        n = int(n)
        if n < 1:
            raise ValueError("need at least one grid point")
        freqs = (np.arange(n) + 0.5) / (2.0 * n)  # open grid over (0, 1/2)
        rows = [(repr(float(f)), repr(spectral_density_single_scale(alpha1, tau1, float(f))))
                for f in freqs]
        _write_rows(out, ["f", "density"], rows)
    else:
        raise ValueError(f"unknown plot-data kind {kind!r}")
