"""CSV exchange formats for correlation traces, counts and distributions.

Correlation CSV header:
    tau_ns,rect_co,rect_cross,diag_co,diag_cross,circ_co,circ_cross
Counts columns (from synthetic histograms) use the suffix `_counts` plus a
constant `counts_scale` column carrying the exposure scale.
"""

import csv
import io

import numpy as np

from .emission import CorrelationSet

VALUE_COLUMNS = ("rect_co", "rect_cross", "diag_co", "diag_cross",
                 "circ_co", "circ_cross")

_COL_TO_KEY = {
    "rect_co": ("rectilinear", "co"),
    "rect_cross": ("rectilinear", "cross"),
    "diag_co": ("diagonal", "co"),
    "diag_cross": ("diagonal", "cross"),
    "circ_co": ("circular", "co"),
    "circ_cross": ("circular", "cross"),
}


class DataError(ValueError):
    """Malformed CSV data input."""


def write_correlations_csv(correlations):
    """Render a CorrelationSet as CSV text (6 significant digits)."""
    cs = correlations
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["tau_ns"]
    has_values = bool(cs.traces)
    if has_values:
        header += list(VALUE_COLUMNS)
    if cs.counts is not None:
        header += [c + "_counts" for c in VALUE_COLUMNS] + ["counts_scale"]
    writer.writerow(header)
    for i, tau in enumerate(cs.tau_grid):
        row = [f"{tau:.6g}"]
        if has_values:
            row += [f"{cs.traces[_COL_TO_KEY[c]][i]:.6g}" for c in VALUE_COLUMNS]
        if cs.counts is not None:
            row += [str(int(cs.counts[_COL_TO_KEY[c]][i])) for c in VALUE_COLUMNS]
            row += [f"{cs.counts_scale:.6g}"]
        writer.writerow(row)
    return buf.getvalue()


def load_csv(text):
    """Parse correlation CSV text into a CorrelationSet.

    Accepts value columns, counts columns (with `counts_scale`), or both.
    When only counts are present the traces are reconstructed as
    counts/counts_scale.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty CSV input") from None
    header = [h.strip() for h in header]
    if not header or header[0] != "tau_ns":
        raise DataError("bad header: first column must be 'tau_ns'")
    col_index = {name: i for i, name in enumerate(header)}
    if len(col_index) != len(header):
        raise DataError("bad header: duplicate column")

    has_values = any(c in col_index for c in VALUE_COLUMNS)
    if has_values:
        for c in VALUE_COLUMNS:
            if c not in col_index:
                raise DataError(f"bad header: missing column {c!r}")
    count_cols = [c + "_counts" for c in VALUE_COLUMNS]
    has_counts = any(c in col_index for c in count_cols)
    if has_counts:
        for c in count_cols + ["counts_scale"]:
            if c not in col_index:
                raise DataError(f"bad header: missing column {c!r}")
    if not has_values and not has_counts:
        raise DataError(f"bad header: missing column {VALUE_COLUMNS[0]!r}")
    known = {"tau_ns", "counts_scale", *VALUE_COLUMNS, *count_cols}
    for c in header:
        if c not in known:
            raise DataError(f"bad header: unknown column {c!r}")

    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            raise DataError(f"line {lineno}: expected {len(header)} cells, "
                            f"got {len(row)}")
        try:
            rows.append([float(c) for c in row])
        except ValueError:
            raise DataError(f"line {lineno}: non-numeric cell") from None
    if not rows:
        raise DataError("no data rows")
    data = np.array(rows)
    tau = data[:, col_index["tau_ns"]]
    if np.any(np.diff(tau) <= 0.0):
        raise DataError("tau_ns must be strictly increasing")

    counts = None
    counts_scale = None
    if has_counts:
        counts = {_COL_TO_KEY[c]: data[:, col_index[c + "_counts"]]
                  for c in VALUE_COLUMNS}
        scale_col = data[:, col_index["counts_scale"]]
        if np.any(scale_col != scale_col[0]):
            raise DataError("counts_scale must be constant")
        counts_scale = float(scale_col[0])
        if counts_scale <= 0.0:
            raise DataError("counts_scale must be > 0")
    if has_values:
        traces = {_COL_TO_KEY[c]: data[:, col_index[c]] for c in VALUE_COLUMNS}
    else:
        traces = {key: vals / counts_scale for key, vals in counts.items()}
    return CorrelationSet(tau_grid=tau, traces=traces, counts=counts,
                          counts_scale=counts_scale)


def write_distribution_csv(x, pdfs, labels):
    """Splitting-distribution CSV: `s_over_sigma,pdf` (one pdf column per
    requested s_r/sigma ratio; a single ratio keeps the plain `pdf` header)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if len(pdfs) == 1:
        writer.writerow(["s_over_sigma", "pdf"])
    else:
        writer.writerow(["s_over_sigma"] + [f"pdf_sr_{lab}" for lab in labels])
    for i, xi in enumerate(x):
        writer.writerow([f"{xi:.6g}"] + [f"{p[i]:.12g}" for p in pdfs])
    return buf.getvalue()


def write_fidelity_csv(trace):
    """Fidelity CSV: `tau_ns,fidelity`."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tau_ns", "fidelity"])
    for tau, f in zip(trace.tau_grid, trace.f):
        writer.writerow([f"{tau:.6g}", f"{f:.6g}"])
    return buf.getvalue()
