"""Serialisation: CSV, OBJ polylines, gnuplot data blocks and JSON reports.

Floats are written with ``%.17g`` so a CSV round trip is bit-exact.  Output
is produced with explicit format strings rather than locale-aware routines,
so the decimal separator is always ``.``.
"""

import csv
import json
import math
from pathlib import Path

import numpy as np

from .curves import SampledCurve

CSV_COLUMNS = ("s", "t", "theta", "x", "y", "z", "Tx", "Ty", "Tz",
               "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa", "tau")


def format_float(value):
    value = float(value)
    if math.isnan(value):
        return ""
    return "%.17g" % value


def _parse_float(text):
    text = text.strip()
    return math.nan if text == "" else float(text)


def curve_rows(curve):
    """Yield one list of strings per sample in :data:`CSV_COLUMNS` order."""
    blank = ["", "", ""]
    for i in range(len(curve)):
        row = [format_float(curve.s[i]), format_float(curve.t[i]), format_float(curve.theta[i])]
        row += [format_float(v) for v in curve.position[i]]
        for col in ("T", "N", "B"):
            arr = getattr(curve, col)
            row += blank if arr is None else [format_float(v) for v in arr[i]]
        row += [format_float(curve.kappa[i]), format_float(curve.tau[i])]
        yield row


def write_csv(curve, path):
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(curve_rows(curve))


def read_csv(path):
    """Load a CSV written by :func:`write_csv` into a :class:`SampledCurve`.

    Frame columns that are entirely empty load as ``None``.  The stored
    parameter is ``"t"`` when the t column is filled and uniformly spaced,
    ``"s"`` otherwise.
    """
    with open(path, newline="", encoding="ascii") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CSV_COLUMNS:
            raise ValueError(f"{path}: expected header {','.join(CSV_COLUMNS)}")
        rows = [[_parse_float(v) for v in row] for row in reader if row]
    if not rows:
        raise ValueError(f"{path}: no samples")
    data = np.array(rows, dtype=float)
    if data.shape[1] != len(CSV_COLUMNS):
        raise ValueError(f"{path}: rows must have {len(CSV_COLUMNS)} fields")
    col = {name: data[:, i] for i, name in enumerate(CSV_COLUMNS)}

    def block(names):
        arr = np.column_stack([col[n] for n in names])
        return None if np.all(np.isnan(arr)) else arr

    t = col["t"]
    parameter = "s"
    if np.all(np.isfinite(t)) and t.size > 2:
        steps = np.diff(t)
        # closed forms whose arc length falls with t are stored in decreasing t
        if (np.all(steps > 0) or np.all(steps < 0)) and np.ptp(steps) <= 1e-8 * abs(steps.mean()):
            parameter = "t"
    return SampledCurve(
        s=col["s"], t=t, theta=col["theta"], position=block(("x", "y", "z")),
        T=block(("Tx", "Ty", "Tz")), N=block(("Nx", "Ny", "Nz")), B=block(("Bx", "By", "Bz")),
        kappa=col["kappa"], tau=col["tau"], parameter=parameter,
        meta={"source": str(path)},
    )


def write_obj(curve, path, name=None):
    """Polyline as ``v`` vertices joined by a single ``l`` record."""
    with open(path, "w", encoding="ascii") as fh:
        if name:
            fh.write(f"o {name}\n")
        for p in curve.position:
            fh.write("v %s %s %s\n" % tuple(format_float(v) for v in p))
        k = len(curve)
        if k >= 2:
            fh.write("l " + " ".join(str(i) for i in range(1, k + 1)) + "\n")


def write_gnuplot(curves, path, labels=None):
    """x y z columns, one block per curve separated by a blank line."""
    with open(path, "w", encoding="ascii") as fh:
        for j, curve in enumerate(curves):
            if j:
                fh.write("\n")
            if labels:
                fh.write(f"# {labels[j]}\n")
            for p in curve.position:
                fh.write(" ".join(format_float(v) for v in p) + "\n")


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def report_bundle(reports, **context):
    """JSON-ready dict: context fields, every report, and the overall verdict."""
    items = [r.to_dict() for r in reports]
    return _clean({**context, "pass": all(r["pass"] is not False for r in items), "reports": items})


def write_json(obj, path):
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="ascii")


def write_curve(curve, path, fmt=None):
    """Dispatch on ``fmt`` (or the file suffix): csv, obj or dat."""
    fmt = (fmt or Path(path).suffix.lstrip(".") or "csv").lower()
    if fmt == "csv":
        write_csv(curve, path)
    elif fmt == "obj":
        write_obj(curve, path)
    elif fmt in ("dat", "gnuplot"):
        write_gnuplot([curve], path)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
