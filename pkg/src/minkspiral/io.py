"""Curve files: CurveFileV1 JSON, CSV export and SVG polylines.

Floats are written with Python's shortest round-trip repr, so reading a file
and writing it again reproduces it byte for byte.
"""

import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from .curve import SampledCurve
from .errors import CurveFormatError, GridError, NullCaseError
from .lorentz import CurveCase

FORMAT_VERSION = 1
SIGNATURE = "++-"
CSV_HEADER = ["s", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa", "tau"]


def _vec(v):
    return [float(x) for x in v]


def curve_to_dict(curve):
    samples = []
    for i in range(len(curve)):
        samples.append({
            "s": float(curve.s[i]),
            "point": _vec(curve.points[i]),
            "T": _vec(curve.T[i]),
            "N": _vec(curve.N[i]),
            "B": _vec(curve.B[i]),
            "kappa": float(curve.kappa[i]),
            "tau": float(curve.tau[i]),
        })
    return {
        "version": FORMAT_VERSION,
        "signature": SIGNATURE,
        "case": curve.case.value,
        "step": float(curve.step),
        "samples": samples,
    }


def dumps_curve(curve):
    return json.dumps(curve_to_dict(curve), indent=1, allow_nan=False) + "\n"


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise CurveFormatError(f"{where}: expected a finite number, got {x!r}")
    return float(x)


def _triple(x, where):
    if not isinstance(x, list) or len(x) != 3:
        raise CurveFormatError(f"{where}: expected an array of 3 numbers")
    return [_number(v, where) for v in x]


def curve_from_dict(doc):
    if not isinstance(doc, dict):
        raise CurveFormatError("curve file must be a JSON object")
    if "version" not in doc:
        raise CurveFormatError("missing mandatory 'version' field")
    if doc["version"] != FORMAT_VERSION:
        raise CurveFormatError(f"unsupported version {doc['version']!r}")
    if doc.get("signature", SIGNATURE) != SIGNATURE:
        raise CurveFormatError(f"unsupported signature {doc.get('signature')!r}")
    try:
        case = CurveCase.from_name(str(doc.get("case", "")))
    except (ValueError, NullCaseError) as exc:
        raise CurveFormatError(str(exc)) from None
    samples = doc.get("samples")
    if not isinstance(samples, list) or not samples:
        raise CurveFormatError("'samples' must be a nonempty array")
    cols = {k: [] for k in ("s", "point", "T", "N", "B", "kappa", "tau")}
    for i, rec in enumerate(samples):
        if not isinstance(rec, dict):
            raise CurveFormatError(f"sample {i} is not an object")
        for key in cols:
            if key not in rec:
                raise CurveFormatError(f"sample {i} lacks '{key}'")
            where = f"sample {i} field '{key}'"
            if key in ("point", "T", "N", "B"):
                cols[key].append(_triple(rec[key], where))
            else:
                cols[key].append(_number(rec[key], where))
    s = np.array(cols["s"])
    if s.size > 1 and np.any(np.diff(s) <= 0):
        raise CurveFormatError("sample 's' values must be strictly ascending")
    step = _number(doc["step"], "step") if "step" in doc else None
    try:
        return SampledCurve(
            case, s, np.array(cols["point"]), np.array(cols["T"]), np.array(cols["N"]),
            np.array(cols["B"]), np.array(cols["kappa"]), np.array(cols["tau"]), step,
        )
    except GridError as exc:
        raise CurveFormatError(f"bad sample grid: {exc}") from None


def loads_curve(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFormatError(f"not valid JSON: {exc}") from None
    return curve_from_dict(doc)


def read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CurveFormatError(f"cannot read {path}: {exc.strerror}") from None


def read_curve(path):
    return loads_curve(read_text(path))


def write_text(path, text):
    """Write ``text`` atomically (temp file + rename); ``-`` means stdout."""
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_curve(path, curve):
    write_text(path, dumps_curve(curve))


def dumps_csv(curve):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i in range(len(curve)):
        row = [curve.s[i], *curve.points[i], *curve.T[i], *curve.N[i], *curve.B[i],
               curve.kappa[i], curve.tau[i]]
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def loads_csv(text):
    """Parse exported CSV into a dict of column arrays."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise CurveFormatError("unexpected CSV header")
    rows = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(CSV_HEADER))
    return {name: data[:, i] for i, name in enumerate(CSV_HEADER)}


# ---------------------------------------------------------------------------
# SVG

_PLANES = {"yz": (1, 2), "xz": (0, 2), "xy": (0, 1)}


def render_svg(curve, plane="yz", width=600, height=600, margin=0.05):
    """SVG 1.1 document with the curve projected on a coordinate plane as one polyline.

    The viewBox is the bounding box of the projection grown by ``margin`` on
    each side; the vertical coordinate is negated so it points up.
    """
    if plane not in _PLANES:
        raise CurveFormatError(f"unknown plane {plane!r}; expected one of {', '.join(_PLANES)}")
    if len(curve) == 0:
        raise CurveFormatError("curve has no samples")
    i, j = _PLANES[plane]
    u = curve.points[:, i]
    v = 0.0 - curve.points[:, j]
    umin, umax = float(u.min()), float(u.max())
    vmin, vmax = float(v.min()), float(v.max())
    span_u = umax - umin or 1.0
    span_v = vmax - vmin or 1.0
    mu, mv = margin * span_u, margin * span_v
    view = (umin - mu, vmin - mv, span_u + 2 * mu, span_v + 2 * mv)
    pts = " ".join(f"{a:.10g},{b:.10g}" for a, b in zip(u, v))
    stroke = 0.004 * max(view[2], view[3])
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="{view[0]:.10g} {view[1]:.10g} {view[2]:.10g} {view[3]:.10g}">\n'
        f'  <title>{curve.case.value} curve, {plane} projection</title>\n'
        f'  <polyline fill="none" stroke="black" stroke-width="{stroke:.6g}" points="{pts}"/>\n'
        "</svg>\n"
    )
