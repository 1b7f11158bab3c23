"""Text serialization for MIC documents, reports, and histogram tables.

All documents are JSON with a fixed float format: every float is written
as decimal scientific notation with 17 significant digits, which is
enough to round-trip IEEE doubles exactly, so gen/analyze pipelines are
byte-stable.  The stdlib json writer does not expose float formatting,
hence the small emitter here; anything it writes is plain JSON and reads
back with json.loads.
"""

from __future__ import annotations

import json
import numbers
from fractions import Fraction

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .povm import Mic, mic_from_matrices


def format_float(x: float) -> str:
    """17 significant digits, exact double round trip.

    Negative zero is written as plain zero so that a serialize/parse/
    reserialize cycle is byte-stable (complex arithmetic flips zero
    signs freely).
    """
    x = float(x) + 0.0
    if not np.isfinite(x):
        raise ValueError(f"documents may not contain non-finite numbers, got {x}")
    return f"{x:.16e}"


def dumps(doc, indent: int = 0) -> str:
    """Serialize a document (dicts, lists, numbers, strings, bools, None)."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = (f'{inner}{json.dumps(str(k))}: {dumps(v, indent + 2)}'
                 for k, v in doc.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(doc, (list, tuple, np.ndarray)):
        seq = list(doc)
        if not seq:
            return "[]"
        flat = all(isinstance(v, (numbers.Number, str)) for v in seq)
        if flat:
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        items = (inner + dumps(v, indent + 2) for v in seq)
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(doc, (bool, np.bool_)):
        return "true" if doc else "false"
    if doc is None:
        return "null"
    if isinstance(doc, numbers.Integral):
        return str(int(doc))
    if isinstance(doc, numbers.Real):
        return format_float(doc)
    if isinstance(doc, str):
        return json.dumps(doc)
    raise TypeError(f"cannot serialize {type(doc).__name__}")


def loads(text: str):
    return json.loads(text)


def mic_to_document(mic: Mic) -> dict:
    """Plain-data form of a MIC: dimension plus effects as [re, im] grids."""
    effects = [[[ [float(z.real), float(z.imag)] for z in row] for row in m]
               for m in mic.matrices()]
    return {"dimension": mic.dim, "effects": effects}


def mic_from_document(doc: dict, tol: ToleranceConfig = DEFAULT_TOL) -> Mic:
    """Rebuild and fully validate a MIC from its document form."""
    if not isinstance(doc, dict):
        raise ValueError("MIC document must be a mapping")
    try:
        d = int(doc["dimension"])
        effects = doc["effects"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed MIC document: {exc}") from exc
    mats = []
    for m in effects:
        a = np.asarray(m, dtype=float)
        if a.shape != (d, d, 2):
            raise ValueError(f"effect has shape {a.shape}, expected ({d}, {d}, 2)")
        z = np.zeros((d, d), dtype=complex)
        z.real = a[..., 0]
        z.imag = a[..., 1]
        mats.append(z)
    return mic_from_matrices(mats, tol)


def histogram_to_table(h) -> str:
    """Plot-ready bin table: kind, d, bin_left, bin_right, count."""
    lines = ["kind,d,bin_left,bin_right,count"]
    edges = h.edges()
    for k, count in enumerate(h.counts):
        left = format_float(float(edges[k]))
        right = format_float(float(edges[k + 1]))
        lines.append(f"{h.kind.value},{h.d},{left},{right},{int(count)}")
    return "\n".join(lines) + "\n"


def parse_fraction(text: str) -> Fraction:
    """Exact rational from strings like 1/198, 0.005, or 3."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a fraction: {text!r}") from exc


def write_document(path, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc) + "\n")


def read_document(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
