"""CSV / OBJ / JSON writers with round-trip-safe, locale-independent number formatting."""
from __future__ import annotations

import io
import json
import math

import numpy as np


def fmt(x) -> str:
    """17 significant digits, '.' decimal separator; NaN written as ``nan``."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def csv_text(header, rows, comments=()) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")
    for c in comments:
        buf.write(f"# {c}\n")
    return buf.getvalue()


def obj_text(vertices, comments=()) -> str:
    """Wavefront OBJ of a quad grid ``vertices[i, j] = (x1, x2, x3)``, quads split in two triangles.

    Faces touching a non-finite vertex are dropped (the vertex is still
    written so indices follow the grid order), as are triangles with two
    coincident vertices (e.g. the centre row of a polar grid).
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 3 or v.shape[2] != 3:
        raise ValueError("vertices must have shape (n_i, n_j, 3)")
    ni, nj, _ = v.shape
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    for p in v.reshape(-1, 3):
        buf.write("v " + " ".join(fmt(c) for c in p) + "\n")
    ok = np.all(np.isfinite(v), axis=2)

    def idx(i, j):
        return i * nj + j + 1

    for i in range(ni - 1):
        for j in range(nj - 1):
            if not (ok[i, j] and ok[i + 1, j] and ok[i, j + 1] and ok[i + 1, j + 1]):
                continue
            quad = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            for tri in ((0, 1, 2), (0, 2, 3)):
                corners = [quad[k] for k in tri]
                pts = [tuple(v[c]) for c in corners]
                if len(set(pts)) < 3:
                    continue
                buf.write("f " + " ".join(str(idx(*c)) for c in corners) + "\n")
    return buf.getvalue()


def read_obj_vertices(text: str) -> np.ndarray:
    rows = [line.split()[1:4] for line in text.splitlines() if line.startswith("v ")]
    return np.array(rows, dtype=float)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (complex, np.complexfloating)):
        return [_jsonable(x.real), _jsonable(x.imag)]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def json_text(obj) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, non-finite floats as null."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
