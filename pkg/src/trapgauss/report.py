"""Report documents, their serialization, and mesh export.

Reports are JSON documents validated against ``report_schema.json``.  Floats
are written with 17 significant digits, so serializing, parsing and
serializing again reproduces the same bytes.
"""

from __future__ import annotations

import json
import math
from importlib import resources

import jsonschema
import numpy as np

from .errors import DegenerateProjection

SCHEMA_VERSION = "1.0"


def _float_text(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _emit(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_float_text(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, value) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(key), ensure_ascii=False) + ": ")
            _emit(value, indent, level + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in items):
            out.append("[")
            for k, v in enumerate(items):
                _emit(v, indent, level + 1, out)
                if k < len(items) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for k, v in enumerate(items):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if k < len(items) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text with 17-digit floats and a trailing newline."""
    out = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"


def loads(text: str):
    return json.loads(text)


def schema() -> dict:
    return json.loads(resources.files("trapgauss").joinpath("report_schema.json").read_text())


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``report`` does not match the schema."""
    jsonschema.validate(report, schema())


def stats(values) -> dict:
    a = np.asarray([v for v in values if v is not None], dtype=float)
    if a.size == 0:
        return {"min": None, "max": None, "mean": None}
    return {"min": float(a.min()), "max": float(a.max()), "mean": float(a.mean())}


def check_projection(projection, dim: int) -> tuple:
    """Validate three distinct coordinate indices below ``dim``."""
    proj = tuple(int(i) for i in projection)
    if len(proj) != 3:
        raise ValueError("projection needs exactly three coordinate indices")
    if len(set(proj)) < 3:
        raise DegenerateProjection(f"projection {proj} repeats a coordinate")
    if not all(0 <= i < dim for i in proj):
        raise ValueError(f"projection {proj} is out of range for {dim} coordinates")
    return proj


def export_mesh(positions, projection, valid=None) -> str:
    """Wavefront OBJ text of a structured grid of ambient points.

    Parameters
    ----------
    positions : array of shape (ny, nx, m)
        Ambient coordinates at each grid node.
    projection : three distinct coordinate indices
        Which ambient coordinates become ``x y z``.
    valid : boolean array of shape (ny, nx), optional
        Nodes to keep; faces touching a dropped node are omitted.

    Raises
    ------
    DegenerateProjection
        Two projection indices coincide.
    """
    P = np.asarray(positions, dtype=float)
    if P.ndim != 3:
        raise ValueError("positions must have shape (ny, nx, m)")
    proj = check_projection(projection, P.shape[2])
    ny, nx, _ = P.shape
    valid = np.ones((ny, nx), dtype=bool) if valid is None else np.asarray(valid, dtype=bool)
    number = np.zeros((ny, nx), dtype=np.int64)
    lines = [f"# projection {proj[0]},{proj[1]},{proj[2]}", f"# grid {ny}x{nx}"]
    k = 0
    for j in range(ny):
        for i in range(nx):
            if valid[j, i]:
                k += 1
                number[j, i] = k
                x, y, z = (P[j, i, c] for c in proj)
                lines.append(f"v {_float_text(x)} {_float_text(y)} {_float_text(z)}")
    for j in range(ny - 1):
        for i in range(nx - 1):
            a, b, c, d = number[j, i], number[j, i + 1], number[j + 1, i + 1], number[j + 1, i]
            if min(a, b, c, d) > 0:
                lines.append(f"f {a} {b} {c}")
                lines.append(f"f {a} {c} {d}")
    return "\n".join(lines) + "\n"
