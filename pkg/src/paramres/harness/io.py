"""Atomic CSV/JSON writers.

Floats are written with ``repr``, the shortest string that round-trips.
"""

from __future__ import annotations

import json
import math
import os
import tempfile


def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool,)) or value is None:
        return str(value)
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def atomic_write_text(path, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header, columns):
    """Write equal-length ``columns`` under ``header`` (comma separated)."""
    lengths = {len(c) for c in columns}
    if len(lengths) > 1:
        raise ValueError(f"column lengths differ: {sorted(lengths)}")
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
    return path


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _jsonable(obj.item())
    return obj


def write_json(path, data):
    atomic_write_text(path, json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n")
    return path


def read_csv(path):
    """Return ``(header, rows)`` with rows as lists of strings."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]
