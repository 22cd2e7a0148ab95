"""Shape files: CSV ``x,y,gamma,kappa`` preceded by one ``# key=value`` comment line.

A JSON sidecar (``<path>.json``) carries the same metadata. Numbers are
written with 17 significant digits, ``.`` as decimal separator and LF line
endings, so identical shapes give byte-identical files.
"""

import json
import math
from pathlib import Path

import numpy as np

from .errors import DomainError

__all__ = ["fmt", "write_shape", "read_shape", "write_rows", "sidecar_path"]

META_KEYS = ("c1", "c2", "c1_hat", "q", "area")


def fmt(v):
    """17 significant digits, locale independent."""
    if v is None:
        return "nan"
    # + 0.0 folds -0.0 into 0.0
    return format(float(v) + 0.0, ".17g")


def sidecar_path(path):
    path = Path(path)
    return path.with_name(path.name + ".json")


def write_shape(path, points, gamma, kappa, meta):
    path = Path(path)
    lines = ["# " + " ".join(f"{k}={fmt(meta.get(k))}" for k in META_KEYS), "x,y,gamma,kappa"]
    for (x, y), g, k in zip(points, gamma, kappa):
        lines.append(",".join(fmt(v) for v in (x, y, g, k)))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    side = {k: (None if meta.get(k) is None else float(meta[k])) for k in META_KEYS}
    side["n_points"] = len(points)
    side["columns"] = ["x", "y", "gamma", "kappa"]
    sidecar_path(path).write_text(json.dumps(side, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="\n")
    return path


def read_shape(path):
    """Return ``(points, gamma, kappa, meta)``.

    Files holding only ``x,y`` columns are accepted; gamma and kappa are then
    None.
    """
    meta = {}
    rows = []
    header = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    key, _, val = tok.partition("=")
                    try:
                        meta[key] = float(val)
                    except ValueError:
                        meta[key] = val
                continue
            if header is None:
                header = [h.strip() for h in line.split(",")]
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None or not rows:
        raise DomainError(f"{path}: no shape data")
    data = np.array(rows)
    col = {name: i for i, name in enumerate(header)}
    if "x" not in col or "y" not in col:
        raise DomainError(f"{path}: header must contain x and y")
    points = data[:, [col["x"], col["y"]]]
    gamma = data[:, col["gamma"]] if "gamma" in col else None
    kappa = data[:, col["kappa"]] if "kappa" in col else None
    meta = {k: v for k, v in meta.items() if not (isinstance(v, float) and math.isnan(v))}
    return points, gamma, kappa, meta


def write_rows(path_or_file, header, rows):
    """Write a CSV table with 17-digit numbers (integers kept as integers)."""

    def cell(v):
        return str(v) if isinstance(v, (int, np.integer)) and not isinstance(v, bool) else fmt(v)

    text = ",".join(header) + "\n" + "".join(",".join(cell(v) for v in r) + "\n" for r in rows)
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        Path(path_or_file).write_text(text, encoding="utf-8", newline="\n")
