"""CSV / JSON writers with fixed 17-significant-digit formatting and metadata sidecars."""

import csv
import hashlib
import json
import time
from pathlib import Path

import numpy as np

from . import __version__


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % float(x)


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def read_csv(path) -> tuple[list, np.ndarray]:
    with open(path) as fh:
        r = csv.reader(fh)
        header = next(r)
        data = np.array([[float(v) for v in row] for row in r])
    return header, data


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if np.isfinite(x) else str(x)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")
    return path


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_field_csv(path, field) -> Path:
    """Rows (theta, phi, value), theta outer and phi inner."""
    rows = (
        (t, p, field.values[i, k])
        for i, t in enumerate(field.thetas)
        for k, p in enumerate(field.phis)
    )
    return write_csv(path, ["theta", "phi", "value"], rows)


def read_field_csv(path, kind: str = "field"):
    """Inverse of write_field_csv."""
    from .observables import ObservableField

    _, data = read_csv(path)
    thetas = np.unique(data[:, 0])
    phis = np.unique(data[:, 1])
    return ObservableField(thetas, phis, data[:, 2].reshape(len(thetas), len(phis)), kind=kind)


def write_histogram_csv(path, hist) -> Path:
    return write_csv(path, ["bin_left", "bin_right", "density"], hist.rows())


def write_sidecar(path, config: dict, outputs, started: float, **extra) -> Path:
    """Metadata next to ``path``: resolved config, version, wall-clock, output checksums."""
    meta = {
        "config": config,
        "artifact_version": __version__,
        "wall_clock_seconds": time.time() - started,
        "outputs": {Path(p).name: sha256(p) for p in outputs},
        **extra,
    }
    return write_json(path, meta)
