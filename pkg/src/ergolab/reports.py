"""Report emission: CSV, JSON, SVG, and the run manifest.

Everything written here is byte-deterministic given the result object:
floats use the shortest round-trip decimal (`repr`), JSON keys are sorted,
and the SVG is assembled from the same formatted numbers. The manifest's
wall-clock field is the only timestamped value and lives outside the data
files, so reruns reproduce identical data checksums.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import time
from pathlib import Path

import numpy as np

from .errors import ReportIOError

ARTIFACT_VERSION = "0.1.0"


def fmt(value):
    """Shortest round-trip decimal for doubles; ints stay ints."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def to_jsonable(obj):
    """Recursive plain-data view of results (dataclasses, arrays, tuples)."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {
            f.name: to_jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
        for prop in ("gap",):
            if hasattr(type(obj), prop) and isinstance(
                getattr(type(obj), prop), property
            ):
                out[prop] = to_jsonable(getattr(obj, prop))
        return out
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return repr(obj)


def _write_text(path: Path, text):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ReportIOError(f"cannot write {path}: {exc}")


def write_csv(path: Path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def write_json(path: Path, obj):
    _write_text(
        path, json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"
    )


def write_svg(path: Path, xs, ys, xlabel, ylabel, title=""):
    """Flat deterministic line plot, 640 x 400, labeled axes."""
    w, h = 640, 400
    ml, mr, mt, mb = 60, 15, 25, 45
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return ml + (x - x0) / (x1 - x0) * (w - ml - mr)

    def sy(y):
        return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb)

    pts = " ".join(f"{fmt(sx(x))},{fmt(sy(y))}" for x, y in zip(xs, ys))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<line x1="{ml}" y1="{h - mb}" x2="{w - mr}" y2="{h - mb}" '
        'stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{h - mb}" stroke="black"/>',
        f'<polyline points="{pts}" fill="none" stroke="steelblue" '
        'stroke-width="1"/>',
        f'<text x="{(ml + w - mr) // 2}" y="{h - 10}" text-anchor="middle" '
        f'font-size="13">{xlabel}</text>',
        f'<text x="15" y="{(mt + h - mb) // 2}" text-anchor="middle" '
        f'font-size="13" transform="rotate(-90 15 {(mt + h - mb) // 2})">'
        f"{ylabel}</text>",
        f'<text x="{ml}" y="{h - mb + 18}" font-size="11">{fmt(x0)}</text>',
        f'<text x="{w - mr}" y="{h - mb + 18}" text-anchor="end" '
        f'font-size="11">{fmt(x1)}</text>',
        f'<text x="{ml - 5}" y="{h - mb}" text-anchor="end" '
        f'font-size="11">{fmt(y0)}</text>',
        f'<text x="{ml - 5}" y="{mt + 10}" text-anchor="end" '
        f'font-size="11">{fmt(y1)}</text>',
    ]
    if title:
        parts.append(
            f'<text x="{w // 2}" y="16" text-anchor="middle" '
            f'font-size="13">{title}</text>'
        )
    parts.append("</svg>")
    _write_text(path, "\n".join(parts) + "\n")


def sha256_file(path: Path):
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}")


def write_manifest(out_dir: Path, config_text, files):
    """Manifest with config hash, version, wall-clock, and file checksums."""
    manifest = {
        "config_sha256": hashlib.sha256(config_text.encode()).hexdigest(),
        "version": ARTIFACT_VERSION,
        "wall_clock_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "files": {
            str(Path(f).name): sha256_file(Path(f)) for f in sorted(files)
        },
    }
    path = out_dir / "manifest.json"
    _write_text(path, json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    return manifest


def emit_series(out_dir: Path, stem, header, xs, ys, flags, extra_json=None,
                xlabel=None, ylabel=None):
    """CSV + JSON + optional SVG for one (n, value) series; returns paths."""
    written = []
    if flags.get("csv", True):
        p = out_dir / f"{stem}.csv"
        write_csv(p, header, zip(xs, ys))
        written.append(p)
    if flags.get("json", True):
        p = out_dir / f"{stem}.json"
        payload = extra_json if extra_json is not None else {}
        payload = dict(payload)
        payload[header[0]] = to_jsonable(np.asarray(xs))
        payload[header[1]] = to_jsonable(np.asarray(ys))
        write_json(p, payload)
        written.append(p)
    if flags.get("svg", False):
        p = out_dir / f"{stem}.svg"
        write_svg(p, np.asarray(xs, dtype=np.float64),
                  np.asarray(ys, dtype=np.float64),
                  xlabel or header[0], ylabel or header[1])
        written.append(p)
    return written
