"""CSV output and run manifests.

Reals are written with 12 significant digits through ``repr``-free
formatting so output does not depend on locale; NaN is written as ``nan``.
"""

from __future__ import annotations

import hashlib
import math
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if hasattr(v, "dtype") and v.dtype.kind in "iub":
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    return format(v, ".12g")


def format_row(row: Sequence) -> str:
    return ",".join(format_value(v) for v in row) + "\n"


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(format_row(row))
    return path


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(path, command: str, params: dict, seed, outputs: Sequence, duration: float) -> Path:
    """Flat ``key=value`` manifest; everything but ``duration`` is reproducible."""
    path = Path(path)
    lines = [
        f"command={command}",
        f"version={__version__}",
        f"seed={'NA' if seed is None else seed}",
    ]
    for key in sorted(params):
        lines.append(f"param.{key}={params[key]}")
    for out in outputs:
        out = Path(out)
        lines.append(f"output.{out.name}=sha256:{file_digest(out)}")
    lines.append(f"duration={duration:.3f}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_manifest(path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line and "=" in line:
            k, v = line.split("=", 1)
            out[k] = v
    return out
