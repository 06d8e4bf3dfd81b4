"""Small statistics helpers shared by the analysis modules."""

from __future__ import annotations

import numpy as np


def loglog_slope(x, y) -> float:
    """Least-squares slope of ln y against ln x, skipping non-positive points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = (x > 0) & (y > 0)
    if ok.sum() < 2:
        raise ValueError("need at least two positive points to fit a slope")
    slope, _ = np.polyfit(np.log(x[ok]), np.log(y[ok]), 1)
    return float(slope)


def total_variation(p, q) -> float:
    """Half the L1 distance between two pmfs on a common index (padded with 0)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    size = max(p.size, q.size)
    p = np.pad(p, (0, size - p.size))
    q = np.pad(q, (0, size - q.size))
    return 0.5 * float(np.abs(p - q).sum())


def binomial_stderr(p: float, n: int) -> float:
    return float(np.sqrt(p * (1 - p) / n))


def log_grid(lo: float, hi: float, num: int = 40) -> np.ndarray:
    """Distinct integers spaced evenly in log between lo and hi, for tail fits."""
    return np.unique(np.rint(np.logspace(np.log10(lo), np.log10(hi), num)).astype(np.int64))
