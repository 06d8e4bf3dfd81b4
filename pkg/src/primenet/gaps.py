"""Largest gaps between consecutive primes per perfect-square interval.

The primes in [m^2, (m+1)^2) play the role of N_G ~ 2 sqrt(n)/ln n draws of
a geometric gap with success probability 1/ln n, so the expected largest gap
is (ln n - 1/2) H_{N_G}.  By default G_m only looks at consecutive primes
that both lie in the interval, so an interval with fewer than two primes is
undefined; ``boundary="left"`` instead gives each gap to its left prime's
interval.  Only intervals fully covered by the stream are kept.

One streaming pass produces the largest-gap series and also keeps every gap
large enough to matter for exceedance counting, so curves over many N and
thresholds need no second pass.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import StatisticsWarning
from .network import Ccdf
from .stats import loglog_slope

EULER_GAMMA = 0.5772156649015329
HARMONIC_EXACT_MAX = 1000
_H = np.concatenate(([0.0], np.cumsum(1.0 / np.arange(1, HARMONIC_EXACT_MAX + 1))))


def harmonic(k):
    """H_k exactly up to 1000, ln k + gamma beyond."""
    k = np.asarray(k, dtype=float)
    approx = np.log(np.maximum(k, 1)) + EULER_GAMMA
    small = np.clip(k, 0, HARMONIC_EXACT_MAX).astype(np.int64)
    out = np.where(k <= HARMONIC_EXACT_MAX, _H[small], approx)
    return float(out) if out.ndim == 0 else out


def gap_count(n):
    """N_G = round(2 sqrt(n)/ln n), the expected number of primes per interval."""
    n = np.asarray(n, dtype=float)
    out = np.rint(2 * np.sqrt(n) / np.log(n)).astype(np.int64)
    return int(out) if out.ndim == 0 else out


def expected_largest_gap(n, finite_size: bool = True):
    """<G_m> at n = m^2: (ln n - 1/2) H_{N_G}, or (ln n)^2 / 2 asymptotically."""
    n_arr = np.asarray(n, dtype=float)
    if np.any(n_arr < 2):
        raise ValueError("expected largest gap needs n >= 2 so that N_G >= 1")
    ln = np.log(n_arr)
    # N_G kept as a float: it exceeds int64 for very large n
    ng = np.rint(2 * np.sqrt(n_arr) / ln)
    out = (ln - 0.5) * harmonic(ng) if finite_size else 0.5 * ln * ln
    return float(out) if np.ndim(out) == 0 else out


def threshold_scale(p):
    """[ln p - 1/2][ln(2 sqrt p / ln p) + gamma], the finite-size ln^2(p)/2."""
    p = np.asarray(p, dtype=float)
    ln = np.log(p)
    return (ln - 0.5) * (np.log(2 * np.sqrt(p) / ln) + EULER_GAMMA)


class ArrayStream:
    """Wrap an ascending array of primes as a one-segment stream."""

    def __init__(self, primes):
        self.primes = np.asarray(primes, dtype=np.int64)

    def segments(self):
        yield self.primes


@dataclass
class GapSeries:
    """Largest gap per interval m; G is NaN where undefined."""

    source: str
    N: int
    m: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)
    cand_p: np.ndarray = field(repr=False)
    cand_g: np.ndarray = field(repr=False)
    candidate_ratio: float = 0.5
    G_norm: np.ndarray | None = field(default=None, repr=False)
    G_rescaled: np.ndarray | None = field(default=None, repr=False)
    two_c: float = math.nan
    finite_size: bool = True
    boundary: str = "within"

    @property
    def n(self) -> np.ndarray:
        return self.m * self.m

    @property
    def c(self) -> float:
        return self.two_c / 2


def largest_gaps(
    stream, N: int, source: str = "real", candidate_ratio: float = 0.5, boundary: str = "within"
) -> GapSeries:
    """Single pass over an ascending prime stream up to N."""
    if N < 9:
        raise ValueError("N must be >= 9")
    if boundary not in ("within", "left"):
        raise ValueError(f"unknown boundary rule {boundary!r}")
    if not hasattr(stream, "segments"):
        stream = ArrayStream(stream)
    M = math.isqrt(N)
    Gmax = np.zeros(M + 2, dtype=np.int64)
    cand_p, cand_g = [], []
    last = None
    for seg in stream.segments():
        seg = seg[seg <= N]
        if seg.size == 0:
            continue
        ps = seg if last is None else np.concatenate(([last], seg))
        last = int(ps[-1])
        if ps.size < 2:
            continue
        left = ps[:-1]
        g = np.diff(ps)
        big = g >= candidate_ratio * threshold_scale(np.maximum(left, 2))
        cand_p.append(left[big])
        cand_g.append(g[big])
        m = _isqrt(left)
        if boundary == "within":
            inside = m == _isqrt(ps[1:])
            m, g = m[inside], g[inside]
            if m.size == 0:
                continue
        starts = np.flatnonzero(np.r_[True, m[1:] != m[:-1]])
        um = m[starts]
        Gmax[um] = np.maximum(Gmax[um], np.maximum.reduceat(g, starts))
    if last is None:
        raise ValueError("stream produced no primes")
    m_all = np.arange(1, M + 1)
    if boundary == "within":
        m_all = m_all[(m_all + 1) ** 2 <= N + 1]
    else:
        # the last gap of interval m is known once (m+1)^2 <= last prime seen
        m_all = m_all[(m_all + 1) ** 2 <= last]
    G = Gmax[m_all].astype(float)
    G[G == 0] = np.nan
    empty = np.array([], dtype=np.int64)
    return GapSeries(
        source,
        N,
        m_all,
        G,
        np.concatenate(cand_p) if cand_p else empty,
        np.concatenate(cand_g) if cand_g else empty,
        candidate_ratio,
        boundary=boundary,
    )


def _isqrt(x: np.ndarray) -> np.ndarray:
    m = np.sqrt(x.astype(np.float64)).astype(np.int64)
    m -= m * m > x
    m += (m + 1) * (m + 1) <= x
    return m


def brute_force_largest_gaps(primes, N: int, boundary: str = "within") -> dict[int, int]:
    """Reference scan: {m: largest gap over consecutive primes <= N in interval m}."""
    primes = [int(p) for p in primes if p <= N]
    out: dict[int, int] = {}
    for a, b in zip(primes, primes[1:]):
        m = math.isqrt(a)
        if boundary == "within" and math.isqrt(b) != m:
            continue
        out[m] = max(out.get(m, 0), b - a)
    return out


def normalize(series: GapSeries, finite_size: bool = True, rescale_to_unit_mean: bool = True) -> GapSeries:
    """Divide by <G_m> at n = m^2, then by the measured mean 2c if asked."""
    n = series.n.astype(float)
    norm = np.full(series.G.shape, np.nan)
    ok = n >= 2
    norm[ok] = series.G[ok] / expected_largest_gap(n[ok], finite_size)
    two_c = float(np.nanmean(norm))
    rescaled = norm / two_c if rescale_to_unit_mean else None
    return replace(series, G_norm=norm, G_rescaled=rescaled, two_c=two_c, finite_size=finite_size)


def theory_ccdf(g, n_hi: float):
    """1 - exp(-N_G^(1-g)) with N_G = 2 sqrt(n)/ln n."""
    NG = 2 * math.sqrt(n_hi) / math.log(n_hi)
    return 1.0 - np.exp(-np.power(NG, 1.0 - np.asarray(g, dtype=float)))


def gap_ccdf(series: GapSeries, n_lo: float, n_hi: float, min_intervals: int = 100):
    """Empirical CCDF of the rescaled series for m^2 in [n_lo, n_hi], plus theory at n_hi."""
    if series.G_rescaled is None:
        series = normalize(series)
    n = series.n
    sel = (n >= n_lo) & (n <= n_hi) & ~np.isnan(series.G_rescaled)
    if sel.sum() == 0:
        raise ValueError(f"no intervals in [{n_lo}, {n_hi}]")
    if sel.sum() < min_intervals:
        warnings.warn(f"only {int(sel.sum())} intervals in range", StatisticsWarning, stacklevel=2)
    emp = Ccdf.from_samples(series.G_rescaled[sel])
    return emp, theory_ccdf(emp.values, n_hi)


def predicted_exceedances(alpha: float, N: float) -> float:
    """sum_{n=2}^{floor(sqrt N)} (ln n / n)^(alpha - 1)."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    n = np.arange(2, math.isqrt(int(N)) + 1, dtype=float)
    return float(np.sum((np.log(n) / n) ** (alpha - 1)))


def asymptotic_order(alpha: float, N: float) -> float:
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    ln = math.log(N)
    if alpha < 2:
        return N ** (1 - alpha / 2) * ln ** (alpha - 1)
    if alpha == 2:
        return ln**2
    return 1.0


def count_exceedances(series: GapSeries, alpha: float, N: float | None = None) -> tuple[int, float]:
    """Gaps with left prime below N and G > 2 alpha c [ln p - 1/2][ln(2 sqrt p/ln p) + gamma]."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if math.isnan(series.two_c):
        series = normalize(series)
    N = series.N if N is None else N
    factor = alpha * series.two_c
    if factor < series.candidate_ratio:
        raise ValueError(f"threshold {factor:.3f} is below the kept candidate ratio {series.candidate_ratio}")
    sel = series.cand_p < N
    p, g = series.cand_p[sel], series.cand_g[sel]
    emp = int(np.count_nonzero(g > factor * threshold_scale(p)))
    return emp, predicted_exceedances(alpha, N)


def exceedance_curve(series: GapSeries, alpha: float, checkpoints, fit_min: float = 1e5):
    """(counts, counts / ln^(alpha-1) N, slope of the rescaled counts for N >= fit_min)."""
    cp = np.asarray(checkpoints, dtype=float)
    counts = np.array([count_exceedances(series, alpha, N)[0] for N in cp])
    rescaled = counts / np.log(cp) ** (alpha - 1)
    fit = cp >= fit_min
    try:
        slope = loglog_slope(cp[fit], rescaled[fit])
    except ValueError:
        slope = math.nan
    return counts, rescaled, slope


def stationarity(series: GapSeries) -> tuple[float, float]:
    """Means of the rescaled series over the first and last quartile of intervals."""
    if series.G_rescaled is None:
        series = normalize(series)
    x = series.G_rescaled[~np.isnan(series.G_rescaled)]
    q = x.size // 4
    if q == 0:
        raise ValueError("series too short")
    return float(x[:q].mean()), float(x[-q:].mean())
