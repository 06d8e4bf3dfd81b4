"""Mean-field analytics of the growth model.

P_n, the probability that the model declares n prime, obeys the product
recurrence P_n = prod_{i=2}^{floor(sqrt n)} (1 - P_i/i), so it is a step
function that only moves at perfect squares.  Its continuum limit is the
delay equation dP/dn = -P_n P_sqrt(n) / (2n), integrated here in u = ln n
where the delay becomes u/2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import AccuracyWarning, TruncationWarning

ODE_START = 16


def _square_products(M: int) -> np.ndarray:
    """Q[m] = prod_{i=2}^m (1 - P_i/i), with P_i = Q[isqrt(i)]."""
    Q = np.ones(max(M, 1) + 1)
    for m in range(2, M + 1):
        Q[m] = Q[m - 1] * (1.0 - Q[math.isqrt(m)] / m)
    return Q


@dataclass(frozen=True)
class MeanFieldCurve:
    """P indexed by n; entries below ``start`` are NaN."""

    N: int
    P: np.ndarray = field(repr=False)
    method: str = "recurrence"
    start: int = 2

    def __call__(self, n):
        out = self.P[np.asarray(n, dtype=np.int64)]
        return float(out) if np.ndim(out) == 0 else out


def recurrence_curve(N: int) -> MeanFieldCurve:
    if N < 2:
        raise ValueError("N must be >= 2")
    Q = _square_products(math.isqrt(N))
    roots = np.sqrt(np.arange(N + 1, dtype=np.float64)).astype(np.int64)
    # float sqrt can be off by one near squares
    roots -= roots * roots > np.arange(N + 1)
    roots += (roots + 1) ** 2 <= np.arange(N + 1)
    P = Q[roots]
    P[:2] = np.nan
    return MeanFieldCurve(N, P, "recurrence", 2)


def _rk4(u_end: float, h: float, Q: np.ndarray):
    u0 = math.log(ODE_START)
    steps = max(1, math.ceil((u_end - u0) / h))
    u = u0 + h * np.arange(steps + 1)
    P = np.empty(steps + 1)
    P[0] = Q[math.isqrt(ODE_START)]

    def delayed(v, filled):
        # P at u = v/2: recurrence history below the start, grid above it
        w = 0.5 * v
        if w < u0:
            return Q[math.isqrt(int(math.exp(w) + 1e-9))]
        return np.interp(w, u[: filled + 1], P[: filled + 1])

    for i in range(steps):
        ui, Pi = u[i], P[i]
        k1 = -0.5 * Pi * delayed(ui, i)
        k2 = -0.5 * (Pi + 0.5 * h * k1) * delayed(ui + 0.5 * h, i)
        k3 = -0.5 * (Pi + 0.5 * h * k2) * delayed(ui + 0.5 * h, i)
        k4 = -0.5 * (Pi + h * k3) * delayed(ui + h, i)
        P[i + 1] = Pi + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
    return u, P


def ode_curve(N: int, h: float = 0.005, tol: float = 1e-3) -> MeanFieldCurve:
    """Integrate the delay equation from n = 16, matched to the recurrence there.

    The step is checked against a run at 2h; a relative disagreement above
    ``tol`` raises an AccuracyWarning.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    u_end = math.log(max(N, ODE_START))
    Q = _square_products(max(math.isqrt(ODE_START), math.isqrt(N)))
    u, P = _rk4(u_end, h, Q)
    u2, P2 = _rk4(u_end, 2 * h, Q)
    drift = np.max(np.abs(np.interp(u2, u, P) / P2 - 1))
    if drift > tol:
        warnings.warn(f"ODE step {h} differs from step {2 * h} by {drift:.2e}", AccuracyWarning, stacklevel=2)
    out = np.full(N + 1, np.nan)
    n = np.arange(ODE_START, N + 1)
    out[ODE_START:] = np.interp(np.log(n), u, P)
    return MeanFieldCurve(N, out, "ode", ODE_START)


def meanfield_prime_count(N: int) -> float:
    """sum_{n=2}^N P_n, the mean-field expectation of the model's Pi(N)."""
    P = recurrence_curve(N).P
    return float(P[2:].sum())


def log_survival(N: int) -> float:
    """ln P_N = sum_{i <= sqrt N} ln(1 - P_i/i)."""
    M = math.isqrt(N)
    Q = _square_products(M)
    P = Q[[math.isqrt(i) for i in range(2, M + 1)]]
    return float(np.log1p(-P / np.arange(2, M + 1)).sum())


def erdos_kac_pmf(N: int, omega_max: int = 50, tol: float = 1e-6) -> np.ndarray:
    """Poisson law of omega in the model: P(w) = P_N (-ln P_N)^(w-1) / (w-1)!.

    Indexed by w (entry 0 is zero).  Mass beyond ``omega_max`` above ``tol``
    triggers a TruncationWarning and the pmf is renormalized.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    if omega_max < 1:
        raise ValueError("omega_max must be >= 1")
    mu = -log_survival(N)
    w = np.arange(omega_max + 1)
    pmf = np.where(w >= 1, stats.poisson.pmf(w - 1, mu), 0.0)
    lost = float(stats.poisson.sf(omega_max - 1, mu))
    if lost > tol:
        warnings.warn(f"omega_max={omega_max} drops mass {lost:.2e}", TruncationWarning, stacklevel=2)
        pmf /= pmf.sum()
    return pmf


def standardized_omega_moments(omega, n) -> tuple[float, float]:
    """Mean and variance of (omega - lnln n)/sqrt(lnln n)."""
    omega = np.asarray(omega, dtype=float)
    n = np.asarray(n, dtype=float)
    if np.any(n < 3):
        raise ValueError("lnln n needs n >= 3")
    ll = np.log(np.log(n))
    z = (omega - ll) / np.sqrt(ll)
    return float(z.mean()), float(z.var())
