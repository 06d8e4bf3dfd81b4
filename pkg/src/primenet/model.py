"""Stochastic growth model of random primes and their factorizations.

Each n = 3, 4, ... tries to connect to existing model primes p <= sqrt(n)
with probability 1/p, ascending, stopping at the first success.  With no
success n becomes a prime.  Otherwise the real-valued residual n/p is
factored further over primes in [last prime, sqrt(residual)], and finally n
is attached to the model prime closest to whatever residual is left.

The hard-core variant only produces primality flags: n is never prime right
after a prime, and otherwise prime with probability 1/(ln n - 1).

A realization is consumed left to right with one generator, so a run to N is
a prefix of the run to any larger N with the same seed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ResourceBudgetError
from .network import BipartiteNetwork, Ccdf
from .seeding import derive_seed, make_rng

VARIANTS = ("standard", "hardcore")
MAX_GROW = 10**8
DEFAULT_MEMORY_BUDGET = 1 << 30


@dataclass(frozen=True)
class GrowthConfig:
    N: int
    seed: int = 0
    variant: str = "standard"
    record_edges: bool = False

    def __post_init__(self):
        if self.N < 3:
            raise ValueError(f"N must be >= 3, got {self.N}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")


@dataclass
class ModelRealization:
    """One run.  Arrays are indexed by n; ``cbar`` is the factor product."""

    config: GrowthConfig
    flags: np.ndarray = field(repr=False)
    cbar: np.ndarray | None = field(default=None, repr=False)
    kc: np.ndarray | None = field(default=None, repr=False)
    sc: np.ndarray | None = field(default=None, repr=False)
    kp: np.ndarray | None = field(default=None, repr=False)
    sp: np.ndarray | None = field(default=None, repr=False)
    edges: tuple[np.ndarray, np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    @property
    def N(self) -> int:
        return self.config.N

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    def composites(self) -> np.ndarray:
        n = np.arange(self.N + 1)
        return n[(n >= 3) & (self.flags == 0)]

    def prime_count(self, checkpoints) -> np.ndarray:
        return model_prime_count(self, checkpoints)

    def to_network(self) -> BipartiteNetwork:
        if self.edges is None:
            raise ValueError("realization was grown without record_edges")
        c, p, w = self.edges
        return BipartiteNetwork(self.N, self.flags.astype(bool), c, p, w, "model", self.config.seed)


def grow_bytes(N: int, record_edges: bool) -> int:
    per_n = 1 + 8 + 2 + 2 + 4 + 4 + 8
    return int(N * (per_n + (3 * 18 if record_edges else 0)))


def grow(config: GrowthConfig, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> ModelRealization:
    if config.variant == "hardcore":
        return ModelRealization(config, grow_hardcore(config, memory_budget))
    need = grow_bytes(config.N, config.record_edges)
    if config.N > MAX_GROW or need > memory_budget:
        raise ResourceBudgetError(need, memory_budget, f"model run to {config.N}")
    rng = make_rng(config.seed)
    flags, cbar, kc, sc, kp, sp, ec, ep, ew = _kernels.grow_kernel(config.N, rng, config.record_edges)
    edges = None
    if config.record_edges:
        edges = (ec.astype(np.int32), ep.astype(np.int32), ew)
    return ModelRealization(config, flags, cbar, kc, sc, kp, sp, edges)


class HardcoreStream:
    """Hard-core model primes in ascending chunks, O(chunk) memory.

    Quacks like :class:`primenet.sieve.PrimeStream` so the gap analysis can
    consume either.
    """

    def __init__(self, limit: int, seed: int, chunk: int = 1 << 22):
        if limit < 2:
            raise ValueError("limit must be >= 2")
        self.limit = int(limit)
        self.seed = int(seed)
        self.chunk = int(chunk)

    def segments(self):
        rng = make_rng(self.seed)
        yield np.array([2], dtype=np.int64)
        prev = True
        buf = np.empty(self.chunk, dtype=np.int64)
        lo = 3
        while lo <= self.limit:
            hi = min(lo + self.chunk, self.limit + 1)
            k, prev = _kernels.hardcore_chunk(lo, hi, prev, rng, buf)
            if k:
                yield buf[:k].copy()
            lo = hi

    def __iter__(self):
        for seg in self.segments():
            yield from seg.tolist()


def grow_hardcore(config: GrowthConfig, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> np.ndarray:
    """Primality flags (uint8, indexed by n) of one hard-core run."""
    if config.N + 1 > memory_budget:
        raise ResourceBudgetError(config.N + 1, memory_budget, f"hard-core flags to {config.N}")
    flags = np.zeros(config.N + 1, dtype=np.uint8)
    for seg in HardcoreStream(config.N, config.seed).segments():
        flags[seg] = 1
    return flags


def model_prime_count(real: ModelRealization, checkpoints) -> np.ndarray:
    """Pi(x) of the realization at each checkpoint."""
    cp = np.asarray(checkpoints, dtype=np.int64)
    if np.any(cp > real.N) or np.any(cp < 0):
        raise ValueError(f"checkpoints must lie in [0, {real.N}]")
    return np.cumsum(real.flags, dtype=np.int64)[cp]


def _x_values(real: ModelRealization, upto: int | None = None) -> np.ndarray:
    if real.cbar is None:
        raise ValueError("factorization error needs a standard-variant realization")
    comps = real.composites()
    if upto is not None:
        comps = comps[comps <= upto]
    return real.cbar[comps] / comps


def factorization_error(real: ModelRealization, upto: int | None = None) -> tuple[float, float]:
    """(eps, sigma_x) with x = cbar/c over composites <= upto (default N)."""
    x = _x_values(real, upto)
    if x.size == 0:
        return math.nan, math.nan
    return float(1.0 - x.mean()), float(x.std())


# ensembles

@dataclass
class EnsembleResult:
    N: int
    runs: int
    seed: int
    variant: str
    checkpoints: np.ndarray
    pi_mean: np.ndarray
    pi_std: np.ndarray
    eps_mean: np.ndarray
    eps_std: np.ndarray
    sigma_x_mean: np.ndarray
    prime_frequency: np.ndarray = field(repr=False)
    pmfs: dict = field(default_factory=dict, repr=False)
    omega_window: tuple[int, int] | None = None

    def ccdf(self, key: str) -> Ccdf:
        """Run-averaged CCDF of k_p, s_p, k_c, s_c or omega."""
        return Ccdf.from_counts(self.pmfs[key])


def _pmf(values) -> np.ndarray:
    values = np.asarray(values, dtype=np.int64)
    if values.size == 0:
        return np.zeros(1)
    return np.bincount(values) / values.size


def _run_summary(N, seed, variant, checkpoints, omega_window, keep_distributions):
    real = grow(GrowthConfig(N, seed, variant))
    flags = real.flags
    out = {"pi": model_prime_count(real, checkpoints), "flags": flags}
    if variant == "standard":
        eps = np.empty(len(checkpoints))
        sx = np.empty(len(checkpoints))
        for i, c in enumerate(checkpoints):
            eps[i], sx[i] = factorization_error(real, int(c))
        out["eps"], out["sx"] = eps, sx
        if keep_distributions:
            primes, comps = real.primes(), real.composites()
            out["k_p"] = _pmf(real.kp[primes])
            out["s_p"] = _pmf(real.sp[primes])
            out["k_c"] = _pmf(real.kc[comps])
            out["s_c"] = _pmf(real.sc[comps])
        if omega_window is not None:
            lo, hi = omega_window
            om = real.kc[lo : hi + 1].astype(np.int64)
            om[flags[lo : hi + 1] == 1] = 1
            out["omega"] = _pmf(om)
    return out


def _accumulate(total: dict, key: str, arr: np.ndarray) -> None:
    cur = total.get(key)
    if cur is None:
        total[key] = arr.astype(float).copy()
        return
    if cur.size < arr.size:
        cur = np.pad(cur, (0, arr.size - cur.size))
    elif arr.size < cur.size:
        arr = np.pad(arr, (0, cur.size - arr.size))
    total[key] = cur + arr


def ensemble_run(
    N: int,
    runs: int,
    seed: int = 0,
    variant: str = "standard",
    checkpoints=None,
    workers: int = 1,
    keep_distributions: bool = True,
    omega_window: tuple[int, int] | None = None,
) -> EnsembleResult:
    """Average ``runs`` realizations with seeds derive_seed(seed, variant, i).

    Per-run summaries are reduced in run-index order, so the result does not
    depend on ``workers``.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    GrowthConfig(N, seed, variant)
    cp = np.asarray([N] if checkpoints is None else checkpoints, dtype=np.int64)
    if np.any(cp > N) or np.any(cp < 2):
        raise ValueError("checkpoints must lie in [2, N]")
    seeds = [derive_seed(seed, variant, i) for i in range(runs)]
    args = [(N, s, variant, cp, omega_window, keep_distributions) for s in seeds]

    if workers > 1 and runs > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            summaries = pool.map(_run_summary, *zip(*args))
            return _reduce(N, runs, seed, variant, cp, omega_window, summaries)
    return _reduce(N, runs, seed, variant, cp, omega_window, (_run_summary(*a) for a in args))


def _reduce(N, runs, seed, variant, cp, omega_window, summaries) -> EnsembleResult:
    pi_sum = np.zeros(cp.size)
    pi_sq = np.zeros(cp.size)
    eps_sum = np.zeros(cp.size)
    eps_sq = np.zeros(cp.size)
    sx_sum = np.zeros(cp.size)
    freq = np.zeros(N + 1)
    pmfs: dict = {}
    for s in summaries:
        pi = s["pi"].astype(float)
        pi_sum += pi
        pi_sq += pi * pi
        freq += s["flags"]
        if "eps" in s:
            eps_sum += s["eps"]
            eps_sq += s["eps"] ** 2
            sx_sum += s["sx"]
        for key in ("k_p", "s_p", "k_c", "s_c", "omega"):
            if key in s:
                _accumulate(pmfs, key, s[key])
    mean = pi_sum / runs
    std = np.sqrt(np.maximum(pi_sq / runs - mean**2, 0.0))
    if variant == "standard":
        eps_mean = eps_sum / runs
        eps_std = np.sqrt(np.maximum(eps_sq / runs - eps_mean**2, 0.0))
        sx_mean = sx_sum / runs
    else:
        eps_mean = eps_std = sx_mean = np.full(cp.size, np.nan)
    pmfs = {k: v / runs for k, v in pmfs.items()}
    return EnsembleResult(N, runs, seed, variant, cp, mean, std, eps_mean, eps_std, sx_mean, freq / runs, pmfs, omega_window)
