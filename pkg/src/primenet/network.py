"""Weighted bipartite network of the naturals.

A composite c is joined to each prime p dividing it, with weight equal to the
exponent of p in c.  Real networks are built from a smallest-prime-factor
sieve; model networks come from :mod:`primenet.model`.  The closed-form
degree and strength formulas live next to the measured quantities so they
can be checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .arith import omega_upto
from .errors import ResourceBudgetError
from .sieve import PrimeTable, build_table, smallest_prime_factors

MAX_NETWORK = 10**7
DEFAULT_MEMORY_BUDGET = 1 << 30
_EDGE_BYTES = 10


@dataclass(frozen=True)
class Ccdf:
    """Empirical tail P(X >= x) on sorted distinct values."""

    values: np.ndarray
    tail: np.ndarray

    @classmethod
    def from_samples(cls, samples) -> "Ccdf":
        samples = np.asarray(samples)
        if samples.size == 0:
            raise ValueError("no samples")
        values, counts = np.unique(samples, return_counts=True)
        tail = counts[::-1].cumsum()[::-1] / samples.size
        return cls(values, tail)

    @classmethod
    def from_counts(cls, counts) -> "Ccdf":
        """From a histogram indexed by integer value."""
        counts = np.asarray(counts)
        values = np.flatnonzero(counts)
        if values.size == 0:
            raise ValueError("empty histogram")
        c = counts[values]
        tail = c[::-1].cumsum()[::-1] / c.sum()
        return cls(values, tail)

    @classmethod
    def mean(cls, ccdfs) -> "Ccdf":
        """Pointwise average of several step functions."""
        ccdfs = list(ccdfs)
        grid = np.unique(np.concatenate([c.values for c in ccdfs]))
        tail = np.mean([c(grid) for c in ccdfs], axis=0)
        return cls(grid, tail)

    def __call__(self, x):
        x = np.asarray(x)
        idx = np.searchsorted(self.values, x, side="left")
        padded = np.append(self.tail, 0.0)
        out = padded[idx]
        return float(out) if out.ndim == 0 else out

    def sup_distance(self, other: "Ccdf") -> float:
        grid = np.union1d(self.values, other.values)
        return float(np.max(np.abs(self(grid) - other(grid))))

    def to_csv(self, path) -> None:
        from .io import write_csv

        write_csv(path, ["value", "tail_fraction"], zip(self.values.tolist(), self.tail.tolist()))


@dataclass
class BipartiteNetwork:
    """Prime/composite graph over [2, N] stored as an edge list."""

    N: int
    is_prime: np.ndarray = field(repr=False)
    composite: np.ndarray = field(repr=False)
    prime: np.ndarray = field(repr=False)
    weight: np.ndarray = field(repr=False)
    kind: str = "real"
    seed: int | None = None

    @property
    def n_edges(self) -> int:
        return int(self.composite.size)

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.is_prime)

    def composites(self) -> np.ndarray:
        n = np.arange(self.N + 1)
        return n[(n >= 3) & ~self.is_prime]

    @cached_property
    def prime_degree(self) -> np.ndarray:
        return np.bincount(self.prime, minlength=self.N + 1)

    @cached_property
    def prime_strength(self) -> np.ndarray:
        return np.bincount(self.prime, weights=self.weight, minlength=self.N + 1).astype(np.int64)

    @cached_property
    def composite_degree(self) -> np.ndarray:
        return np.bincount(self.composite, minlength=self.N + 1)

    @cached_property
    def composite_strength(self) -> np.ndarray:
        return np.bincount(self.composite, weights=self.weight, minlength=self.N + 1).astype(np.int64)

    def factor_product(self) -> np.ndarray:
        """Product of p**weight over each node's edges (float; 1 where no edges)."""
        logs = np.bincount(
            self.composite, weights=self.weight * np.log(self.prime), minlength=self.N + 1
        )
        return np.exp(logs)

    def edge_balance(self) -> tuple[int, int]:
        """[N-1-pi(N)]<k_c> and pi(N)<k_p>, both as integer totals."""
        comps = self.composites()
        return int(self.composite_degree[comps].sum()), int(self.prime_degree[self.primes()].sum())

    def to_csv(self, path) -> None:
        from .io import format_row

        path = Path(path)
        seed = "NA" if self.seed is None else str(self.seed)
        with path.open("w", encoding="utf-8", newline="") as fh:
            fh.write(f"# N={self.N} kind={self.kind} seed={seed}\n")
            fh.write("composite,prime,weight\n")
            for row in zip(self.composite.tolist(), self.prime.tolist(), self.weight.tolist()):
                fh.write(format_row(row))


def read_network(path) -> BipartiteNetwork:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        meta_line = fh.readline().lstrip("#").split()
        meta = dict(item.split("=", 1) for item in meta_line)
        header = fh.readline().strip()
        if header != "composite,prime,weight":
            raise ValueError(f"unexpected header {header!r}")
        data = np.loadtxt(fh, delimiter=",", dtype=np.int64, ndmin=2)
    N = int(meta["N"])
    seed = None if meta.get("seed", "NA") == "NA" else int(meta["seed"])
    comp, prime, weight = (data[:, i] for i in range(3)) if data.size else (np.array([], np.int64),) * 3
    is_prime = np.zeros(N + 1, dtype=bool)
    if meta.get("kind", "real") == "real":
        is_prime[build_table(max(N, 2)).primes()] = True
    else:
        # model primes are the nodes that never appear as composites
        is_prime[2:] = True
        is_prime[comp] = False
    return BipartiteNetwork(N, is_prime, comp, prime, weight, meta.get("kind", "real"), seed)


def network_bytes(N: int) -> int:
    return int(N * (math.log(math.log(max(N, 16))) + 1.1) * _EDGE_BYTES + 9 * N)


def build_real_network(
    N: int, table: PrimeTable | None = None, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> BipartiteNetwork:
    """Exact network: edge (c, p, a) for every p**a exactly dividing composite c."""
    if N < 4:
        raise ValueError(f"N must be >= 4, got {N}")
    if N > MAX_NETWORK:
        raise ResourceBudgetError(network_bytes(N), memory_budget, f"network up to {N}")
    need = network_bytes(N)
    if need > memory_budget:
        raise ResourceBudgetError(need, memory_budget, f"network up to {N}")

    spf = smallest_prime_factors(N)
    n = np.arange(N + 1, dtype=np.int32)
    is_prime = (spf == n) & (n >= 2)
    if table is not None and table.limit < N:
        raise ValueError(f"table limit {table.limit} is below N={N}")

    comps = n[(n >= 4) & ~is_prime]
    rem = comps.copy()
    parts_c, parts_p, parts_w = [], [], []
    while comps.size:
        p = spf[rem]
        w = np.zeros(comps.size, dtype=np.int16)
        while True:
            div = rem % p == 0
            if not div.any():
                break
            rem = np.where(div, rem // p, rem)
            w += div
        parts_c.append(comps)
        parts_p.append(p)
        parts_w.append(w)
        keep = rem > 1
        comps, rem = comps[keep], rem[keep]
    c = np.concatenate(parts_c)
    p = np.concatenate(parts_p)
    w = np.concatenate(parts_w)
    order = np.lexsort((p, c))
    return BipartiteNetwork(N, is_prime, c[order], p[order], w[order], "real", None)


def _is_prime_scalar(p: int, table: PrimeTable | None) -> bool:
    if table is not None and p <= table.limit:
        return bool(table.is_prime(p))
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _check_prime(p: int, N: int, table: PrimeTable | None) -> None:
    if not _is_prime_scalar(p, table):
        raise ValueError(f"{p} is not prime")
    if p > N:
        raise ValueError(f"p={p} exceeds N={N}")


def prime_degree(p: int, N: int, table: PrimeTable | None = None) -> int:
    """k_p(p) = floor(N/p) - 1."""
    _check_prime(p, N, table)
    return N // p - 1


def prime_strength(p: int, N: int, table: PrimeTable | None = None) -> int:
    """s_p(p) = sum_{j=1}^{floor(log_p N)} floor(N/p**j) - 1."""
    _check_prime(p, N, table)
    total = 0
    q = p
    while q <= N:
        total += N // q
        q *= p
    return total - 1


def prime_degree_distribution(N: int, table: PrimeTable) -> np.ndarray:
    """P(k_p) for k_p = 0 .. N//2 from the counting function."""
    if N < 4:
        raise ValueError("N must be >= 4")
    k = np.arange(N // 2 + 1, dtype=np.int64)
    pi_n = table.prime_count(N)
    return (table.prime_count(N // (k + 1)) - table.prime_count(N // (k + 2))) / pi_n


def strength_ccdf_closed_form(s_p, N: int, table: PrimeTable):
    """Approximate Prob{S > s_p} = pi(N/(s_p+1) + 1) / pi(N)."""
    s = np.asarray(s_p, dtype=np.int64)
    if np.any(s < 0):
        raise ValueError("s_p must be >= 0")
    x = N // (s + 1) + 1
    out = table.prime_count(x) / table.prime_count(N)
    return float(out) if np.ndim(out) == 0 else out


def composite_degree_distribution(N: int, table: PrimeTable, omega: np.ndarray | None = None) -> np.ndarray:
    """P(k_c) indexed by k_c (entry 0 is always 0)."""
    if N < 4:
        raise ValueError("N must be >= 4")
    om = omega_upto(N) if omega is None else omega
    counts = np.bincount(om[2 : N + 1]).astype(float)
    pi_n = table.prime_count(N)
    counts[1] -= pi_n
    return counts / (N - 1 - pi_n)


def measure_distributions(net: BipartiteNetwork) -> dict[str, Ccdf]:
    """Empirical CCDFs of prime/composite degree and strength."""
    primes = net.primes()
    comps = net.composites()
    return {
        "k_p": Ccdf.from_samples(net.prime_degree[primes]),
        "s_p": Ccdf.from_samples(net.prime_strength[primes]),
        "k_c": Ccdf.from_samples(net.composite_degree[comps]),
        "s_c": Ccdf.from_samples(net.composite_strength[comps]),
    }


def prime_degree_ccdf(N: int, table: PrimeTable) -> Ccdf:
    """Closed-form P_c(k_p) = pi(N/(k_p+1)) / pi(N)."""
    k = np.arange(N // 2 + 1, dtype=np.int64)
    return Ccdf(k, table.prime_count(N // (k + 1)) / table.prime_count(N))
