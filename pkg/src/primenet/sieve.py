"""Prime generation and counting.

Everything downstream treats :class:`PrimeTable` as the ground truth for
primality and for the counting function pi(x).  Tables are built with an
odd-only segmented sieve and stored as packed bits, with a running count
kept per 64-bit word so that pi(x) costs one lookup and one popcount.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy import integrate

from .errors import ResourceBudgetError

# numbers covered by one segment; a multiple of 128 keeps segments word aligned
DEFAULT_SEGMENT = 1 << 22
DEFAULT_MEMORY_BUDGET = 1 << 30
MAX_LIMIT = 10**9


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit, plain Eratosthenes."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[p]:
            is_prime[p * p :: 2 * p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _odd_segment_mask(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primality of the odd numbers lo, lo+2, ... < hi (lo odd).

    ``base`` must hold every odd prime up to sqrt(hi).
    """
    count = (hi - lo + 1) // 2
    mask = np.ones(count, dtype=bool)
    if lo == 1:
        mask[0] = False
    for p in base:
        p = int(p)
        p2 = p * p
        if p2 >= hi:
            break
        if p2 >= lo:
            start = p2
        else:
            start = -(-lo // p) * p
            if start % 2 == 0:
                start += p
        mask[(start - lo) // 2 :: p] = False
    return mask


class PrimeStream:
    """Ascending primes in [start, limit], produced one segment at a time.

    ``segments()`` yields numpy arrays (one per segment) and never holds more
    than one segment in memory; iterating the stream itself yields ints.
    """

    def __init__(self, limit: int, segment_size: int = DEFAULT_SEGMENT, start: int = 2):
        if limit < 2:
            raise ValueError(f"limit must be >= 2, got {limit}")
        if segment_size < 128:
            raise ValueError("segment_size must be at least 128")
        self.limit = int(limit)
        self.segment_size = int(segment_size) // 2 * 2
        self.start = max(2, int(start))
        self.lo = self.start
        self.hi = self.start

    def segments(self) -> Iterator[np.ndarray]:
        limit = self.limit
        base = simple_sieve(math.isqrt(limit) + 1)[1:]
        if self.start <= 2:
            self.lo, self.hi = 2, 3
            yield np.array([2], dtype=np.int64)
        lo = max(3, self.start)
        if lo % 2 == 0:
            lo += 1
        while lo <= limit:
            hi = min(lo + self.segment_size, limit + 1)
            self.lo, self.hi = lo, hi
            mask = _odd_segment_mask(lo, hi, base)
            yield lo + 2 * np.flatnonzero(mask).astype(np.int64)
            lo += self.segment_size

    def __iter__(self) -> Iterator[int]:
        for seg in self.segments():
            yield from seg.tolist()


def table_bytes(limit: int) -> int:
    """Memory footprint of a PrimeTable up to ``limit``."""
    words = ((limit + 1) // 2 + 63) // 64
    return words * (8 + 4)


@dataclass(frozen=True)
class PrimeTable:
    """Packed odd-only primality bits over [0, limit] plus per-word counts."""

    limit: int
    words: np.ndarray = field(repr=False)
    cumulative: np.ndarray = field(repr=False)

    def is_prime(self, n):
        n_arr = np.asarray(n, dtype=np.int64)
        if np.any(n_arr > self.limit):
            raise ValueError(f"query exceeds table limit {self.limit}")
        odd = (n_arr & 1) == 1
        j = np.where(odd & (n_arr > 0), n_arr >> 1, 0)
        bit = (self.words[j >> 6] >> (j & 63).astype(np.uint64)) & np.uint64(1)
        out = (bit == 1) & odd
        out = out | (n_arr == 2)
        return bool(out) if out.ndim == 0 else out

    def prime_count(self, x):
        """pi(floor(x)); accepts scalars or arrays of non-negative reals."""
        x_arr = np.asarray(x)
        if np.issubdtype(x_arr.dtype, np.integer):
            n = x_arr.astype(np.int64)
        else:
            if np.any(x_arr < 0):
                raise ValueError("prime_count needs x >= 0")
            n = np.floor(x_arr).astype(np.int64)
        if np.any(n > self.limit):
            raise ValueError(f"x exceeds table limit {self.limit}")
        j = np.maximum((n - 1) >> 1, 0)
        w = j >> 6
        shift = (63 - (j & 63)).astype(np.uint64)
        mask = np.uint64(0xFFFFFFFFFFFFFFFF) >> shift
        odd_count = self.cumulative[w] + np.bitwise_count(self.words[w] & mask)
        out = np.where(n >= 2, odd_count.astype(np.int64) + 1, 0)
        return int(out) if out.ndim == 0 else out

    def primes(self, lo: int = 2, hi: int | None = None) -> np.ndarray:
        """Primes p with lo <= p <= hi (hi defaults to the table limit)."""
        hi = self.limit if hi is None else min(hi, self.limit)
        if hi < max(lo, 2):
            return np.array([], dtype=np.int64)
        j_lo = max(lo, 1) // 2
        j_hi = (hi - 1) // 2
        w_lo, w_hi = j_lo >> 6, (j_hi >> 6) + 1
        bits = np.unpackbits(self.words[w_lo:w_hi].view(np.uint8), bitorder="little")
        idx = np.flatnonzero(bits) + 64 * w_lo
        idx = idx[(idx >= j_lo) & (idx <= j_hi)]
        odd = 2 * idx.astype(np.int64) + 1
        if lo <= 2 <= hi:
            odd = np.concatenate(([2], odd))
        return odd

    def counts(self, upto: int | None = None) -> np.ndarray:
        """Dense array with counts[n] = pi(n) for 0 <= n <= upto."""
        upto = self.limit if upto is None else upto
        return self.prime_count(np.arange(upto + 1, dtype=np.int64))

    def __contains__(self, n) -> bool:
        return 0 <= n <= self.limit and self.is_prime(n)


def build_table(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> PrimeTable:
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit > MAX_LIMIT:
        raise ValueError(f"limit {limit} exceeds the supported maximum {MAX_LIMIT}")
    need = table_bytes(limit)
    if need > memory_budget:
        raise ResourceBudgetError(need, memory_budget, f"prime table up to {limit}")

    span = max(128, segment_size // 128 * 128)
    base = simple_sieve(math.isqrt(limit) + 1)[1:]
    n_odd = (limit + 1) // 2
    n_words = (n_odd + 63) // 64
    words = np.zeros(n_words, dtype=np.uint64)
    w = 0
    for lo in range(1, limit + 1, span):
        hi = min(lo + span, limit + 1)
        mask = _odd_segment_mask(lo, hi, base)
        packed = np.packbits(mask, bitorder="little")
        pad = (-packed.size) % 8
        if pad:
            packed = np.concatenate((packed, np.zeros(pad, dtype=np.uint8)))
        chunk = packed.view(np.uint64)
        words[w : w + chunk.size] = chunk
        w += chunk.size
    per_word = np.bitwise_count(words).astype(np.int32)
    cumulative = np.zeros(n_words, dtype=np.int32)
    np.cumsum(per_word[:-1], out=cumulative[1:])
    return PrimeTable(int(limit), words, cumulative)


def prime_count(table: PrimeTable, x):
    return table.prime_count(x)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n for 2 <= n <= limit (spf[0]=spf[1]=0)."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit < 2:
        return spf
    spf[4::2] = 2
    for p in simple_sieve(math.isqrt(limit))[1:]:
        p = int(p)
        view = spf[p * p :: p]
        view[view == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def _li_integrand(u: float) -> float:
    return math.exp(u) / u


def log_integral(a: float, b: float) -> float:
    """Integral of dt/ln t over [a, b] for 1 < a <= b, by adaptive quadrature.

    Integrates in u = ln t, where the integrand e^u/u is smooth.
    """
    if a <= 1:
        raise ValueError("lower bound must exceed 1")
    if b < a:
        raise ValueError("upper bound below lower bound")
    if b == a:
        return 0.0
    value, _ = integrate.quad(
        _li_integrand, math.log(a), math.log(b), epsabs=0.0, epsrel=1e-11, limit=400
    )
    return value


def logarithmic_integral(x):
    """Offset logarithmic integral Li(x), the integral of dt/ln t from 2 to x."""
    if np.ndim(x) == 0:
        if x < 2:
            raise ValueError(f"Li(x) needs x >= 2, got {x}")
        return log_integral(2.0, float(x))
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 2):
        raise ValueError("Li(x) needs x >= 2")
    return np.array([log_integral(2.0, float(v)) for v in xs.ravel()]).reshape(xs.shape)
