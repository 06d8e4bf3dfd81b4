"""Arithmetic functions read off the prime/composite network.

The scalar functions follow the pi-difference formulas literally and take a
:class:`~primenet.sieve.PrimeTable`.  The ``*_upto`` helpers sieve whole
ranges at once and are what the bulk statistics use.
"""

from __future__ import annotations

import math

import numpy as np

from .sieve import PrimeTable, log_integral, simple_sieve

UINT64_MAX = 2**64 - 1


def _check_range(n: int, table: PrimeTable) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if n > table.limit:
        raise ValueError(f"n={n} exceeds table limit {table.limit}")


def _guarded(value: int) -> int:
    if value > UINT64_MAX:
        raise OverflowError(f"{value} does not fit in 64 bits")
    return value


def phi_indicator(k: int, n: int, table: PrimeTable) -> int:
    """1 if n/k is a prime integer, else 0, as pi(n/k) - pi((n-1)/k)."""
    _check_range(n, table)
    if k < 1:
        raise ValueError("k must be >= 1")
    return table.prime_count(n // k) - table.prime_count((n - 1) // k)


def psi_indicator(k: int, n: int) -> int:
    """1 if k divides n, else 0, as floor(n/k) - floor((n-1)/k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return n // k - (n - 1) // k


def _phi_row(n: int, table: PrimeTable) -> np.ndarray:
    """phi(k; n) for k = 1 .. n//2 (index 0 <-> k = 1)."""
    k = np.arange(1, n // 2 + 1, dtype=np.int64)
    return table.prime_count(n // k) - table.prime_count((n - 1) // k)


def omega(n: int, table: PrimeTable) -> int:
    """Number of distinct prime factors via the pi-difference sum."""
    _check_range(n, table)
    return int(_phi_row(n, table).sum())


def omega_sum_identity(N: int, table: PrimeTable) -> tuple[int, int]:
    """Both sides of sum_{n<=N} omega(n) = sum_{i<=N/2} pi(N/i).

    The left side counts factors directly with a sieve, the right side only
    queries the counting function.
    """
    _check_range(N, table)
    lhs = int(omega_upto(N)[2:].sum())
    i = np.arange(1, N // 2 + 1, dtype=np.int64)
    rhs = int(table.prime_count(N // i).sum())
    return lhs, rhs


def tau_r(n: int, r: int, table: PrimeTable) -> int:
    """Sum of p**r over the distinct primes p dividing n."""
    _check_range(n, table)
    if r < 0:
        raise ValueError("r must be >= 0")
    hits = np.flatnonzero(_phi_row(n, table)) + 1
    total = 0
    for k in hits.tolist():
        total += _guarded((n // k) ** r)
    return _guarded(total)


def sigma_r(n: int, r: int) -> int:
    """Sum of d**r over all divisors d of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < 0:
        raise ValueError("r must be >= 0")
    k = np.arange(1, n + 1, dtype=np.int64)
    divisors = k[(n // k - (n - 1) // k) == 1]
    total = 0
    for d in divisors.tolist():
        total += _guarded(d**r)
    return _guarded(total)


def tau_r_approx(n: float, r: int) -> float:
    """Smooth estimate of tau_r(n).

    r = 0 gives ln ln n - ln ln 2; otherwise the integral of dq/ln q over
    [2**r, n**r], which for r = 1 is Li(n).
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        if n < 3:
            raise ValueError("ln ln n needs n >= 3 here")
        return math.log(math.log(n)) - math.log(math.log(2))
    if n < 2:
        raise ValueError("n must be >= 2")
    return log_integral(2.0**r, float(n) ** r)


def omega_upto(N: int) -> np.ndarray:
    """omega(n) for 0 <= n <= N (zero at 0 and 1)."""
    out = np.zeros(N + 1, dtype=np.int8)
    for p in simple_sieve(N):
        out[p::p] += 1
    return out


def big_omega_upto(N: int) -> np.ndarray:
    """Number of prime factors with multiplicity, for 0 <= n <= N."""
    out = np.zeros(N + 1, dtype=np.int8)
    for p in simple_sieve(N).tolist():
        q = p
        while q <= N:
            out[q::q] += 1
            q *= p
    return out


def tau_upto(N: int, r: int = 1) -> np.ndarray:
    """tau_r(n) for 0 <= n <= N as uint64; raises if any value overflows."""
    if r < 0:
        raise ValueError("r must be >= 0")
    primes = simple_sieve(N)
    if primes.size and int(primes[-1]) ** r * math.log2(max(N, 2)) > UINT64_MAX:
        raise OverflowError(f"tau_{r} up to {N} may exceed 64 bits")
    out = np.zeros(N + 1, dtype=np.uint64)
    for p in primes.tolist():
        out[p::p] += np.uint64(p**r)
    return out


def sigma_upto(N: int, r: int = 1) -> np.ndarray:
    """sigma_r(n) for 0 <= n <= N as uint64 (divisor sieve)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    # sigma_r(n) <= n**r * (1 + ln n)
    if float(N) ** r * (1 + math.log(max(N, 2))) > UINT64_MAX:
        raise OverflowError(f"sigma_{r} up to {N} may exceed 64 bits")
    out = np.zeros(N + 1, dtype=np.uint64)
    for d in range(1, N + 1):
        out[d::d] += np.uint64(d**r)
    out[0] = 0
    return out
