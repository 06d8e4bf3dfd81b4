"""Slow, obviously-correct reference implementations.

Nothing here imports primenet; every routine is plain Python so it can act
as an independent check on the vectorized code.
"""

import math
from fractions import Fraction

import mpmath


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def primes_upto(n):
    return [k for k in range(2, n + 1) if is_prime(k)]


def pi(x):
    return sum(1 for k in range(2, math.floor(x) + 1) if is_prime(k))


def factorize(n):
    """{p: exponent} by trial division."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def edges(N):
    """Sorted (composite, prime, exponent) triples of the real network."""
    out = []
    for c in range(4, N + 1):
        if is_prime(c):
            continue
        for p, a in sorted(factorize(c).items()):
            out.append((c, p, a))
    return out


def shared_composites(p, q, N):
    """Composites <= N divisible by p and q (by p^2 when p == q)."""
    if p == q:
        return sum(1 for c in range(4, N + 1) if c % (p * p) == 0)
    return sum(1 for c in range(4, N + 1) if c % p == 0 and c % q == 0 and not is_prime(c))


def projection(N):
    """{(p, q): weight} with p <= q, from composite enumeration."""
    ps = primes_upto(N)
    w = {}
    for c in range(4, N + 1):
        if is_prime(c):
            continue
        f = factorize(c)
        fs = sorted(f)
        for i, a in enumerate(fs):
            for b in fs[i + 1 :]:
                w[(a, b)] = w.get((a, b), 0) + 1
            if f[a] >= 2:
                w[(a, a)] = w.get((a, a), 0) + 1
    return ps, w


def clustering(p, ps, w):
    """Links among p's other neighbours, counting their self-loops, over k(k+1)/2."""
    nbrs = [q for q in ps if q != p and (min(p, q), max(p, q)) in w]
    k = len(nbrs)
    degree = k + ((p, p) in w)
    if degree < 2:
        return math.nan
    links = 0
    for i, a in enumerate(nbrs):
        if (a, a) in w:
            links += 1
        for b in nbrs[i + 1 :]:
            if (a, b) in w:
                links += 1
    return links / (k * (k + 1) / 2)


def recurrence(N):
    """Exact P_n as Fractions for n <= N."""
    P = {2: Fraction(1), 3: Fraction(1)}
    for n in range(4, N + 1):
        val = Fraction(1)
        for i in range(2, math.isqrt(n) + 1):
            val *= 1 - P[i] / i
        P[n] = val
    return P


def harmonic(k):
    return sum(Fraction(1, j) for j in range(1, k + 1))


def offset_li(x):
    return float(mpmath.li(x) - mpmath.li(2))


def poisson_pmf(k, mu):
    return math.exp(-mu) * mu**k / math.factorial(k)


def closest(primes, x):
    """Prime nearest to x, ties to the smaller one."""
    best = None
    for p in primes:
        if best is None or abs(p - x) < abs(best - x):
            best = p
    return best


def model_step(n, primes, draw):
    """Factor list [(p, mult), ...] for n, or None when n becomes prime.

    ``draw()`` yields uniforms in [0, 1); a connection to p succeeds when the
    uniform is below 1/p.
    """
    first = None
    for p in primes:
        if p * p > n:
            break
        if draw() * p < 1.0:
            first = p
            break
    if first is None:
        return None
    factors = [[first, 1]]
    resid = n / first
    lo = primes.index(first)
    while True:
        hit = None
        for j in range(lo, len(primes)):
            q = primes[j]
            if q * q > resid:
                break
            if draw() * q < 1.0:
                hit = j
                break
        if hit is None:
            break
        q = primes[hit]
        resid /= q
        if factors[-1][0] == q:
            factors[-1][1] += 1
        else:
            factors.append([q, 1])
        lo = hit
        if q * q > resid:
            break
    t = closest(primes, resid)
    for f in factors:
        if f[0] == t:
            f[1] += 1
            break
    else:
        factors.append([t, 1])
    return [tuple(f) for f in factors]


def grow_model(N, rng):
    """Full pure-Python run; returns (primes, {composite: factors})."""
    primes = [2]
    comps = {}
    for n in range(3, N + 1):
        f = model_step(n, primes, rng.random)
        if f is None:
            primes.append(n)
        else:
            comps[n] = f
    return primes, comps


def euler_delay(N, dn=0.25):
    """dP/dn = -P(n) P(sqrt n) / (2n) by explicit Euler in n from 16.

    Below 16 the delayed value comes from the exact recurrence at floor(x).
    """
    exact = recurrence(16)
    grid_n = [16.0]
    grid_P = [float(recurrence(16)[16])]

    def delayed(x):
        if x < 16:
            return float(exact[max(2, min(15, math.floor(x + 1e-9)))])
        # grid is uniform in n
        i = int((x - 16.0) / dn)
        t = (x - grid_n[i]) / dn
        return grid_P[i] * (1 - t) + grid_P[min(i + 1, len(grid_P) - 1)] * t

    n = 16.0
    while n < N:
        P = grid_P[-1]
        grid_P.append(P - dn * P * delayed(math.sqrt(n)) / (2 * n))
        n += dn
        grid_n.append(n)
    return grid_n, grid_P


def largest_gap_scan(primes, boundary="within"):
    """{m: largest gap} over consecutive primes, by interval of the left prime."""
    out = {}
    for a, b in zip(primes, primes[1:]):
        m = math.isqrt(a)
        if boundary == "within" and math.isqrt(b) != m:
            continue
        out[m] = max(out.get(m, 0), b - a)
    return out
