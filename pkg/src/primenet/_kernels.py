"""Compiled inner loops for the growth models.

Kept separate so the pure-Python modules import quickly and the jit cache
lives in one place.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _closest_prime(primes, m, x):
    # ties go to the smaller prime
    k = np.searchsorted(primes[:m], x)
    if k == 0:
        return primes[0]
    if k == m:
        return primes[m - 1]
    below = primes[k - 1]
    above = primes[k]
    if above - x < x - below:
        return above
    return below


@njit(cache=True)
def grow_kernel(N, rng, record):
    flags = np.zeros(N + 1, np.uint8)
    cbar = np.zeros(N + 1, np.float64)
    kc = np.zeros(N + 1, np.int16)
    sc = np.zeros(N + 1, np.int16)
    kp = np.zeros(N + 1, np.int32)
    sp = np.zeros(N + 1, np.int32)
    primes = np.empty(max(N, 2), np.int64)
    cap = 16
    if record:
        cap = 3 * N + 64
    e_c = np.empty(cap, np.int64)
    e_p = np.empty(cap, np.int64)
    e_w = np.empty(cap, np.int16)
    ne = 0
    fp = np.empty(64, np.int64)
    fw = np.empty(64, np.int64)

    m = 0
    if N >= 2:
        flags[2] = 1
        primes[0] = 2
        m = 1

    for n in range(3, N + 1):
        # step 1: first connection among primes <= sqrt(n)
        first = -1
        for i in range(m):
            p = primes[i]
            if p * p > n:
                break
            if rng.random() * p < 1.0:
                first = i
                break
        if first < 0:
            flags[n] = 1
            primes[m] = n
            m += 1
            continue

        # step 2: keep factoring the real-valued residual
        p = primes[first]
        nf = 1
        fp[0] = p
        fw[0] = 1
        resid = n / p
        lo = first
        while True:
            hit = -1
            j = lo
            while j < m:
                q = primes[j]
                if q * q > resid:
                    break
                if rng.random() * q < 1.0:
                    hit = j
                    break
                j += 1
            if hit < 0:
                break
            q = primes[hit]
            resid = resid / q
            if fp[nf - 1] == q:
                fw[nf - 1] += 1
            else:
                fp[nf] = q
                fw[nf] = 1
                nf += 1
            lo = hit
            if q * q > resid:
                break

        # terminal attachment to the prime closest to the residual
        t = _closest_prime(primes, m, resid)
        merged = False
        for a in range(nf):
            if fp[a] == t:
                fw[a] += 1
                merged = True
                break
        if not merged:
            fp[nf] = t
            fw[nf] = 1
            nf += 1

        prod = 1.0
        s = 0
        for a in range(nf):
            prod *= float(fp[a]) ** fw[a]
            s += fw[a]
            kp[fp[a]] += 1
            sp[fp[a]] += fw[a]
        cbar[n] = prod
        kc[n] = nf
        sc[n] = s
        if record:
            if ne + nf > cap:
                cap = 2 * cap + nf
                nc = np.empty(cap, np.int64)
                npr = np.empty(cap, np.int64)
                nw = np.empty(cap, np.int16)
                nc[:ne] = e_c[:ne]
                npr[:ne] = e_p[:ne]
                nw[:ne] = e_w[:ne]
                e_c, e_p, e_w = nc, npr, nw
            for a in range(nf):
                e_c[ne] = n
                e_p[ne] = fp[a]
                e_w[ne] = fw[a]
                ne += 1

    return flags, cbar, kc, sc, kp, sp, e_c[:ne], e_p[:ne], e_w[:ne]


@njit(cache=True)
def hardcore_chunk(lo, hi, prev, rng, out):
    """Hard-core flags for n in [lo, hi); returns (#primes written, last flag)."""
    k = 0
    for n in range(lo, hi):
        if prev:
            prev = False
            continue
        q = 1.0 / (math.log(n) - 1.0)
        if q >= 1.0 or rng.random() < q:
            out[k] = n
            k += 1
            prev = True
    return k, prev
