"""
Growing random primes
=====================

Each n tries the existing model primes below sqrt(n) with probability 1/p.
If none connects, n is prime.  Ensembles show the model reproducing the
prime number theorem while individual runs wander a lot.
"""

import math

import numpy as np

from primenet.model import GrowthConfig, ensemble_run, factorization_error, grow
from primenet.sieve import build_table

real = grow(GrowthConfig(10**5, seed=7, record_edges=True))
print("model primes below 100:", real.primes()[real.primes() < 100])
print("Pi(1e5) =", real.prime_count([10**5])[0], "  pi(1e5) =", build_table(10**5).prime_count(10**5))

# composites carry an approximate factorization; x = product / n
c, p, w = real.edges
for n in (60, 1001, 99991):
    if real.flags[n]:
        print(n, "is a model prime")
        continue
    sel = c == n
    print(n, list(zip(p[sel].tolist(), w[sel].tolist())), "x =", round(real.cbar[n] / n, 4))
print("eps, sigma_x =", np.round(factorization_error(real), 4))

# the same seed replays the same run, and shorter runs are prefixes
short = grow(GrowthConfig(10**4, seed=7))
print("prefix property:", np.array_equal(short.flags, real.flags[: 10**4 + 1]))

cp = [10**3, 10**4, 10**5]
ens = ensemble_run(10**5, 200, seed=1, checkpoints=cp, keep_distributions=False)
table = build_table(10**5)
for N, m, s in zip(cp, ens.pi_mean, ens.pi_std):
    pi = table.prime_count(N)
    print(f"N={N:>6}  <Pi>={m:9.1f} +- {s / math.sqrt(ens.runs):5.1f}  pi={pi}  run std={s:.0f}")
