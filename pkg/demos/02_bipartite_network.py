"""
Naturals as a bipartite network
===============================

Composites link to their prime factors, weighted by the exponent.  Prime
degree is floor(N/p) - 1, so its distribution follows from pi alone.
"""

import numpy as np

from primenet.network import (
    build_real_network,
    measure_distributions,
    prime_degree_ccdf,
    prime_degree_distribution,
)
from primenet.sieve import build_table
from primenet.stats import log_grid, loglog_slope

net = build_real_network(20)
for c in (12, 18, 20):
    sel = net.composite == c
    print(c, list(zip(net.prime[sel].tolist(), net.weight[sel].tolist())))

# every edge is counted once from each side
print("edge balance", net.edge_balance())

N = 10**6
table = build_table(N + 1)
P = prime_degree_distribution(N, table)
print("P(k_p=0) =", P[0], " (primes above N/2)")

# the CCDF tail falls roughly like 1/k
k = log_grid(10, 10**4)
print("closed-form CCDF slope", round(loglog_slope(k, prime_degree_ccdf(N, table)(k)), 3))

ccdfs = measure_distributions(build_real_network(10**5))
for key, c in ccdfs.items():
    print(key, "max", c.values[-1], "P(X>=2) =", round(c(2), 4))
