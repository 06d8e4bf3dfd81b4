"""
Prime-prime projection
======================

Two primes share floor(N/(p q)) composites.  Below sqrt(N) the primes form
a clique with self-loops; above it every prime is a leaf of that core, so
its clustering is 1.
"""

import numpy as np

from primenet.projection import clustering, clustering_vs_degree, om_degree, om_strength, project

g = project(20)
print(list(zip(g.p.tolist(), g.q.tolist(), g.weight.tolist())))
print("k(2) =", om_degree(2, 20), " s(2) =", om_strength(2, 20), " C(2) =", clustering(2, 20))

# closed forms against the explicit graph
N = 10**5
g = project(N)
i = np.searchsorted(g.nodes, 7)
print("p=7: graph", g.degree[i], g.strength[i], round(g.clustering[i], 6))
print("     formula", om_degree(7, N), om_strength(7, N), round(clustering(7, N), 6))

k, C, count = clustering_vs_degree(N)
for kk, cc, nn in list(zip(k, C, count))[::12]:
    print(f"k={kk:>6}  <C>={cc:.4f}  n={nn}")
