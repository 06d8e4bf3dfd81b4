"""Primes and composites as a growing bipartite network.

Exact network and arithmetic formulas driven by the prime counting function,
a parameter-free stochastic growth model for random primes and their
factorizations, mean-field analytics for it, and extreme-value statistics of
gaps between consecutive primes.
"""

__version__ = "0.1.0"

from .sieve import PrimeStream, PrimeTable, build_table, logarithmic_integral, prime_count  # noqa: E402
from .network import BipartiteNetwork, Ccdf, build_real_network, measure_distributions  # noqa: E402

__all__ = [
    "BipartiteNetwork",
    "Ccdf",
    "PrimeStream",
    "PrimeTable",
    "build_real_network",
    "build_table",
    "logarithmic_integral",
    "measure_distributions",
    "prime_count",
]
