"""
Counting primes
===============

A segmented sieve gives pi(N) for every N at once; compare it with the
offset logarithmic integral and with N/ln N.
"""

import math

import numpy as np

from primenet.sieve import build_table, logarithmic_integral

table = build_table(10**7)

# pi at a few decades, read off the cumulative counts
for N in (10**3, 10**5, 10**7):
    pi = table.prime_count(N)
    li = logarithmic_integral(N)
    print(f"N={N:>9}  pi={pi:>7}  Li={li:10.1f}  N/lnN={N / math.log(N):10.1f}")

# the relative error of N/ln N shrinks slowly, Li's much faster
N = np.logspace(3, 7, 9).astype(np.int64)
pi = table.prime_count(N)
print(np.round(np.abs(N / np.log(N) / pi - 1), 4))
print(np.round(np.abs(logarithmic_integral(N.astype(float)) / pi - 1), 5))

# primes in a window, straight from the table
print(table.primes(10**7 - 200, 10**7))
