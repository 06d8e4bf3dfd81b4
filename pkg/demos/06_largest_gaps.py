"""
Largest gaps between primes
===========================

The largest gap inside [m^2, (m+1)^2), divided by its expected size, forms
a stationary series whose mean is the constant 2c.  Counting gaps above
alpha times the threshold tests a refined form of Cramer's conjecture.
"""

import numpy as np

from primenet.figures import log_checkpoints
from primenet.gaps import (
    count_exceedances,
    exceedance_curve,
    expected_largest_gap,
    gap_ccdf,
    largest_gaps,
    normalize,
    stationarity,
)
from primenet.model import HardcoreStream
from primenet.sieve import PrimeStream

N = 10**8
real = normalize(largest_gaps(PrimeStream(N), N))
hard = normalize(largest_gaps(HardcoreStream(N, seed=3), N, "hardcore"))
print("2c real =", round(real.two_c, 4), " hardcore =", round(hard.two_c, 4))
print("quartile means", np.round(stationarity(real), 4))
print("<G> at 1e4 =", round(expected_largest_gap(1e4), 2))

emp_r, theory = gap_ccdf(real, 0.9 * N, N)
emp_h, _ = gap_ccdf(hard, 0.9 * N, N)
print("real vs hardcore CCDF distance", round(emp_r.sup_distance(emp_h), 4))

cp = log_checkpoints(4, N)
for alpha in (1.2, 1.4, 2.0):
    counts, rescaled, slope = exceedance_curve(real, alpha, cp)
    print(f"alpha={alpha}: count to N={counts[-1]}, slope={slope:.3f}, target={1 - alpha / 2:.1f}")
print("alpha=3:", count_exceedances(real, 3.0))
