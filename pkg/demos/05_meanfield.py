"""
Mean-field probability of being prime
=====================================

P_n = prod_{i <= sqrt n} (1 - P_i / i) is exact for the model; it only
changes at perfect squares.  A delay equation in ln n approximates it.
"""

import math

import numpy as np

from primenet.meanfield import erdos_kac_pmf, log_survival, meanfield_prime_count, ode_curve, recurrence_curve

rec = recurrence_curve(10**6)
print("P_2..P_16:", np.round(rec(np.arange(2, 17)), 4))

ode = ode_curve(10**6)
for n in (10**2, 10**4, 10**6):
    print(f"n={n:>8}  recurrence={rec(n):.5f}  ode={ode(n):.5f}  1/ln n={1 / math.log(n):.5f}")

print("sum of P_n to 1e6:", round(meanfield_prime_count(10**6), 1), " pi(1e6) = 78498")

# omega in the model is Poisson with mean -ln P_N (shifted by one)
mu = -log_survival(10**6)
pmf = erdos_kac_pmf(10**6, 20)
print("mu =", round(mu, 4), " pmf:", np.round(pmf[1:8], 4))
