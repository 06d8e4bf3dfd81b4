import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from primenet.errors import AccuracyWarning, TruncationWarning
from primenet.meanfield import (
    erdos_kac_pmf,
    log_survival,
    meanfield_prime_count,
    ode_curve,
    recurrence_curve,
    standardized_omega_moments,
)
from primenet.sieve import build_table


@pytest.fixture(scope="module")
def rec6():
    return recurrence_curve(10**6)


def test_recurrence_examples(rec6):
    assert rec6(2) == 1.0 and rec6(3) == 1.0
    assert np.all(rec6(np.arange(4, 9)) == 0.5)
    assert np.allclose(rec6(np.arange(9, 16)), 1 / 3)


def test_recurrence_exact_against_fractions(rec6):
    ref = oracles.recurrence(3000)
    for n in range(2, 3001):
        assert rec6(n) == pytest.approx(float(ref[n]), rel=1e-13)


def test_recurrence_shape(rec6):
    P = rec6.P[2:]
    assert np.all(P > 0) and np.all(P <= 1)
    assert np.all(np.diff(rec6.P[4:]) <= 0)
    n = np.arange(3, 10**6 + 1)
    changes = n[np.diff(rec6.P[2:]) != 0]
    roots = np.sqrt(changes).astype(int)
    assert np.all(roots * roots == changes)


def test_prime_count_examples(table_1e6):
    assert meanfield_prime_count(3) == 2.0
    assert meanfield_prime_count(8) == pytest.approx(4.5)
    assert abs(meanfield_prime_count(10**6) / table_1e6.prime_count(10**6) - 1) <= 0.05


def test_ode_against_euler():
    ode = ode_curve(10**4)
    # Euler is first order, so extrapolate from two step sizes
    _, coarse = oracles.euler_delay(10**4, 0.5)
    _, fine = oracles.euler_delay(10**4, 0.25)
    for n in (20, 100, 1000, 10**4):
        ref = 2 * fine[(n - 16) * 4] - coarse[(n - 16) * 2]
        assert ode(n) == pytest.approx(ref, rel=1e-4)


def test_ode_properties():
    ode = ode_curve(10**6)
    assert ode(16) == recurrence_curve(16)(16)
    assert np.all(np.diff(ode.P[16:]) < 0)
    assert np.all(np.isnan(ode.P[:16]))
    assert 0.8 <= ode(10**6) * math.log(10**6) <= 1.3


def test_ode_resolution_warning():
    with pytest.warns(AccuracyWarning):
        ode_curve(10**4, h=0.6)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ode_curve(10**4)


def test_log_survival_matches_exact_product():
    ref = oracles.recurrence(400)
    exact = sum(math.log(1 - float(ref[i]) / i) for i in range(2, 21))
    assert log_survival(400) == pytest.approx(exact, rel=1e-13)
    assert math.exp(log_survival(400)) == pytest.approx(float(ref[400]), rel=1e-12)


def test_erdos_kac_pmf():
    pmf = erdos_kac_pmf(10**6, 50)
    assert abs(pmf.sum() - 1) <= 1e-6
    mu = -log_survival(10**6)
    assert pmf.argmax() == 1 + math.floor(mu)
    assert abs(mu - math.log(math.log(10**6))) < 0.5
    for w in range(1, 12):
        assert pmf[w] == pytest.approx(oracles.poisson_pmf(w - 1, mu), rel=1e-10)
    with pytest.warns(TruncationWarning):
        short = erdos_kac_pmf(10**6, 3)
    assert short.sum() == pytest.approx(1.0)


@given(st.integers(4, 10**5))
@settings(max_examples=30, deadline=None)
def test_pmf_normalized(N):
    assert abs(erdos_kac_pmf(N, 60).sum() - 1) <= 1e-9


def test_standardized_moments():
    # lnln(e^e) = 1
    m, v = standardized_omega_moments([2, 3, 4], [math.e**math.e] * 3)
    assert m == pytest.approx(2.0) and v == pytest.approx(2 / 3)
    n = np.array([100, 10**4, 10**6])
    ll = np.log(np.log(n))
    z = (np.array([1, 3, 2]) - ll) / np.sqrt(ll)
    m, v = standardized_omega_moments([1, 3, 2], n)
    assert m == pytest.approx(z.mean()) and v == pytest.approx(z.var())
    with pytest.raises(ValueError):
        standardized_omega_moments([1], [2])


@pytest.fixture(scope="module")
def model_omega_1e6():
    from primenet.model import GrowthConfig, grow

    real = grow(GrowthConfig(10**6, 1))
    c = real.composites()
    return standardized_omega_moments(real.kc[c], np.full(c.size, 10**6))


def test_model_omega_mean_band(model_omega_1e6):
    assert -0.5 <= model_omega_1e6[0] <= 0.5


@pytest.mark.xfail(strict=True, reason="Var(omega) ~ lnln N - 1.83, so the ratio is ~0.33 at 10^6")
def test_model_omega_variance_band(model_omega_1e6):
    assert 0.6 <= model_omega_1e6[1] <= 1.6


def test_domain_errors():
    with pytest.raises(ValueError):
        recurrence_curve(1)
    with pytest.raises(ValueError):
        ode_curve(3)
    with pytest.raises(ValueError):
        erdos_kac_pmf(3)
