import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from primenet.errors import ResourceBudgetError
from primenet.network import build_real_network
from primenet.projection import (
    clustering,
    clustering_closed_form,
    clustering_vs_degree,
    om_degree,
    om_degree_distribution,
    om_strength,
    project,
    project_network,
)
from primenet.sieve import build_table


def _weights(g):
    return {(int(a), int(b)): int(w) for a, b, w in zip(g.p, g.q, g.weight)}


def test_examples():
    g = project(20)
    w = _weights(g)
    assert w[(2, 3)] == 3
    assert (3, 7) not in w
    t = build_table(20)
    assert om_degree(2, 20, t) == 4
    assert om_degree(19, 20, t) == 0
    assert om_degree(5, 20, t) == 2
    assert om_strength(2, 20, t) == 11
    assert om_strength(19, 20, t) == 0
    assert om_strength(3, 20, t) == 6
    assert clustering(2, 20, t) == pytest.approx(1 / 3)
    assert clustering(13, 169) == 1.0
    assert clustering(17, 289) == 1.0


def test_clique_below_sqrt():
    g = project(289)
    w = _weights(g)
    small = [2, 3, 5, 7, 11, 13, 17]
    for i, a in enumerate(small):
        assert (a, a) in w
        for b in small[i + 1 :]:
            assert (a, b) in w
    # nothing links two primes outside the clique
    assert all(a in small or b in small for a, b in w)


@pytest.mark.parametrize("N", [20, 289, 1000, 5000])
def test_projection_matches_enumeration(N):
    ps, w = oracles.projection(N)
    assert _weights(project(N)) == w
    assert _weights(project_network(build_real_network(N))) == w
    for (a, b), val in list(w.items())[:200]:
        assert val == oracles.shared_composites(a, b, N)


@given(st.integers(4, 5000))
@settings(max_examples=25, deadline=None)
def test_closed_forms_match_graph(N):
    t = build_table(N)
    g = project(N)
    primes, C = clustering_closed_form(N, t)
    assert np.array_equal(primes, g.nodes)
    for i, p in enumerate(g.nodes.tolist()):
        assert om_degree(p, N, t) == g.degree[i]
        assert om_strength(p, N, t) == g.strength[i]
    assert np.allclose(C, g.clustering, equal_nan=True, atol=1e-12)
    loops = {int(a) for a, b in zip(g.p, g.q) if a == b}
    assert loops == {p for p in g.nodes.tolist() if p * p <= N}


@pytest.mark.parametrize("N", [97, 500, 2000, 5000])
def test_clustering_against_exhaustive_count(N):
    ps, w = oracles.projection(N)
    t = build_table(N)
    primes, C = clustering_closed_form(N, t)
    for p, c in zip(primes.tolist(), C.tolist()):
        ref = oracles.clustering(p, ps, w)
        if math.isnan(ref):
            assert math.isnan(c)
        else:
            assert c == pytest.approx(ref, abs=1e-12), p


@pytest.mark.parametrize("N", [10**4, 10**5])
def test_sampled_primes_large(N):
    t = build_table(N)
    g = project(N)
    primes, C = clustering_closed_form(N, t)
    rng = np.random.default_rng(1)
    idx = rng.choice(primes.size, 40, replace=False)
    idx = np.concatenate((idx, np.arange(12)))
    for i in idx.tolist():
        p = int(primes[i])
        assert om_degree(p, N, t) == g.degree[i]
        assert om_strength(p, N, t) == g.strength[i]
        if not math.isnan(C[i]):
            assert C[i] == pytest.approx(g.clustering[i], abs=1e-12)
    big = primes * primes >= N
    ok = ~np.isnan(C)
    assert np.all(C[big & ok] == 1.0)
    assert np.all((C[ok] >= 0) & (C[ok] <= 1))


def test_degree_distribution_matches_measurement():
    for N in (4, 20, 289, 5000, 10**5):
        t = build_table(N)
        g = project(N)
        P = om_degree_distribution(N, t)
        hist = np.bincount(g.degree, minlength=P.size) / g.nodes.size
        assert P.sum() == pytest.approx(1.0)
        assert np.allclose(P, hist[: P.size])
        assert hist[P.size :].sum() == 0


def test_clustering_vs_degree_real():
    k, c, n = clustering_vs_degree(10**4)
    k2, c2, n2 = clustering_vs_degree(10**4)
    assert np.array_equal(c, c2)
    t = build_table(10**4)
    primes, C = clustering_closed_form(10**4, t)
    big_degrees = set(t.prime_count(10**4 // primes[primes * primes >= 10**4]).tolist())
    # degrees reached only by primes above sqrt(N) average to exactly 1
    small_degrees = set(t.prime_count(10**4 // primes[primes * primes < 10**4]).tolist())
    for kk, cc in zip(k.tolist(), c.tolist()):
        if kk in big_degrees and kk not in small_degrees:
            assert cc == 1.0
    with pytest.raises(ValueError):
        clustering_vs_degree(10**7)


def test_invalid():
    with pytest.raises(ValueError):
        om_degree(4, 20)
    with pytest.raises(ValueError):
        clustering(21, 20)
    with pytest.raises(ValueError):
        project(3)
    with pytest.raises(ResourceBudgetError):
        project(10**8)
    with pytest.raises(ResourceBudgetError):
        project(10**5, memory_budget=1 << 10)


@pytest.fixture(scope="module")
def clustering_curves():
    from primenet.figures import model_clustering_curve

    real = clustering_vs_degree(10**5)
    model = model_clustering_curve(10**5, 10, 0)
    kr, cr, nr = real
    km, cm, nm = model
    common, ir, im = np.intersect1d(kr, km, return_indices=True)
    return np.abs(cr[ir] - cm[im]), np.minimum(nr[ir], nm[im])


@pytest.mark.xfail(strict=True, reason="single-prime degree bins put the raw sup near 0.25")
def test_clustering_real_vs_model_all_degrees(clustering_curves):
    d, _ = clustering_curves
    assert d.max() <= 0.1


def test_clustering_real_vs_model_populated_degrees(clustering_curves):
    d, n = clustering_curves
    assert d[n >= 10].max() <= 0.1
