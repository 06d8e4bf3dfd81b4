"""One-mode projection of the bipartite network onto the primes.

Two primes are linked with weight equal to the number of composites they
both divide; a prime gets a self-loop when some composite holds it at least
squared.  Clustering uses the projection's own convention: the neighbours of
p exclude p itself, and self-loops of neighbours count as links, so the
number of possible links among k neighbours is k(k+1)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from .errors import ResourceBudgetError
from .network import BipartiteNetwork
from .sieve import PrimeTable, build_table

MAX_PROJECTION = 10**7


@dataclass
class ProjectionGraph:
    """Weighted prime-prime graph; edges stored once with p <= q."""

    N: int
    nodes: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)
    q: np.ndarray = field(repr=False)
    weight: np.ndarray = field(repr=False)

    def _index(self, values) -> np.ndarray:
        return np.searchsorted(self.nodes, values)

    @cached_property
    def adjacency(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency over ``nodes`` with self-loops on the diagonal."""
        i, j = self._index(self.p), self._index(self.q)
        n = self.nodes.size
        rows = np.concatenate((i, j[i != j]))
        cols = np.concatenate((j, i[i != j]))
        data = np.ones(rows.size, dtype=np.int64)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))

    @cached_property
    def degree(self) -> np.ndarray:
        """Distinct neighbours per node, a self-loop counting once."""
        return np.asarray(self.adjacency.sum(axis=1)).ravel()

    @cached_property
    def strength(self) -> np.ndarray:
        i, j = self._index(self.p), self._index(self.q)
        n = self.nodes.size
        s = np.bincount(i, weights=self.weight, minlength=n)
        s += np.bincount(j[i != j], weights=self.weight[i != j], minlength=n)
        return s.astype(np.int64)

    def weight_of(self, a: int, b: int) -> int:
        lo, hi = min(a, b), max(a, b)
        hit = np.flatnonzero((self.p == lo) & (self.q == hi))
        return int(self.weight[hit[0]]) if hit.size else 0

    def degree_of(self, p: int) -> int:
        return int(self.degree[self._index(p)])

    def strength_of(self, p: int) -> int:
        return int(self.strength[self._index(p)])

    @cached_property
    def clustering(self) -> np.ndarray:
        """Measured clustering per node; NaN where degree < 2."""
        A = self.adjacency
        loops = A.diagonal()
        M = A - sparse.diags(loops)
        M.eliminate_zeros()
        k = np.asarray(M.sum(axis=1)).ravel().astype(float)
        # ordered neighbour pairs (q, r), q != r, that are linked
        paths = np.asarray((M @ M).multiply(M).sum(axis=1)).ravel()
        neighbour_loops = M @ loops
        links = paths / 2 + neighbour_loops
        with np.errstate(invalid="ignore", divide="ignore"):
            c = links / (k * (k + 1) / 2)
        c[self.degree < 2] = np.nan
        return c

    def clustering_of(self, p: int) -> float:
        return float(self.clustering[self._index(p)])


def projection_bytes(N: int) -> int:
    """Rough peak: ~N lnln N / ln N pairs, each held as edges plus both sparse halves."""
    ln = math.log(max(N, 3))
    return int(64 * N * math.log(ln + 1) / ln) + N // 8


def project(N: int, table: PrimeTable | None = None, memory_budget: int | None = None) -> ProjectionGraph:
    """Projection of the real network: weight(p, q) = floor(N/(p q)) when p q <= N."""
    if N < 4:
        raise ValueError("N must be >= 4")
    budget = projection_bytes(MAX_PROJECTION) if memory_budget is None else memory_budget
    if projection_bytes(N) > budget:
        raise ResourceBudgetError(projection_bytes(N), budget, f"projection up to {N}")
    table = table if table is not None else build_table(N)
    nodes = table.primes(2, N)
    small = nodes[nodes <= math.isqrt(N)]
    # partners q >= p with p q <= N
    counts = table.prime_count(N // small) - np.arange(small.size)
    p = np.repeat(small, counts)
    start = np.repeat(np.arange(small.size), counts)
    offset = np.arange(p.size) - np.repeat(np.cumsum(counts) - counts, counts)
    q = nodes[start + offset]
    return ProjectionGraph(N, nodes, p, q, N // (p * q))


def project_network(net: BipartiteNetwork) -> ProjectionGraph:
    """Project any bipartite network by counting shared composites."""
    order = np.lexsort((net.prime, net.composite))
    comp, prime, weight = net.composite[order], net.prime[order], net.weight[order]
    starts = np.flatnonzero(np.r_[True, comp[1:] != comp[:-1]])
    sizes = np.diff(np.r_[starts, comp.size])
    key_parts = []
    base = net.N + 1
    for a in range(int(sizes.max(initial=0))):
        for b in range(a + 1, int(sizes.max(initial=0))):
            sel = starts[sizes > b]
            pa, pb = prime[sel + a], prime[sel + b]
            lo, hi = np.minimum(pa, pb), np.maximum(pa, pb)
            key_parts.append(lo.astype(np.int64) * base + hi)
    loops = prime[weight >= 2].astype(np.int64)
    key_parts.append(loops * base + loops)
    keys, w = np.unique(np.concatenate(key_parts) if key_parts else np.array([], np.int64), return_counts=True)
    return ProjectionGraph(net.N, net.primes(), keys // base, keys % base, w)


def _pi(table: PrimeTable | None, N: int) -> PrimeTable:
    return table if table is not None else build_table(max(N, 2))


def om_degree(p: int, N: int, table: PrimeTable | None = None) -> int:
    """k(p) = pi(N/p), self-loop included."""
    table = _pi(table, N)
    if not table.is_prime(p):
        raise ValueError(f"{p} is not prime")
    return table.prime_count(N // p)


def om_strength(p: int, N: int, table: PrimeTable | None = None) -> int:
    """s(p) = sum over primes q <= N/p of floor(N/(p q))."""
    table = _pi(table, N)
    if not table.is_prime(p):
        raise ValueError(f"{p} is not prime")
    partners = table.primes(2, N // p)
    return int((N // (p * partners)).sum())


def om_degree_distribution(N: int, table: PrimeTable | None = None) -> np.ndarray:
    """P(k) = [pi(N/p_k) - pi(N/p_{k+1})] / pi(N) with p_0 = 1."""
    if N < 4:
        raise ValueError("N must be >= 4")
    table = _pi(table, N)
    kmax = table.prime_count(N // 2)
    pk = np.concatenate(([1], table.primes(2, N)[: kmax + 1]))
    return (table.prime_count(N // pk[:-1]) - table.prime_count(N // pk[1:])) / table.prime_count(N)


def _clustering_terms(N: int, table: PrimeTable):
    """Per-prime pieces of the closed-form clustering for p <= sqrt(N)."""
    root = math.isqrt(N)
    small = table.primes(2, root)
    s = small.size
    j = np.arange(1, s + 1)
    link_counts = table.prime_count(N // small) - j
    # suffix[i] = sum over j > i+1 of (pi(N/p_j) - j)
    suffix = np.concatenate((np.cumsum(link_counts[::-1])[::-1][1:], [0]))
    return small, s, suffix


def clustering_closed_form(N: int, table: PrimeTable | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(primes, C) for every prime <= N; NaN where k(p) < 2."""
    table = _pi(table, N)
    primes = table.primes(2, N)
    K = table.prime_count(N // primes).astype(float)
    C = np.ones(primes.size)
    small, s, suffix = _clustering_terms(N, table)
    a = np.arange(1, small.size + 1, dtype=float)
    inner = (small * small) < N
    Ks = K[: small.size]
    num = (a - 1) * (2 * (Ks - 1) - a) + 2 * (suffix + s - 1)
    with np.errstate(invalid="ignore", divide="ignore"):
        closed = num / (Ks * (Ks - 1))
    C[: small.size] = np.where(inner, closed, 1.0)
    C[K < 2] = np.nan
    return primes, C


def clustering(p: int, N: int, table: PrimeTable | None = None) -> float:
    """Closed-form C(p); NaN when p has fewer than two neighbours."""
    table = _pi(table, N)
    if not table.is_prime(p) or p > N:
        raise ValueError(f"{p} is not a prime <= {N}")
    primes, C = clustering_closed_form(N, table)
    return float(C[np.searchsorted(primes, p)])


def _mean_by_degree(k: np.ndarray, C: np.ndarray):
    ok = ~np.isnan(C)
    k, C = k[ok].astype(np.int64), C[ok]
    ks, inv, counts = np.unique(k, return_inverse=True, return_counts=True)
    means = np.bincount(inv, weights=C) / counts
    return ks, means, counts


def clustering_vs_degree(
    N: int, table: PrimeTable | None = None, graph: ProjectionGraph | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(k, mean C, count) over primes with a defined clustering.

    Without ``graph`` the real network's closed forms are used; pass a
    projection of a model network to measure it instead.
    """
    if graph is not None:
        return _mean_by_degree(graph.degree, graph.clustering)
    if N > 10**6:
        raise ValueError("clustering_vs_degree is limited to N <= 10**6")
    table = _pi(table, N)
    primes, C = clustering_closed_form(N, table)
    return _mean_by_degree(table.prime_count(N // primes), C)
