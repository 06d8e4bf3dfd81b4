"""Plot-ready tables behind each figure.

Every driver returns ``{file name: (header, rows)}`` and leaves writing to
the caller, so the same numbers feed the CLI and the acceptance checks.
"""

from __future__ import annotations

import math

import numpy as np

from . import gaps as gp
from .model import GrowthConfig, HardcoreStream, ensemble_run, grow
from .network import Ccdf, build_real_network, measure_distributions
from .projection import clustering_vs_degree, om_degree_distribution, project, project_network
from .seeding import derive_seed
from .sieve import PrimeStream, build_table, logarithmic_integral
from .stats import loglog_slope

FIGURES = ("2", "3", "4", "5", "6", "B2", "B3")
DEFAULTS = {
    "2": {"limit": 10**6, "runs": 100},
    "3": {"limit": 10**6, "runs": 100},
    "4": {"limit": 10**6, "runs": 100},
    "5": {"limit": 10**9, "runs": 1},
    "6": {"limit": 10**9, "runs": 1},
    "B2": {"limit": 10**5, "runs": 10},
    "B3": {"limit": 10**5, "runs": 10},
}
EXCEED_ALPHAS = (1.2, 1.4, 1.6, 1.8, 2.0, 3.0)


def log_checkpoints(lo_exp: float, limit: int, per_decade: int = 5) -> np.ndarray:
    hi_exp = math.log10(limit)
    k = max(2, int(round((hi_exp - lo_exp) * per_decade)) + 1)
    cp = np.unique(np.rint(np.logspace(lo_exp, hi_exp, k)).astype(np.int64))
    cp[-1] = limit
    return cp


def figure2(limit, runs, seed, workers=1):
    cp = log_checkpoints(2, limit)
    ens = ensemble_run(limit, runs, seed, checkpoints=cp, workers=workers, keep_distributions=False)
    table = build_table(limit)
    pi = table.prime_count(cp)
    pnt = cp / np.log(cp)
    rows = [
        (int(n), int(p), m, s, a, m / p - 1, a / p - 1)
        for n, p, m, s, a in zip(cp, pi, ens.pi_mean, ens.pi_std, pnt)
    ]
    return {"fig2.csv": (["N", "pi", "Pi_mean", "Pi_std", "N_over_lnN", "relerr_model", "relerr_pnt"], rows)}


def figure3(limit, runs, seed, workers=1):
    cp = log_checkpoints(3, limit, per_decade=2)
    ens = ensemble_run(limit, runs, seed, checkpoints=cp, workers=workers, keep_distributions=False)
    rows = list(zip(cp.tolist(), ens.eps_mean.tolist(), ens.sigma_x_mean.tolist()))
    return {"fig3.csv": (["N", "eps_mean", "sigma_x"], rows)}


def figure4_data(limit, runs, seed, workers=1):
    real = measure_distributions(build_real_network(limit))
    ens = ensemble_run(limit, runs, seed, workers=workers, keep_distributions=True)
    model = {k: ens.ccdf(k) for k in ("k_p", "s_p", "k_c", "s_c")}
    return real, model


def figure4(limit, runs, seed, workers=1):
    real, model = figure4_data(limit, runs, seed, workers)
    rows = []
    for key in ("k_p", "s_p", "k_c", "s_c"):
        grid = np.union1d(real[key].values, model[key].values)
        rows += [(key, int(v), r, m) for v, r, m in zip(grid, real[key](grid), model[key](grid))]
    return {"fig4.csv": (["quantity", "value", "real_tail", "model_tail"], rows)}


def gap_series_pair(limit, seed):
    real = gp.normalize(gp.largest_gaps(PrimeStream(limit), limit, "real"))
    hard = gp.normalize(gp.largest_gaps(HardcoreStream(limit, derive_seed(seed, "hardcore", 0)), limit, "hardcore"))
    return real, hard


def figure5(limit, runs, seed, workers=1):
    real, hard = gap_series_pair(limit, seed)
    lo = 0.9 * limit
    series_rows = [
        (int(m), int(m) ** 2, g, a, b)
        for m, g, a, b in zip(real.m, real.G, real.G_rescaled, hard.G_rescaled[: real.m.size])
    ]
    ccdf_rows, summary = [], []
    for s in (real, hard):
        emp, theory = gp.gap_ccdf(s, lo, limit)
        ccdf_rows += [(s.source, g, t, th) for g, t, th in zip(emp.values, emp.tail, theory)]
        first, last = gp.stationarity(s)
        summary.append((s.source, s.two_c, first, last))
    grid = np.linspace(0, 3, 151)
    theory_rows = [(n, g, t) for n in (float(limit), 1e15, 1e25) for g, t in zip(grid, gp.theory_ccdf(grid, n))]
    return {
        "fig5_series.csv": (["m", "n", "G", "real_rescaled", "hardcore_rescaled"], series_rows),
        "fig5_ccdf.csv": (["source", "g", "empirical_tail", "theory_tail"], ccdf_rows),
        "fig5_theory.csv": (["N", "g", "theory_tail"], theory_rows),
        "fig5_summary.csv": (["source", "two_c", "first_quartile_mean", "last_quartile_mean"], summary),
    }


def figure6(limit, runs, seed, workers=1, series=None):
    series = series if series is not None else gp.normalize(gp.largest_gaps(PrimeStream(limit), limit))
    cp = log_checkpoints(4, limit)
    rows = []
    for alpha in EXCEED_ALPHAS:
        _, rescaled, slope = gp.exceedance_curve(series, alpha, cp)
        rows += [(alpha, int(n), r, slope) for n, r in zip(cp, rescaled)]
    return {"fig6.csv": (["alpha", "N", "count_rescaled", "fit_slope"], rows)}


def _model_projections(limit, runs, seed):
    for i in range(runs):
        real = grow(GrowthConfig(limit, derive_seed(seed, "standard", i), record_edges=True))
        yield project_network(real.to_network())


def figureB2(limit, runs, seed, workers=1):
    table = build_table(limit)
    real = Ccdf.from_counts(om_degree_distribution(limit, table))
    model = Ccdf.mean(Ccdf.from_samples(g.degree) for g in _model_projections(limit, runs, seed))
    grid = np.union1d(real.values, model.values)
    rows = list(zip(grid.tolist(), real(grid).tolist(), model(grid).tolist()))
    return {"figB2.csv": (["k", "real_tail", "model_tail"], rows)}


def model_clustering_curve(limit, runs, seed):
    """Mean C(k) pooled over ``runs`` model projections."""
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for g in _model_projections(limit, runs, seed):
        ks, means, cnt = clustering_vs_degree(limit, graph=g)
        for k, m, c in zip(ks.tolist(), means.tolist(), cnt.tolist()):
            sums[k] = sums.get(k, 0.0) + m * c
            counts[k] = counts.get(k, 0) + c
    ks = np.array(sorted(sums))
    return ks, np.array([sums[k] / counts[k] for k in ks]), np.array([counts[k] for k in ks])


def figureB3(limit, runs, seed, workers=1):
    kr, cr, nr = clustering_vs_degree(limit, build_table(limit))
    km, cm, nm = model_clustering_curve(limit, runs, seed)
    rows = [("real", int(k), c, int(n)) for k, c, n in zip(kr, cr, nr)]
    rows += [("model", int(k), c, int(n)) for k, c, n in zip(km, cm, nm)]
    return {"figB3.csv": (["source", "k", "mean_C", "count"], rows)}


DRIVERS = {
    "2": figure2,
    "3": figure3,
    "4": figure4,
    "5": figure5,
    "6": figure6,
    "B2": figureB2,
    "B3": figureB3,
}


def pi_rows(limit: int, points: int):
    """(N, pi, li, N/ln N) at ``points`` log-spaced values ending at ``limit``."""
    table = build_table(limit)
    cp = np.unique(np.rint(np.logspace(math.log10(2), math.log10(limit), points)).astype(np.int64))
    cp[-1] = limit
    cp = cp[cp >= 2]
    li = logarithmic_integral(cp.astype(float))
    return [(int(n), int(table.prime_count(int(n))), float(l), n / math.log(n)) for n, l in zip(cp, np.atleast_1d(li))]


def fit_eps_exponent(N, eps) -> float:
    return -loglog_slope(N, np.abs(eps))
