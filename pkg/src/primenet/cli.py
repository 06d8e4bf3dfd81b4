"""Command-line front end: ``primenet <subcommand> ...``.

Every subcommand writes UTF-8 CSVs plus a flat ``<command>.manifest`` next
to them.  Relative output paths land in ``$PRIMENET_OUT_DIR`` when it is set.
Exit status: 0 on success, 2 on usage or domain errors, 3 when a memory
budget would be exceeded.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import arith, figures, gaps, meanfield, projection
from .errors import ResourceBudgetError
from .io import write_csv, write_manifest
from .model import GrowthConfig, HardcoreStream, ensemble_run, grow
from .network import build_real_network, measure_distributions
from .seeding import derive_seed
from .sieve import DEFAULT_SEGMENT, PrimeStream, build_table, logarithmic_integral

OUT_DIR_ENV = "PRIMENET_OUT_DIR"


def count(text: str) -> int:
    """Integer argument that also accepts forms like 1e6."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def out_path(path) -> Path:
    path = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def out_dir(path) -> Path:
    d = out_path(path or ".")
    d.mkdir(parents=True, exist_ok=True)
    return d


def _emit(tables: dict, directory: Path) -> list[Path]:
    return [write_csv(directory / name, header, rows) for name, (header, rows) in tables.items()]


# subcommands; each returns (outputs, seed)

def cmd_sieve(a):
    table = build_table(a.limit, segment_size=a.segment_size)
    path = out_path(a.out)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("n,is_prime\n")
        for lo in range(2, a.limit + 1, 1 << 20):
            n = np.arange(lo, min(lo + (1 << 20), a.limit + 1))
            np.savetxt(fh, np.column_stack((n, table.is_prime(n))), fmt="%d", delimiter=",")
    return [path], None


def cmd_pi(a):
    path = write_csv(out_path(a.out), ["N", "pi", "li", "n_over_ln_n"], figures.pi_rows(a.limit, a.points))
    return [path], None


def cmd_arith(a):
    table = build_table(max(a.limit, 2))
    if a.action == "identity":
        lhs, rhs = arith.omega_sum_identity(a.limit, table)
        print(f"sum_omega={lhs}")
        print(f"sum_pi={rhs}")
        print("equal" if lhs == rhs else "DIFFERENT")
        path = write_csv(out_path(a.out or "identity.csv"), ["N", "sum_omega", "sum_pi"], [(a.limit, lhs, rhs)])
        return [path], None
    n = np.arange(2, a.limit + 1)
    om = arith.omega_upto(a.limit)[2:]
    t1 = arith.tau_upto(a.limit, 1)[2:]
    s1 = arith.sigma_upto(a.limit, 1)[2:]
    path = write_csv(out_path(a.out or "arith.csv"), ["n", "omega", "tau1", "sigma1"], zip(n.tolist(), om.tolist(), t1.tolist(), s1.tolist()))
    return [path], None


def cmd_network(a):
    if a.model:
        seed = derive_seed(a.seed, "network", 0)
        net = grow(GrowthConfig(a.limit, seed, record_edges=True)).to_network()
    else:
        seed = None
        net = build_real_network(a.limit)
    path = out_path(a.out)
    net.to_csv(path)
    outputs = [path]
    for key, ccdf in measure_distributions(net).items():
        p = path.with_name(f"{path.stem}_{key}_ccdf.csv")
        ccdf.to_csv(p)
        outputs.append(p)
    return outputs, seed


def cmd_project(a):
    g = projection.project(a.limit)
    rows = zip(g.p.tolist(), g.q.tolist(), g.weight.tolist())
    return [write_csv(out_path(a.out), ["p", "q", "weight"], rows)], None


def cmd_clustering(a):
    if a.model:
        k, c, n = figures.model_clustering_curve(a.limit, a.runs, a.seed)
        seed = a.seed
    else:
        k, c, n = projection.clustering_vs_degree(a.limit)
        seed = None
    path = write_csv(out_path(a.out), ["k", "mean_C", "count"], zip(k.tolist(), c.tolist(), n.tolist()))
    return [path], seed


def cmd_model(a):
    d = out_dir(a.out_dir)
    cp = figures.log_checkpoints(1, a.limit)
    cp = cp[cp >= 2]
    ens = ensemble_run(a.limit, a.runs, a.seed, a.variant, cp, workers=a.workers, keep_distributions=False)
    table = build_table(a.limit)
    li = np.atleast_1d(logarithmic_integral(cp.astype(float)))
    rows = zip(cp.tolist(), ens.pi_mean.tolist(), ens.pi_std.tolist(), table.prime_count(cp).tolist(), li.tolist())
    outputs = [write_csv(d / "pi_curve.csv", ["N", "mean_Pi", "std_Pi", "pi_real", "li"], rows)]
    if a.variant == "standard":
        rows = zip(cp.tolist(), ens.eps_mean.tolist(), ens.sigma_x_mean.tolist())
        outputs.append(write_csv(d / "epsilon.csv", ["N", "mean_eps", "std_x"], rows))
        if a.record_edges:
            for i in range(a.runs):
                s = derive_seed(a.seed, a.variant, i)
                p = d / f"edges_run{i:04d}.csv"
                grow(GrowthConfig(a.limit, s, record_edges=True)).to_network().to_csv(p)
                outputs.append(p)
    return outputs, a.seed


def cmd_meanfield(a):
    rec = meanfield.recurrence_curve(a.limit)
    ode = meanfield.ode_curve(a.limit) if a.limit >= 4 else None
    n = np.arange(2, a.limit + 1)
    P_ode = ode.P[2:] if ode is not None else np.full(n.size, np.nan)
    rows = zip(n.tolist(), rec.P[2:].tolist(), P_ode.tolist(), (1 / np.log(n)).tolist())
    return [write_csv(out_path(a.out), ["n", "P_recurrence", "P_ode", "one_over_ln_n"], rows)], None


def erdos_kac_window(N: int) -> tuple[int, int]:
    """Numbers sharing (up to one step) the prime range <= sqrt(N)."""
    return (math.isqrt(N) - 1) ** 2, N


def cmd_erdoskac(a):
    pmf = meanfield.erdos_kac_pmf(a.limit, a.omega_max)
    emp = np.full(pmf.size, np.nan)
    if a.runs > 0:
        ens = ensemble_run(a.limit, a.runs, a.seed, workers=a.workers, keep_distributions=False,
                           omega_window=erdos_kac_window(a.limit))
        e = ens.pmfs["omega"][: pmf.size]
        emp[:] = 0.0
        emp[: e.size] = e
    rows = [(w, pmf[w], emp[w]) for w in range(1, pmf.size)]
    return [write_csv(out_path(a.out), ["omega", "pmf", "empirical"], rows)], a.seed if a.runs else None


def cmd_gaps(a):
    d = out_dir(a.out_dir)
    seed = None
    if a.source == "real":
        stream = PrimeStream(a.limit)
    elif a.source == "hardcore":
        seed = a.seed
        stream = HardcoreStream(a.limit, derive_seed(a.seed, "hardcore", 0))
    else:
        seed = a.seed
        stream = grow(GrowthConfig(a.limit, derive_seed(a.seed, "standard", 0))).primes()
    s = gaps.normalize(gaps.largest_gaps(stream, a.limit, a.source))
    rows = zip(s.m.tolist(), s.n.tolist(), s.G.tolist(), s.G_norm.tolist(), s.G_rescaled.tolist())
    outputs = [write_csv(d / "gap_series.csv", ["m", "n", "G", "G_norm", "G_rescaled"], rows)]
    lo = a.ccdf_lo if a.ccdf_lo is not None else 0.9 * a.limit
    emp, theory = gaps.gap_ccdf(s, lo, a.limit)
    outputs.append(write_csv(d / "gap_ccdf.csv", ["g", "empirical_tail", "theory_tail"], zip(emp.values.tolist(), emp.tail.tolist(), theory.tolist())))
    rows = []
    for alpha in a.alphas:
        for N in figures.log_checkpoints(2, a.limit):
            e, p = gaps.count_exceedances(s, alpha, int(N))
            rows.append((alpha, int(N), e, p))
    outputs.append(write_csv(d / "exceed.csv", ["alpha", "N", "empirical", "predicted"], rows))
    print(f"2c={s.two_c:.6f}")
    return outputs, seed


def cmd_figure(a):
    d = out_dir(a.out_dir)
    defaults = figures.DEFAULTS[a.which]
    limit = a.limit if a.limit is not None else defaults["limit"]
    runs = a.runs if a.runs is not None else defaults["runs"]
    a.limit, a.runs = limit, runs
    tables = figures.DRIVERS[a.which](limit, runs, a.seed, a.workers)
    return _emit(tables, d), a.seed


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="primenet", description="Primes and composites as a growing bipartite network.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve", help="primality flags up to N")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--segment-size", type=count, default=DEFAULT_SEGMENT)
    s.add_argument("--out", default="primes.csv")
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("pi", help="pi(N), Li(N) and N/ln N at log-spaced points")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--points", type=count, default=1)
    s.add_argument("--out", default="pi.csv")
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("arith", help="omega, tau_1, sigma_1 table or the omega-sum identity")
    s.add_argument("action", nargs="?", choices=["table", "identity"], default="table")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_arith)

    s = sub.add_parser("network", help="bipartite edge list and degree/strength CCDFs")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--model", action="store_true", help="grow a model network instead")
    s.add_argument("--seed", type=count, default=0)
    s.add_argument("--out", default="network.csv")
    s.set_defaults(func=cmd_network)

    s = sub.add_parser("project", help="one-mode projection edges")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--out", default="proj.csv")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("clustering", help="mean clustering by projection degree")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--model", action="store_true")
    s.add_argument("--runs", type=count, default=10)
    s.add_argument("--seed", type=count, default=0)
    s.add_argument("--out", default="ck.csv")
    s.set_defaults(func=cmd_clustering)

    s = sub.add_parser("model", help="stochastic growth model")
    msub = s.add_subparsers(dest="action", required=True)
    r = msub.add_parser("run", help="ensemble of realizations")
    r.add_argument("--limit", type=count, required=True)
    r.add_argument("--runs", type=count, default=1)
    r.add_argument("--seed", type=count, default=0)
    r.add_argument("--variant", choices=["standard", "hardcore"], default="standard")
    r.add_argument("--record-edges", action="store_true")
    r.add_argument("--workers", type=count, default=1)
    r.add_argument("--out-dir", default=".")
    r.set_defaults(func=cmd_model)

    s = sub.add_parser("meanfield", help="recurrence and ODE curves for P_n")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--out", default="pn.csv")
    s.set_defaults(func=cmd_meanfield)

    s = sub.add_parser("erdoskac", help="Poisson omega law vs model composites near N")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--omega-max", type=count, default=50)
    s.add_argument("--runs", type=count, default=10)
    s.add_argument("--seed", type=count, default=0)
    s.add_argument("--workers", type=count, default=1)
    s.add_argument("--out", default="ek.csv")
    s.set_defaults(func=cmd_erdoskac)

    s = sub.add_parser("gaps", help="largest-gap series, CCDF and exceedances")
    s.add_argument("--limit", type=count, required=True)
    s.add_argument("--source", choices=["real", "model", "hardcore"], default="real")
    s.add_argument("--seed", type=count, default=0)
    s.add_argument("--alphas", type=float, nargs="+", default=[1.2, 1.4, 2.0, 3.0])
    s.add_argument("--ccdf-lo", type=float)
    s.add_argument("--out-dir", default=".")
    s.set_defaults(func=cmd_gaps)

    s = sub.add_parser("figure", help="plot-ready CSVs for one figure")
    s.add_argument("--which", choices=figures.FIGURES, required=True)
    s.add_argument("--limit", type=count)
    s.add_argument("--runs", type=count)
    s.add_argument("--seed", type=count, default=0)
    s.add_argument("--workers", type=count, default=1)
    s.add_argument("--out-dir", default=".")
    s.set_defaults(func=cmd_figure)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        outputs, seed = args.func(args)
    except ResourceBudgetError as exc:
        print(f"primenet: resource budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OverflowError) as exc:
        print(f"primenet: {exc}", file=sys.stderr)
        return 2
    name = args.command if getattr(args, "action", None) in (None, "table") else f"{args.command}-{args.action}"
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    manifest = Path(outputs[0]).parent / f"{name}.manifest"
    write_manifest(manifest, name, params, seed, outputs, time.perf_counter() - start)
    return 0


if __name__ == "__main__":
    sys.exit(main())
