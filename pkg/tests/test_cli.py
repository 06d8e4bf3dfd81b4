import csv
import math
import subprocess
import sys
import time

import pytest

import oracles
from primenet.cli import main
from primenet.io import read_manifest


def rows(path):
    with open(path, encoding="utf-8") as fh:
        return list(csv.reader(fh))


def digests(manifest):
    return {k: v for k, v in read_manifest(manifest).items() if k.startswith("output.")}


@pytest.fixture
def out(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_pi_row(out):
    assert main(["pi", "--limit", "100"]) == 0
    r = rows(out / "pi.csv")
    assert r[0] == ["N", "pi", "li", "n_over_ln_n"]
    assert r[1][:2] == ["100", str(oracles.pi(100))]
    assert float(r[1][2]) == pytest.approx(oracles.offset_li(100), rel=1e-10)
    assert float(r[1][3]) == pytest.approx(100 / math.log(100), rel=1e-11)
    assert r[1][3].startswith("21.71")
    m = read_manifest(out / "pi.manifest")
    assert m["command"] == "pi" and m["param.limit"] == "100" and m["seed"] == "NA"


def test_env_override(out, monkeypatch):
    monkeypatch.setenv("PRIMENET_OUT_DIR", str(out / "elsewhere"))
    assert main(["sieve", "--limit", "30"]) == 0
    r = rows(out / "elsewhere" / "primes.csv")
    assert r[0] == ["n", "is_prime"]
    assert [int(n) for n, f in r[1:] if f == "1"] == oracles.primes_upto(30)


@pytest.mark.parametrize(
    "argv, files, header",
    [
        (["figure", "--which", "2", "--limit", "1e4", "--runs", "3", "--seed", "7"], ["fig2.csv"],
         "N,pi,Pi_mean,Pi_std,N_over_lnN,relerr_model,relerr_pnt"),
        (["figure", "--which", "3", "--limit", "1e4", "--runs", "3"], ["fig3.csv"], "N,eps_mean,sigma_x"),
        (["project", "--limit", "50"], ["proj.csv"], "p,q,weight"),
        (["clustering", "--limit", "1000"], ["ck.csv"], "k,mean_C,count"),
        (["meanfield", "--limit", "100"], ["pn.csv"], "n,P_recurrence,P_ode,one_over_ln_n"),
        (["erdoskac", "--limit", "1e4", "--runs", "2"], ["ek.csv"], "omega,pmf,empirical"),
        (["arith", "--limit", "20"], ["arith.csv"], "n,omega,tau1,sigma1"),
        (["network", "--limit", "100"], ["network.csv"], None),
        (["model", "run", "--limit", "1e3", "--runs", "2"], ["pi_curve.csv", "epsilon.csv"], "N,mean_Pi,std_Pi,pi_real,li"),
    ],
)
def test_schemas(out, argv, files, header):
    assert main(argv) == 0
    for f in files:
        assert (out / f).exists()
    if header:
        assert ",".join(rows(out / files[0])[0]) == header
    assert list(out.glob("*.manifest"))


def test_gaps_outputs(out, capsys):
    assert main(["gaps", "--limit", "1e6", "--ccdf-lo", "5e5"]) == 0
    assert capsys.readouterr().out.startswith("2c=")
    assert rows(out / "gap_series.csv")[0] == ["m", "n", "G", "G_norm", "G_rescaled"]
    assert rows(out / "gap_ccdf.csv")[0] == ["g", "empirical_tail", "theory_tail"]
    ex = rows(out / "exceed.csv")
    assert ex[0] == ["alpha", "N", "empirical", "predicted"]
    assert {r[0] for r in ex[1:]} == {"1.2", "1.4", "2", "3"}


def test_figure6_schema(out):
    assert main(["figure", "--which", "6", "--limit", "1e6"]) == 0
    assert rows(out / "fig6.csv")[0] == ["alpha", "N", "count_rescaled", "fit_slope"]


def test_arith_identity(out, capsys):
    assert main(["arith", "identity", "--limit", "1000"]) == 0
    text = capsys.readouterr().out
    assert "equal" in text and "DIFFERENT" not in text


def test_repeat_gives_identical_digests(out):
    argv = ["model", "run", "--limit", "2e4", "--runs", "3", "--seed", "5", "--record-edges"]
    assert main(argv) == 0
    first = digests(out / "model-run.manifest")
    assert main(argv) == 0
    assert digests(out / "model-run.manifest") == first
    assert main(argv + ["--workers", "2"]) == 0
    assert digests(out / "model-run.manifest") == first
    assert main(["model", "run", "--limit", "2e4", "--runs", "3", "--seed", "6", "--record-edges"]) == 0
    assert digests(out / "model-run.manifest") != first


def test_domain_error_exit(out, capsys):
    assert main(["pi", "--limit", "1"]) == 2
    assert "primenet:" in capsys.readouterr().err


def test_budget_exit(out, capsys):
    assert main(["project", "--limit", "1e9"]) == 3
    assert main(["network", "--limit", "1e10"]) == 3
    assert "budget" in capsys.readouterr().err


def test_usage_error_exit():
    with pytest.raises(SystemExit) as e:
        main(["pi", "--bogus"])
    assert e.value.code == 2
    proc = subprocess.run([sys.executable, "-m", "primenet.cli", "nosuch"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr


def test_figure2_small_is_fast(out):
    t0 = time.perf_counter()
    assert main(["figure", "--which", "2", "--limit", "1e4", "--runs", "10"]) == 0
    assert time.perf_counter() - t0 < 10
