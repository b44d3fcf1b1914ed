"""Smoke tests for the compiled extension and the command line tool."""

import math
import os
import subprocess
import sys

import pytest

import minent as me


def test_version():
    assert me.__version__


def test_entropy_values():
    assert me.entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-13)
    assert me.entropy([0.9, 0.1]) == pytest.approx(0.468995593589, abs=1e-11)
    assert me.variance([0.9, 0.1]) == pytest.approx(0.904358206329, abs=1e-11)
    assert me.normal_quantile(0.975) == pytest.approx(1.959963985, abs=1e-8)


def test_solver_against_known_instance():
    sol = me.solve_qp([0.9, 0.1], 0.1)
    assert 2 ** sol.log2_f == pytest.approx(1.9022613208084, abs=1e-9)
    assert sol.achieved_overlap == pytest.approx(math.sqrt(0.99), abs=1e-12)
    assert me.hmin_partial([0.9, 0.1], 0.1) == pytest.approx(-0.927715448, abs=1e-8)

    # uniform closed form
    assert 2 ** me.solve_qp([0.25] * 4, 0.3).log2_f == pytest.approx(4 * 0.91, abs=1e-12)

    value, g = me.qp_oracle([0.9, 0.1], 0.1)
    assert value == pytest.approx(2 ** sol.log2_f, abs=1e-8)
    assert g[0] == pytest.approx(1.0, abs=1e-9)


def test_certificate():
    cert = me.build_certificate([0.3, 0.3, 0.2, 0.2], 0.25)
    assert cert.feasible
    assert cert.gap_rel <= 1e-8
    assert cert.max_dual_eig <= 1e-9


def test_spectrum_quantities():
    sp = me.Spectrum.from_probs([0.9, 0.1])
    assert 2 ** sp.beta(0.95) == pytest.approx(1.5, abs=1e-12)
    assert sp.e_gamma(math.log2(0.5)) == pytest.approx(0.4, abs=1e-12)
    assert sp.d_lower(0.2) == pytest.approx(math.log2(0.1), abs=1e-12)

    big = me.Spectrum.from_iid([0.9, 0.1], 1000)
    eps = 0.1
    target = math.sqrt(1 - eps * eps)
    f = me.solve_qp_iid([0.9, 0.1], 1000, eps).log2_f
    assert f <= big.beta(target) + 1e-9
    eta = me.eta_diagnostic([0.9, 0.1], 1000, eps)
    assert f >= big.beta(target - eta) - 1e-9


def test_classical_smoothing():
    counter = [[0.25, 0.25], [0.0, 0.5]]
    partial = me.hmin_purified_classical(counter, 0.1, me.SmoothMode.PARTIAL)
    global_ = me.hmin_purified_classical(counter, 0.1, me.SmoothMode.GLOBAL)
    assert partial - global_ > 1e-3

    assert me.hmin_trace_relaxed(counter, 0.1) == pytest.approx(0.65, abs=1e-12)
    assert me.hmin_trace_lp(counter, 0.1) == pytest.approx(0.65, abs=1e-9)

    assert me.imax_partial(counter, 0.1) == pytest.approx(me.imax_global(counter, 0.1)[0], abs=1e-9)
    assert me.imax_partial_witness_residual(counter, 0.1) <= 1e-8


def test_curves_ordering():
    rows = me.compression_curves(n_min=100, n_max=400, n_step=100)
    assert len(rows) == 4
    for r in rows:
        assert r.qp_converse <= r.direct_achiev + 1e-12
        assert r.direct_achiev <= r.is_achiev + 1e-12
        assert r.qp_converse > r.dl_converse


def test_verify_suite_roundtrip():
    rep = me.verify_suite("certificates", seed=11, trials=20)
    assert rep["passed"]
    assert rep["instances"] == 20


# ---------------------------------------------------------------------------
# CLI smoke tests (only when the build exposes the binary path)
# ---------------------------------------------------------------------------

CLI = os.environ.get("MINENT_CLI")
needs_cli = pytest.mark.skipif(not CLI, reason="MINENT_CLI not set")


def run_cli(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


@needs_cli
def test_cli_hmin():
    out = run_cli("hmin", "--dist", "0.9,0.1", "--eps", "0.1", "--certify")
    assert out.returncode == 0
    assert "-Hmin (log2 f)   = 0.927715448269" in out.stdout
    assert "certificate      = ok" in out.stdout


@needs_cli
def test_cli_hmin_large_n_fast():
    out = run_cli("hmin", "--delta", "0.9", "--eps", "0.1", "--n", "1000", timeout=1.0)
    assert out.returncode == 0
    assert "-Hmin (log2 f)" in out.stdout


@needs_cli
def test_cli_usage_errors():
    assert run_cli("hmin", "--eps", "0.1").returncode == 2
    assert run_cli("hmin", "--dist", "0.9,0.1").returncode == 2  # missing --eps
    assert run_cli("nonsense").returncode == 2


@needs_cli
def test_cli_figure1_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["figure1", "--nmin", "50", "--nmax", "200", "--step", "50"]
    assert run_cli(*args, "--csv", str(a)).returncode == 0
    assert run_cli(*args, "--csv", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()
    header = a.read_text().splitlines()[0]
    assert header == "n,qp_converse,dl_converse,is_achiev,direct_achiev,second_order"
    assert len(a.read_text().splitlines()) == 5

    dat = tmp_path / "c.dat"
    assert run_cli(*args, "--csv", str(a), "--dat", str(dat)).returncode == 0
    first = dat.read_text().splitlines()[0].split()
    assert first[0] == "50"
    assert len(first) == 6


@needs_cli
def test_cli_figure1_unwritable():
    out = run_cli("figure1", "--nmin", "50", "--nmax", "50", "--csv", "/nonexistent/x.csv")
    assert out.returncode == 1


@needs_cli
def test_cli_classical(tmp_path):
    joint = tmp_path / "joint.csv"
    joint.write_text("0.25,0.25\n0,0.5\n")
    out = run_cli("classical", "--joint", str(joint), "--eps", "0.1", "--metric", "trace")
    assert out.returncode == 0
    assert "lambda = 0.65" in out.stdout

    out2 = run_cli("classical", "--joint", str(joint), "--eps", "0.1", "--metric", "purified",
                   "--mode", "global")
    assert out2.returncode == 0
    assert "lambda = 0.693808" in out2.stdout


@needs_cli
def test_cli_config_precedence(tmp_path):
    cfg = tmp_path / "m.toml"
    cfg.write_text('[hmin]\ndist="0.8,0.2"\neps=0.2\n')
    from_config = run_cli("hmin", "--config", str(cfg))
    assert from_config.returncode == 0
    assert "-Hmin (log2 f)   = 0.854525627879" in from_config.stdout
    flag_wins = run_cli("hmin", "--config", str(cfg), "--eps", "0.1")
    explicit = run_cli("hmin", "--dist", "0.8,0.2", "--eps", "0.1")
    assert flag_wins.stdout == explicit.stdout


@needs_cli
def test_cli_verify_exit_codes():
    ok = run_cli("verify", "--suite", "certificates", "--trials", "20", "--seed", "42")
    assert ok.returncode == 0
    assert "[PASS] certificates" in ok.stdout
    bad = run_cli("verify", "--suite", "doesnotexist")
    assert bad.returncode == 1
