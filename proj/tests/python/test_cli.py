import os
import subprocess

import pytest

CLI = os.environ.get("SPARSETLS_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="SPARSETLS_CLI not set")


def run(*args, cwd=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, cwd=cwd)


def test_bench_smoke(tmp_path):
    r = run("bench", "--scenario", "s1", "--trials", "3", "--seed", "1", "--out", str(tmp_path))
    assert r.returncode == 0, r.stderr
    lines = (tmp_path / "bench.csv").read_text().splitlines()
    assert lines[0] == "scenario,lambda,algo,mean_iter_ns,mean_iter_flops,ratio_vs_pg"
    assert len(lines) > 1


def test_solve_prints_summary():
    r = run("solve", "--scenario", "s1", "--lambda", "0.02", "--seed", "3")
    assert r.returncode == 0, r.stderr
    out = r.stdout.splitlines()
    assert len(out) == 2
    assert out[0].startswith("algorithm=pg iterations=356 sq_error=")
    assert out[1].startswith("algorithm=adcd iterations=356 sq_error=")


def test_usage_errors_exit_2():
    assert run("solve", "--scenario", "s1").returncode == 2
    assert run("solve", "--lambda", "0.02", "--bogus").returncode == 2
    assert run("solve", "--lambda", "-1").returncode == 2


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("scenario = s1\nlambda = 0.05\nseed = 9\nalgo = pg\n")
    a = run("solve", "--config", str(cfg))
    b = run("solve", "--scenario", "s1", "--lambda", "0.05", "--seed", "9", "--algo", "pg")
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout
    c = run("solve", "--config", str(cfg), "--lambda", "0.02")
    assert c.returncode == 0, c.stderr
    assert "iterations=356" in c.stdout


def test_generate_then_solve_instance(tmp_path):
    r = run("generate", "--scenario", "s1", "--seed", "4", "--trial", "2", "--out", str(tmp_path))
    assert r.returncode == 0, r.stderr
    path = tmp_path / "instance_s1_seed4_trial2.txt"
    assert path.exists()
    direct = run("solve", "--scenario", "s1", "--seed", "4", "--trial", "2", "--lambda", "0.02")
    loaded = run("solve", "--instance", str(path), "--lambda", "0.02")
    assert loaded.returncode == 0, loaded.stderr
    assert loaded.stdout == direct.stdout


def test_sweeps_are_deterministic(tmp_path):
    texts = []
    for name, threads in (("a", "1"), ("b", "3")):
        out = tmp_path / name
        r = run("sweep-lambda", "--trials", "4", "--seed", "42", "--lambdas", "0.01,0.1",
                "--threads", threads, "--out", str(out))
        assert r.returncode == 0, r.stderr
        texts.append((out / "lambda_sweep.csv").read_text())
    assert texts[0] == texts[1]
    assert texts[0].startswith("scenario,algorithm,lambda,iterations,mean_sq_error,")
    assert len(texts[0].splitlines()) == 5


def test_xi_sweep_and_trace_headers(tmp_path):
    r = run("sweep-xi", "--trials", "2", "--xis", "0.001,0.01", "--out", str(tmp_path))
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "xi_sweep.csv").read_text().splitlines()[0] == "scenario,algorithm,xi,mean_sq_error"
    r = run("trace", "--trials", "2", "--lambda", "0.1", "--out", str(tmp_path))
    assert r.returncode == 0, r.stderr
    header = (tmp_path / "trace.csv").read_text().splitlines()[0]
    assert header == "scenario,algorithm,iteration,mean_sq_error,mean_cost"
