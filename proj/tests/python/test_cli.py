"""End-to-end checks of the oblab command line tool."""

import json
import os
import subprocess

import pytest

OBLAB = os.environ.get("OBLAB_BIN", "oblab")


def run(*args, env=None, check=True):
    full_env = dict(os.environ)
    full_env.pop("OBLAB_SEED", None)
    if env:
        full_env.update(env)
    proc = subprocess.run([OBLAB, *args], capture_output=True, text=True, env=full_env)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} failed rc={proc.returncode}: {proc.stderr}")
    return proc


@pytest.fixture(scope="module")
def data_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "sorted.json"
    path.write_text(json.dumps([float(v) for v in range(1, 65)]))
    return str(path)


def test_search_bench_row_count_and_determinism():
    args = ["search-bench", "--n", "256", "--epsilon", "4", "--beta", "0.01",
            "--trials", "50", "--seed", "42"]
    first = run(*args).stdout
    lines = first.strip().split("\n")
    assert lines[0] == "trial,correct,iterations,probes"
    assert len(lines) == 51
    assert run(*args).stdout == first
    # Worker fan-out must not change the merged output.
    assert run(*args, "--parallel", "3").stdout == first


def test_env_seed_overrides_flag():
    args = ["search-bench", "--n", "512", "--epsilon", "8", "--beta", "0.01",
            "--trials", "5", "--seed", "1"]
    base = run(*args).stdout
    overridden = run(*args, env={"OBLAB_SEED": "999"}).stdout
    assert base != overridden
    assert overridden == run(*args, env={"OBLAB_SEED": "999"}).stdout


def test_prefix_json_and_trace_dump(data_file, tmp_path):
    trace_path = str(tmp_path / "trace.csv")
    out = run("prefix", "--file", data_file, "--a", "10.5", "--epsilon", "4",
              "--delta", "0.01", "--beta", "0.01", "--seed", "7", "--exact",
              "--trace-out", trace_path, "--projection", "intervals").stdout
    doc = json.loads(out)
    assert doc["index"] == 10
    assert doc["sum"] == 55.0
    assert doc["projection"]["name"] == "intervals"
    assert all(isinstance(t, int) for t in doc["projection"]["tokens"])
    with open(trace_path) as fh:
        first_line = fh.readline().strip()
    step, kind, addr = first_line.split(",")
    assert step == "0" and kind in ("R", "W") and addr.isdigit()


def test_verify_reports_epsilon_estimate():
    out = run("verify", "--target", "locate", "--n", "64", "--epsilon", "1",
              "--delta", "0.01", "--trials", "2000", "--seed", "3").stdout
    doc = json.loads(out)
    assert set(doc) >= {"eps_hat", "ci_low", "ci_high", "delta_used", "trials"}
    assert doc["eps_hat"] is not None and doc["eps_hat"] <= 0.5


def test_multisearch_bench_budget_column(data_file):
    out = run("multisearch-bench", "--n", "64", "--epsilon", "1", "--beta", "0.05",
              "--queries", "random", "--count", "20", "--seed", "8").stdout
    lines = out.strip().split("\n")
    assert lines[0] == "query,answer,oracle,eps_spent,search_invoked,M,t"
    assert len(lines) == 21
    spent = sum(float(row.split(",")[3]) for row in lines[1:])
    assert spent <= 1.0


def test_schema_flag():
    out = run("search-bench", "--epsilon", "1", "--beta", "0.1", "--schema").stdout
    doc = json.loads(out)
    assert doc["format"] == "csv"


def test_validation_errors_exit_2():
    assert run("search-bench", "--n", "16", "--beta", "0.1", check=False).returncode == 2
    assert run("nonsense-cmd", check=False).returncode == 2
    proc = run("search-bench", "--n", "16", "--epsilon", "-3", "--beta", "0.1",
               "--trials", "2", check=False)
    assert proc.returncode == 2
    assert "epsilon" in proc.stderr


def test_lowerbound_demo_json():
    out = run("lowerbound-demo", "--n", "9", "--q", "3", "--trials", "500",
              "--seed", "5").stdout
    doc = json.loads(out)
    assert doc["tester"] == "naive"
    assert doc["trials"] == 500


def test_tester_bench_graph_fixture(tmp_path):
    # An even cycle is bipartite: the one-sided tester must accept every trial.
    n = 32
    fixture = tmp_path / "cycle32.json"
    fixture.write_text(json.dumps(
        {"n": n, "edges": [[v, (v + 1) % n] for v in range(n)]}))
    out = run("tester-bench", "--n", str(n), "--epsilon", "1", "--delta", "0.05",
              "--trials", "10", "--sample-size", "2", "--fixture", str(fixture),
              "--seed", "4", "--parallel", "2").stdout
    rows = out.strip().split("\n")[1:]
    assert len(rows) == 10
    assert all(row.split(",")[1] == "1" for row in rows)


def test_parallel_worker_errors_map_to_exit_2(tmp_path):
    # Undersized graph for the removal schedule, thrown inside a worker.
    fixture = tmp_path / "tiny.json"
    fixture.write_text(json.dumps({"n": 6, "edges": [[0, 1]]}))
    proc = run("tester-bench", "--n", "6", "--epsilon", "1", "--delta", "0.05",
               "--trials", "4", "--sample-size", "2", "--fixture", str(fixture),
               "--parallel", "2", check=False)
    assert proc.returncode == 2
    assert "too small" in proc.stderr


def test_prefix_unsorted_data_is_a_runtime_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([1.0, 5.0, 3.0, 7.0]))
    proc = run("prefix", "--file", str(bad), "--a", "4", "--epsilon", "1",
               "--delta", "0.05", "--beta", "0.2", "--seed", "1", check=False)
    assert proc.returncode == 1
    assert "sorted" in proc.stderr
