"""Smoke tests for the python bindings."""

import math

import pytest

import oblab


def test_laplace_median_and_determinism():
    r1, r2 = oblab.Rng(7), oblab.Rng(7)
    xs = [oblab.laplace(1.0, r1) for _ in range(100)]
    ys = [oblab.laplace(1.0, r2) for _ in range(100)]
    assert xs == ys
    med = sorted(oblab.laplace(1.0, oblab.Rng(i)) for i in range(2001))[1000]
    assert abs(med) < 0.1


def test_truncated_laplace_bound():
    r = oblab.Rng(3)
    for _ in range(500):
        assert abs(oblab.truncated_laplace(2.0, 0.5, r)) <= 0.5


def test_search_matches_sorted_rank():
    values = [float(v) for v in range(1, 513)]
    out = oblab.search(values, 100.5, epsilon=4.0, beta=0.01, seed=11, exact=True)
    assert out["index"] == 100
    assert out["probes"] > 0
    assert out["iterations"] <= math.ceil(2.5 * math.log2(len(values)))


def test_search_boundaries():
    values = [float(v) for v in range(1, 129)]
    assert oblab.search(values, 0.0, 4.0, 0.01, seed=1, exact=True)["index"] == 0
    assert oblab.search(values, 1e9, 4.0, 0.01, seed=1, exact=True)["index"] == 128


def test_prefix_sum_toy():
    out = oblab.prefix_sum([1.0, 2.0, 3.0, 4.0], 2.5, 1.0, 0.05, 0.2, seed=5)
    assert out["index"] == 2
    assert out["sum"] == 3.0
    assert out["index"] <= out["padded_to"] <= 4


def test_locate_existence():
    data = [0.0] * 63 + [5.0]
    hit = oblab.locate(data, 4.0, 6.0, epsilon=1.0, delta=0.01, seed=2)
    miss = oblab.locate(data, 7.0, 9.0, epsilon=1.0, delta=0.01, seed=2)
    assert hit["found"] is True
    assert miss["found"] is False
    assert miss["probes"] == 64 // 2 + 64


def test_locate_rejects_bad_params():
    with pytest.raises(ValueError):
        oblab.locate([1.0] * 8, 0.0, 1.0, epsilon=-1.0, delta=0.01, seed=1)


def test_multisearch_session():
    n = 64
    ms = oblab.MultiSearch([float(i + 1) for i in range(n)], epsilon=1.0, beta=0.05)
    for cutoff in range(1, n + 1):
        rep = ms.query(cutoff + 0.5, seed=cutoff)
        if ms.all_searches_correct:
            assert rep["answer"] == cutoff * (cutoff + 1) / 2
    assert ms.executions <= math.isqrt(n) + 1
    assert ms.epsilon_spent <= 1.0
    assert ms.migrated == n


def test_tester_accepts_bipartite():
    edges = [(u, v) for u in range(16) for v in range(16, 32)]
    res = oblab.tester(32, edges, epsilon=1.0, delta=0.05, sample_size=2, seed=3)
    assert res["accept"] is True
    assert res["base_accepts"] == res["rounds"]


def test_audits_report_small_epsilon():
    est = oblab.audit_locate(64, 1.0, 0.01, trials=2000, seed=4)
    assert est["eps_hat"] <= 0.5
    assert est["ci_low"] <= est["eps_hat"] <= est["ci_high"]
    est = oblab.audit_search(128, 1.0, 0.005, 0.0, trials=1500, seed=5)
    assert est["ci_high"] <= 1.2


def test_lowerbound_demo_smoke():
    rep = oblab.lowerbound_demo(99, 6, trials=5000, seed=6)
    assert rep["adv_h1"] > rep["adv_h2"]
    assert rep["ratio"] > math.exp(2.0)


def test_graph_fixtures():
    assert len(oblab.cycle_edges(9)) == 9
    assert len(oblab.triangles_edges(9)) == 9
    with pytest.raises(ValueError):
        oblab.triangles_edges(10)
