"""Smoke tests for the python bindings."""

import math

import noiselab


def test_families_and_eval():
    f = noiselab.tribes(3, 4)
    assert f.arity == 12
    assert f.monotone
    assert f.check_monotone()
    assert f.eval([1, 1, 1, 1] + [0] * 8)
    assert not f.eval([0] * 12)

    g = noiselab.recmaj(3, 2)
    assert g.arity == 9
    comp = noiselab.compose(g, noiselab.tribes(1, 2))
    assert comp.arity == 18


def test_spectrum_parseval_and_dictator():
    dictator = noiselab.tribes(1, 1)
    coeffs = noiselab.spectrum(dictator, 0.5)
    assert coeffs[0] == 0.5
    assert coeffs[1] == 0.5

    f = noiselab.tribes(2, 3)
    for p in (0.2, 0.5, 0.8):
        coeffs = noiselab.spectrum(f, p)
        mean = coeffs[0]
        assert abs(sum(c * c for c in coeffs) - mean) < 1e-12


def test_analytic_recursions():
    for eps in (0.1, 0.5, 0.9):
        assert noiselab.recmaj_conditioned_prob(3, 20, eps) == 1 - eps / 2
    assert noiselab.recmaj_conditioned_prob(5, 40, 0.5) > 0.999
    assert noiselab.iterate_h(0.5, 100) == 0.5
    assert noiselab.iterate_h_offset(math.exp(5000 * math.log(0.89)), 5050) > 0.99

    p = noiselab.tribes_bias_solve(5, 3, True, 0.5)
    assert abs(noiselab.tribes_prob_one(5, 3, True, p) - 0.5) < 1e-10


def test_sampling_is_deterministic():
    a = noiselab.sample_bits(1000, 0.3, master_seed=7, stream_id=1)
    b = noiselab.sample_bits(1000, 0.3, master_seed=7, stream_id=1)
    c = noiselab.sample_bits(1000, 0.3, master_seed=7, stream_id=2)
    assert a == b
    assert a != c
    assert 0.2 < sum(a) / len(a) < 0.4


def test_noise_operator():
    bits = noiselab.sample_bits(2000, 0.5, master_seed=1)
    same = noiselab.noise_bits(bits, 0.5, 0.0, master_seed=2)
    assert same == bits
    noised = noiselab.noise_bits(bits, 0.5, 0.4, master_seed=2)
    flips = sum(x != y for x, y in zip(bits, noised))
    assert 0.1 < flips / len(bits) < 0.3  # eps/2 = 0.2

    omega, noised = noiselab.conditioned_pair_bits(64, [0, 1, 2, 3], 0.5, 0.2, master_seed=5)
    assert omega[:4] == [1, 1, 1, 1]
    assert len(noised) == 64


def test_witnesses_and_sns():
    f = noiselab.tribes(2, 3)
    ones = noiselab.enumerate_witnesses(f, "one")
    assert sorted(ones) == [[0, 1, 2], [3, 4, 5]]

    rep = noiselab.sns_gap(f, 0.5, 0.4, samples=20000, seed=3)
    assert len(rep["gaps"]) == 2
    assert rep["max_gap"] >= -4 * rep["max_gap_stderr"]


def test_estimators_match_exact():
    f = noiselab.tribes(3, 3)
    exact = noiselab.noise_covariance_exact(f, 0.5, 0.3)
    est = noiselab.estimate_covariance(f, 0.5, 0.3, samples=100000, seed=11)
    assert abs(est["value"] - exact) < 4 * est["stderr"]

    rows = noiselab.sweep(f, 0.5, [0.1, 0.5, 0.9], samples=20000, seed=4)
    assert [r["eps"] for r in rows] == [0.1, 0.5, 0.9]
    assert rows[0]["correlation"] > rows[2]["correlation"]


def test_worker_invariance():
    f = noiselab.tribes(4, 3)
    one = noiselab.estimate_covariance(f, 0.5, 0.2, samples=40000, seed=9, workers=1)
    many = noiselab.estimate_covariance(f, 0.5, 0.2, samples=40000, seed=9, workers=8)
    assert one["value"] == many["value"]
    assert one["stderr"] == many["stderr"]


def test_graph_side():
    est = noiselab.graph_estimate("min-degree", n=500, k=1,
                                  p=math.log(500) / 500, eps=0.02,
                                  samples=2000, seed=5)
    assert 0.0 < est["prob_one"] < 1.0
    assert est["conditional"] > est["prob_one"]  # tiny noise: stable regime

    flags = noiselab.balanced("clique", 5)
    assert flags["strictly_balanced"]
    flags = noiselab.balanced("disjoint-edges", 2)
    assert flags["balanced"] and not flags["strictly_balanced"]

    assert abs(noiselab.expected_cliques(10, 2, 0.5) - 22.5) < 1e-9
    p1 = noiselab.clique_bias_for_mean(50, 4, 1.0)
    assert abs(noiselab.expected_cliques(50, 4, p1) - 1.0) < 1e-9

    tv = noiselab.binomial_poisson_tv(5461, 2.0 ** -12)
    assert tv < 0.01

    giant = noiselab.giant_robustness(3000, 10.0, 0.0, 1, samples=20, seed=2)
    assert giant["conditional"] == 1.0

    assert noiselab.edge_pair(10, noiselab.edge_index(10, 3, 7)) == (3, 7)


def test_cli_round_trip(tmp_path):
    out = tmp_path / "report.json"
    rc = noiselab.run_cli(["balanced", "--two-triangles-path", "4", "--out", str(out)])
    assert rc == 0
    text = out.read_text()
    assert '"strictly_balanced": true' in text
