import math

import pytest

import rsg


def test_golden_ratio_constants():
    assert abs(rsg.solve_p_C(2.0) - (3 - math.sqrt(5)) / 2) < 1e-12
    assert abs(rsg.threshold_constants(2.0).M_C - (1 + math.sqrt(5)) / 2) < 1e-10


def test_cap_threshold_round_trip():
    t = rsg.solve_cap_threshold(2.0, 0.25)
    assert abs(t.c - math.sqrt(2) / 2) < 1e-9
    u = rsg.solve_cap_threshold(500.0, 0.3)
    assert abs(rsg.cap_probability(500.0, u.cutoff()) - 0.3) < 1e-12


def test_domain_errors_map_to_value_error():
    with pytest.raises(ValueError):
        rsg.solve_cap_threshold(10.0, 0.7)


def test_estimate_is_deterministic():
    a = rsg.estimate_clique_prob(100.0, 0.38, 3, "red", 20000, seed=4, workers=2)
    b = rsg.estimate_clique_prob(100.0, 0.38, 3, "red", 20000, seed=4, workers=2)
    assert a == b
    assert a["value"] < 0.38**3


def test_pentagon_certificate():
    r = rsg.certify(1.0, 3, 50, 0.5, 5, attempts=10000, seed=7)
    assert r["found"] and r["verified"]
    assert len(r["points"]) == 5


def test_baseline_c1():
    b = rsg.erdos_bound(1.0, 20)
    assert b.n_opt == 5814
    assert b.sandwich


def test_quick_checks():
    res = rsg.verify(only=[1, 2, 3])
    assert [r["passed"] for r in res] == [True, True, True]
