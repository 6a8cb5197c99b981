import math

import convexity_atlas as ca


def test_version_and_stream_ids():
    assert ca.__version__ == "1.0.0"
    assert ca.sampler_id == "splitmix64-counter/box-muller-cos-v1"
    assert ca.partition_id == "block65536-ordered"
    assert ca.threads_env_var == "CONVEXITY_ATLAS_THREADS"


def test_q_function_anchor():
    assert ca.q_function(0.0) == 0.5


def test_ser_matches_the_closed_form():
    c = ca.build_standard("bpsk")
    est = ca.ser_avg(c, snr=4.0, samples=100000, seed=1)
    want = 0.022750131948179195
    assert abs(est.mean - want) <= 3.0 * est.std_err


def test_estimates_are_bitwise_deterministic():
    c = ca.build_standard("qam16")
    a = ca.ser_avg(c, snr=8.0, samples=50000, seed=7)
    b = ca.ser_avg(c, snr=8.0, samples=50000, seed=7)
    assert a.mean == b.mean
    assert a.std_err == b.std_err
    assert ca.ser_avg(c, snr=8.0, samples=50000, seed=8).mean != a.mean


def test_thresholds_round_trip():
    th = ca.thresholds(ca.build_standard("bpsk"))
    assert th["dim"] == 1
    assert th["ser_snr_high"] == 1.0 + math.sqrt(2.0)
    assert th["per_point"][0]["snr_low"] == "vacuous"


def test_classify_average_rate_low_dim():
    verdict, certified, basis = ca.classify(ca.build_standard("qam16"), "ser", "snr", 0.5)
    assert verdict == "convex"
    assert certified
    assert basis


def test_chi_square_floor_dimension_eight():
    est = ca.chi_square_floor(8, samples=100000, seed=1)
    assert abs(est.mean - 0.151203882776648) < 0.01


def test_curvature_positive_at_high_snr():
    c = ca.build_standard("bpsk")
    d2 = ca.ser_avg_d2(c, "snr", 2.0, samples=200000, seed=1)
    assert d2.verdict() == "+"
    assert d2.axis == "snr"
