"""Curvature and convexity of maximum-likelihood error rates in Gaussian noise.

Thin wrapper over the compiled core. The JSON-producing calls are mirrored
here as dict-returning helpers.
"""

import json as _json

from ._core import (
    Constellation,
    CurvatureEstimate,
    Estimate,
    __version__,
    ber,
    ber_d2,
    build_standard,
    calibrate_gamma0,
    chi_square_floor,
    classify,
    conjecture_json,
    constellation_from_json,
    constellation_to_json,
    jensen_json,
    normalize,
    partition_id,
    pep,
    pep_d2,
    q_function,
    sampler_id,
    ser_avg,
    ser_avg_d2,
    ser_point,
    ser_point_d2,
    sphere_json,
    threads_env_var,
    thresholds_json,
)

__all__ = [
    "Constellation",
    "CurvatureEstimate",
    "Estimate",
    "__version__",
    "ber",
    "ber_d2",
    "build_standard",
    "calibrate_gamma0",
    "chi_square_floor",
    "classify",
    "conjecture",
    "conjecture_json",
    "constellation_from_json",
    "constellation_to_json",
    "jensen",
    "jensen_json",
    "normalize",
    "partition_id",
    "pep",
    "pep_d2",
    "q_function",
    "sampler_id",
    "ser_avg",
    "ser_avg_d2",
    "ser_point",
    "ser_point_d2",
    "sphere_hardening",
    "sphere_json",
    "threads_env_var",
    "thresholds",
    "thresholds_json",
]


def thresholds(c):
    """Certified convexity thresholds for a constellation, as a dict."""
    return _json.loads(thresholds_json(c))


def sphere_hardening(c, noise_power, eps):
    """Hardened-sphere enclosure report, as a dict."""
    return _json.loads(sphere_json(c, noise_power, eps))


def jensen(c, metric, axis, a, b, lam=0.5, samples=100000, seed=1, i=-1, j=-1):
    """Time/power sharing probe inside a certified convex window, as a dict."""
    return _json.loads(jensen_json(c, metric, axis, a, b, lam, samples, seed, i, j))


def conjecture(c, gamma0, grid, samples=100000, seed=1):
    """Curvature signs of SER/BER on a grid above gamma0, as a dict."""
    return _json.loads(conjecture_json(c, gamma0, list(grid), samples, seed))
