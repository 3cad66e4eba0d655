"""Acceptance gate: one PASS/FAIL line per criterion, at the required tolerances."""

import math

import numpy as np
import pytest
from scipy import integrate

from corrbias import (
    AffineTowardOne,
    DensityParams,
    MCConfig,
    NegativeShrink,
    QuantileBias,
    UpwardShift,
    curve,
    empirical_mean_r,
    empirical_underestimation,
    ks_statistic,
    pearson_density,
    prob_underestimation,
    quantile_estimator,
    quantile_estimator_asymptotic,
    transform_apply,
    transform_inverse,
)

SEED = 20240101
TRIALS = 100_000
pytestmark = pytest.mark.slow


def test_criterion_1_normalization(acceptance_report):
    worst = 0.0
    for n in (3, 4, 5, 20, 100):
        for rho in (-0.9, -0.5, 0.0, 0.5, 0.9):
            params = DensityParams(n, rho)
            # r = sin(theta) removes the integrable endpoint singularity at n = 3
            f = lambda th: float(pearson_density(math.sin(th), params)) * math.cos(th)
            peak = math.asin(rho)
            total, _ = integrate.quad(f, -math.pi / 2, math.pi / 2, points=[peak],
                                      epsabs=1e-13, epsrel=1e-13, limit=400)
            worst = max(worst, abs(total - 1.0))
    ok = worst <= 1e-8
    acceptance_report(1, "density normalization", ok, f"max |integral - 1| = {worst:.2e} (tol 1e-08)")
    assert ok


def test_criterion_2_uniform_case(acceptance_report):
    r = np.linspace(-1.0, 1.0, 101)
    worst = float(np.max(np.abs(pearson_density(r, DensityParams(4, 0.0)) - 0.5)))
    ok = worst <= 1e-12
    acceptance_report(2, "uniform density at n=4, rho=0", ok, f"max deviation = {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_3_constant_underestimation(acceptance_report):
    rhos = np.linspace(-0.95, 0.95, 21)
    worst = 0.0
    for alpha in (0.5, 0.9, 0.95, 0.99):
        for n in (5, 20, 100):
            t = QuantileBias(alpha, n)
            for rho in rhos:
                worst = max(worst, abs(prob_underestimation(t, float(rho), n) - (1 - alpha)))
    ok = worst <= 1e-6
    acceptance_report(3, "analytic underestimation equals 1 - alpha", ok,
                      f"max error over 252 cells = {worst:.2e} (tol 1e-06)")
    assert ok


def test_criterion_4_monte_carlo_underestimation(acceptance_report):
    t = QuantileBias(0.95, 20)
    estimates = {rho: empirical_underestimation(t, MCConfig(TRIALS, 20, rho, seed=SEED)).estimate
                 for rho in (-0.9, -0.5, 0.0, 0.5, 0.9)}
    worst = max(abs(p - 0.05) for p in estimates.values())
    ok = worst <= 0.003
    cells = ", ".join(f"{rho:g}:{p:.4f}" for rho, p in estimates.items())
    acceptance_report(4, "simulated underestimation at alpha=0.95", ok,
                      f"{cells}; max |p - 0.05| = {worst:.4f} (tol 0.003)")
    assert ok


def test_criterion_5_mean_bias(acceptance_report):
    rep = empirical_mean_r(MCConfig(TRIALS, 20, 0.5, seed=SEED))
    dev = abs(rep.estimate - 0.490625)
    ok = dev <= 0.004
    acceptance_report(5, "mean of r at rho=0.5, n=20", ok,
                      f"mean = {rep.estimate:.5f}, |mean - 0.490625| = {dev:.5f} (tol 0.004)")
    assert ok


def test_criterion_6_ks(acceptance_report):
    crit = 1.63 / math.sqrt(TRIALS)
    stats = {(n, rho): ks_statistic(MCConfig(TRIALS, n, rho, seed=SEED))
             for n, rho in ((20, 0.0), (10, 0.8), (4, 0.0))}
    ok = all(d < crit for d in stats.values())
    cells = ", ".join(f"(n={n},rho={rho:g}):{d:.4f}" for (n, rho), d in stats.items())
    acceptance_report(6, "Kolmogorov-Smirnov fit", ok, f"{cells} (critical {crit:.4f})")
    assert ok


def test_criterion_7_large_sample_agreement(acceptance_report):
    grid = np.linspace(-1.0, 1.0, 41)
    gaps = {}
    for n in (20, 100):
        gaps[n] = max(abs(quantile_estimator(r, 0.95, n) - quantile_estimator_asymptotic(r, 0.95, n))
                      for r in grid)
    ok = gaps[20] <= 0.03 and gaps[100] <= 0.008 and gaps[100] < gaps[20]
    acceptance_report(7, "large-sample approximation gap", ok,
                      f"n=20 gap {gaps[20]:.5f} (bound 0.03), n=100 gap {gaps[100]:.5f} "
                      f"(bound 0.008), decreasing={gaps[100] < gaps[20]}")
    assert ok


def test_criterion_8_curve_shapes(acceptance_report):
    grid = np.linspace(-0.95, 0.95, 39)
    failures = []

    affine = np.array([curve(AffineTowardOne(a), 20, grid).prob
                       for a in (0.0, 0.01, 0.05, 0.1, 0.238, 0.5)])
    if not np.all(np.diff(affine, axis=0) <= 1e-10):
        failures.append("affine ordering")

    bs = (0.0, 0.01, 0.05, 0.1, 0.5, 0.95)
    pos = grid[grid >= 0]
    shrink = np.array([curve(NegativeShrink(b), 20, pos).prob for b in bs])
    if np.max(np.abs(shrink - shrink[0])) > 1e-10:
        failures.append("shrink coincidence on rho >= 0")
    step = curve(NegativeShrink(0.95), 20, [-0.05, 0.0]).prob
    # -0.05 / (1 - 0.95) rounds just above -1, so the left cell is 0 only to within 1e-10
    if not (step[0] <= 1e-10 and abs(step[1] - 0.5) <= 1e-10):
        failures.append("shrink step at b=0.95")

    shift = np.array([curve(UpwardShift(c), 20, grid).prob for c in (0.0, 0.01, 0.1, 0.21, 0.3)])
    if not np.all(np.diff(shift, axis=0) <= 1e-10):
        failures.append("shift ordering")

    r_grid = np.linspace(-1.0, 1.0, 41)
    alphas = (0.5, 0.95, 0.99, 0.999)
    g = np.array([[quantile_estimator(r, a, 20) for r in r_grid] for a in alphas])
    if not np.all(np.diff(g, axis=1) >= -1e-6):
        failures.append("G monotone in r_hat")
    if not np.all(np.diff(g[:, 1:-1], axis=0) >= -1e-6):
        failures.append("G monotone in alpha")
    if not (np.all(g[:, 0] == -1.0) and np.all(g[:, -1] == 1.0)):
        failures.append("G fixes the boundary")

    ok = not failures
    acceptance_report(8, "curve shape properties", ok,
                      "all shape assertions hold" if ok else "violated: " + ", ".join(failures))
    assert ok


def test_criterion_9_round_trip(acceptance_report):
    grid = np.linspace(-1.0, 1.0, 41)
    transforms = (
        [AffineTowardOne(a) for a in (0.0, 0.01, 0.05, 0.1, 0.23, 0.238, 0.5)]
        + [NegativeShrink(b) for b in (0.0, 0.01, 0.05, 0.1, 0.5, 0.7, 0.95)]
        + [UpwardShift(c) for c in (0.0, 0.01, 0.1, 0.21, 0.3)]
        + [UpwardShift(0.21, 1e-3)]
        + [QuantileBias(a, n) for a in (0.5, 0.9, 0.95, 0.99) for n in (5, 20, 100)]
    )
    worst, where = 0.0, None
    for t in transforms:
        for r in grid:
            err = abs(transform_inverse(t, transform_apply(t, float(r))) - r)
            if err > worst:
                worst, where = err, (t, float(r))
    ok = worst <= 2e-10
    acceptance_report(9, "inverse after apply is the identity", ok,
                      f"{len(transforms)} transforms, max error = {worst:.2e} (tol 2e-10)"
                      + ("" if ok else f" at {where}"))
    assert ok
