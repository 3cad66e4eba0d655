"""Named validation scenarios comparing analytic values with checks.

Each scenario returns a list of :class:`Cell`; a scenario passes when every
cell passes.
"""

from dataclasses import dataclass
import math

import numpy as np

from .density import DEFAULT_CONFIG, DensityParams, mean_approx
from .errors import ParameterDomainError
from .estimators import (
    QuantileBias,
    normal_quantile,
    quantile_estimator,
    quantile_estimator_asymptotic,
)
from .montecarlo import MCConfig, empirical_mean_r, empirical_underestimation, ks_statistic
from .underestimation import prob_underestimation

__all__ = ["Cell", "SCENARIOS", "run_scenario"]

THEOREM1_RHOS = (-0.9, -0.5, 0.0, 0.5, 0.9)
KS_CELLS = ((20, 0.0), (10, 0.8), (4, 0.0))
CONSISTENCY_NS = (20, 50, 100, 500, 2000)
# calibrated sup-norm bounds on |exact - large-sample| over a 41-point grid
ASYMPTOTIC_BOUNDS = ((20, 0.03), (100, 0.008))


@dataclass(frozen=True)
class Cell:
    label: str
    analytic: float
    empirical: float
    half_width: float
    tolerance: float
    passed: bool


def theorem1(trials, seed, alpha=0.95, n=20, rhos=THEOREM1_RHOS, cfg=DEFAULT_CONFIG):
    t = QuantileBias(alpha, n)
    cells = []
    for rho in rhos:
        exact = prob_underestimation(t, rho, n, cfg)
        rep = empirical_underestimation(t, MCConfig(trials, n, rho, seed=seed), cfg)
        cells.append(Cell(f"rho={rho:g}", exact, rep.estimate, rep.half_width,
                          rep.half_width, rep.contains(exact)))
    return cells


def mean_bias(trials, seed, rho=0.5, n=20, cfg=DEFAULT_CONFIG):
    target = mean_approx(DensityParams(n, rho))
    rep = empirical_mean_r(MCConfig(trials, n, rho, seed=seed))
    # the target itself is only accurate to O(1/n^2)
    tol = rep.half_width + 1.0 / n ** 2
    return [Cell(f"rho={rho:g},n={n}", target, rep.estimate, rep.half_width, tol,
                 abs(rep.estimate - target) <= tol)]


def ks(trials, seed, cells=KS_CELLS, cfg=DEFAULT_CONFIG):
    crit = 1.63 / math.sqrt(trials)
    out = []
    for n, rho in cells:
        d = ks_statistic(MCConfig(trials, n, rho, seed=seed), cfg)
        out.append(Cell(f"n={n},rho={rho:g}", crit, d, 0.0, crit, d < crit))
    return out


def consistency(alpha=0.95, r_hat=0.3, ns=CONSISTENCY_NS, cfg=DEFAULT_CONFIG):
    q = normal_quantile(alpha)
    out = []
    previous = math.inf
    for i, n in enumerate(ns):
        shift = abs(quantile_estimator(r_hat, alpha, n, cfg) - r_hat)
        leading = q * (1.0 - r_hat ** 2) / math.sqrt(n)
        ok = shift < previous
        tol = 0.0
        if i == len(ns) - 1:
            tol = 0.2 * leading
            ok = ok and abs(shift - leading) <= tol
        out.append(Cell(f"n={n}", leading, shift, 0.0, tol, ok))
        previous = shift
    return out


def asymptotic_gap(alpha=0.95, bounds=ASYMPTOTIC_BOUNDS, points=41, cfg=DEFAULT_CONFIG):
    grid = np.linspace(-1.0, 1.0, points)
    out = []
    previous = math.inf
    for n, bound in bounds:
        gap = max(
            abs(quantile_estimator(r, alpha, n, cfg) - quantile_estimator_asymptotic(r, alpha, n))
            for r in grid
        )
        out.append(Cell(f"n={n}", bound, gap, 0.0, bound, gap <= bound and gap < previous))
        previous = gap
    return out


SCENARIOS = ("theorem1", "mean-bias", "ks", "consistency", "asymptotic-gap")


def run_scenario(name, trials=100_000, seed=0, alpha=0.95, n=None, rho=None, r_hat=0.3,
                 cfg=DEFAULT_CONFIG):
    """Dispatch by scenario name; ``n``/``rho`` override the default cells."""
    if name == "theorem1":
        rhos = THEOREM1_RHOS if rho is None else (rho,)
        return theorem1(trials, seed, alpha, 20 if n is None else n, rhos, cfg)
    if name == "mean-bias":
        return mean_bias(trials, seed, 0.5 if rho is None else rho, 20 if n is None else n, cfg)
    if name == "ks":
        cells = KS_CELLS if n is None and rho is None else (
            (20 if n is None else n, 0.0 if rho is None else rho),)
        return ks(trials, seed, cells, cfg)
    if name == "consistency":
        return consistency(alpha, r_hat, cfg=cfg)
    if name == "asymptotic-gap":
        return asymptotic_gap(alpha, cfg=cfg)
    raise ParameterDomainError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
