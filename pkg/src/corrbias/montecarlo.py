"""Monte Carlo checks against bivariate normal simulation.

Every trial draws from its own Philox stream keyed by ``seed`` with the trial
index in the high counter word. A trial's data therefore depends only on
``(seed, trial)``, so results do not change with chunking or worker count.
Normal variates come from :func:`corrbias.estimators.normal_quantile` applied
to open-interval uniforms.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from .density import DEFAULT_CONFIG, DensityParams, pearson_cdf_many
from .errors import CorrBiasError, ParameterDomainError
from .estimators import BivariateSample, QuantileBias, normal_quantile

__all__ = [
    "MCConfig",
    "MCReport",
    "sample_bivariate",
    "sample_correlations",
    "empirical_underestimation",
    "empirical_mean_r",
    "ks_statistic",
]

_CHUNK_TRIALS = 4096
_TWO_M53 = 2.0 ** -53


@dataclass(frozen=True)
class MCConfig:
    trials: int
    n: int
    rho: float
    mu1: float = 0.0
    mu2: float = 0.0
    sigma1: float = 1.0
    sigma2: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise ParameterDomainError(f"trials must be a positive integer, got {self.trials}")
        if int(self.n) != self.n or self.n < 3:
            raise ParameterDomainError(f"n must be an integer >= 3, got {self.n}")
        if not -1.0 < self.rho < 1.0:
            raise ParameterDomainError(f"rho must lie in (-1, 1), got {self.rho}")
        if not (self.sigma1 > 0.0 and self.sigma2 > 0.0):
            raise ParameterDomainError("standard deviations must be positive")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ParameterDomainError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class MCReport:
    """Point estimate with a ~3-sigma half-width."""

    estimate: float
    half_width: float
    trials: int

    def contains(self, value):
        return abs(self.estimate - value) <= self.half_width


def _trial_uniforms(seed, trial, size):
    bits = np.random.Philox(key=seed, counter=trial << 128).random_raw(size)
    return ((bits >> np.uint64(11)).astype(float) + 0.5) * _TWO_M53


def _standard_pairs(cfg, start, stop):
    """Standard normal (z1, z2) blocks of shape (stop - start, n) each."""
    u = np.stack([_trial_uniforms(cfg.seed, i, 2 * cfg.n) for i in range(start, stop)])
    z = normal_quantile(u)
    return z[:, : cfg.n], z[:, cfg.n:]


def _to_xy(cfg, z1, z2):
    x = cfg.mu1 + cfg.sigma1 * z1
    y = cfg.mu2 + cfg.sigma2 * (cfg.rho * z1 + math.sqrt(1.0 - cfg.rho ** 2) * z2)
    return x, y


def sample_bivariate(cfg, trial=0):
    """The ``n`` pairs drawn in trial number ``trial``."""
    if not 0 <= trial < cfg.trials:
        raise ParameterDomainError(f"trial index {trial} outside [0, {cfg.trials})")
    z1, z2 = _standard_pairs(cfg, trial, trial + 1)
    x, y = _to_xy(cfg, z1[0], z2[0])
    return BivariateSample(x, y)


def _batch_r(cfg, start, stop):
    x, y = _to_xy(cfg, *_standard_pairs(cfg, start, stop))
    dx = x - x.mean(axis=1, keepdims=True)
    dy = y - y.mean(axis=1, keepdims=True)
    r = (dx * dy).sum(axis=1) / np.sqrt((dx * dx).sum(axis=1) * (dy * dy).sum(axis=1))
    return np.clip(r, -1.0, 1.0)


def sample_correlations(cfg, workers=1):
    """Pearson r of every trial, in trial order."""
    bounds = [(s, min(s + _CHUNK_TRIALS, cfg.trials)) for s in range(0, cfg.trials, _CHUNK_TRIALS)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _batch_r(cfg, *b), bounds))
    else:
        parts = [_batch_r(cfg, *b) for b in bounds]
    return np.concatenate(parts)


def _binomial_report(hits, trials):
    p = hits / trials
    return MCReport(p, 3.0 * math.sqrt(p * (1.0 - p) / trials), trials)


def empirical_underestimation(t, cfg, numcfg=DEFAULT_CONFIG, workers=1):
    """Fraction of trials in which ``G(r_hat) < rho``.

    For :class:`QuantileBias` the map is strictly increasing, so the event is
    decided by comparing ``r_hat`` with the single preimage ``G^{-1}(rho)``
    instead of solving for ``G(r_hat)`` in every trial.
    """
    r = sample_correlations(cfg, workers)
    if isinstance(t, QuantileBias):
        threshold = t.inverse(cfg.rho, numcfg)
        hits = np.count_nonzero(r < threshold)
    else:
        hits = 0
        for i, value in enumerate(r):
            try:
                hits += t.apply(float(value), numcfg) < cfg.rho
            except CorrBiasError as exc:
                raise CorrBiasError(f"trial {i}: {exc}") from exc
    return _binomial_report(int(hits), cfg.trials)


def empirical_mean_r(cfg, workers=1):
    """Mean of r_hat over the trials with a 3-standard-error half-width."""
    r = sample_correlations(cfg, workers)
    se = r.std(ddof=1) / math.sqrt(r.size) if r.size > 1 else 0.0
    return MCReport(float(r.mean()), 3.0 * float(se), cfg.trials)


def ks_statistic(cfg, numcfg=DEFAULT_CONFIG, workers=1):
    """One-sample Kolmogorov-Smirnov distance between simulated r_hat and the exact CDF."""
    r = np.sort(sample_correlations(cfg, workers))
    cdf = pearson_cdf_many(r, DensityParams(cfg.n, cfg.rho), numcfg)
    m = r.size
    upper = np.arange(1, m + 1) / m - cdf
    lower = cdf - np.arange(0, m) / m
    return float(max(upper.max(), lower.max()))
