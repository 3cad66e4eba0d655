"""Probability that a transformed estimator falls below the true correlation.

For a non-decreasing map ``G`` the event ``G(r_hat) < rho`` is the event
``r_hat < G^{-1}(rho)``, so the probability is ``F(G^{-1}(rho) | rho)``.
The piecewise-linear maps have closed-form preimages; the quantile estimator
gives a constant ``1 - alpha``.
"""

from dataclasses import dataclass

import numpy as np

from .density import DEFAULT_CONFIG, DensityParams, pearson_cdf, pearson_quantile
from .errors import ParameterDomainError
from .estimators import (
    AffineTowardOne,
    Identity,
    NegativeShrink,
    QuantileBias,
    UpwardShift,
    transform_apply,
)

__all__ = [
    "UnderestimationCurve",
    "TransformCurve",
    "prob_underestimation",
    "curve",
    "transform_curve",
    "default_grid",
]


@dataclass(frozen=True)
class UnderestimationCurve:
    """``P(G(r_hat) < rho)`` on a grid of ``rho`` for one transform."""

    transform: object
    n: float
    rho: np.ndarray
    prob: np.ndarray

    @property
    def points(self):
        return list(zip(self.rho.tolist(), self.prob.tolist()))


@dataclass(frozen=True)
class TransformCurve:
    """The map ``r_hat -> G(r_hat)`` sampled on a grid."""

    transform: object
    r_hat: np.ndarray
    r_tilde: np.ndarray

    @property
    def points(self):
        return list(zip(self.r_hat.tolist(), self.r_tilde.tolist()))


def default_grid(count=201, low=-0.99, high=0.99):
    """Equally spaced correlation grid on a closed sub-interval of (-1, 1)."""
    return np.linspace(low, high, count)


def _cdf(x, rho, n, cfg):
    if x <= -1.0:
        return 0.0
    return pearson_cdf(min(x, 1.0), DensityParams(n, rho), cfg)


def prob_underestimation(t, rho, n, cfg=DEFAULT_CONFIG):
    """Exact ``P(G(r_hat) < rho)`` for transform ``t`` at sample size ``n``.

    ``UpwardShift`` is evaluated in the limit ``eps -> 0`` taken after the
    integral, so its ``eps`` field is ignored here. Atoms of the transformed
    estimator (``NegativeShrink(b=1)`` at zero) are excluded from the strict
    event.
    """
    if not -1.0 < rho < 1.0:
        raise ParameterDomainError(f"rho must lie in (-1, 1), got {rho}")
    if not n > 2:
        raise ParameterDomainError(f"sample size must exceed 2, got n={n}")

    if isinstance(t, Identity):
        return _cdf(rho, rho, n, cfg)
    if isinstance(t, AffineTowardOne):
        if rho <= 2.0 * t.a - 1.0:
            return 0.0
        return _cdf((rho - t.a) / (1.0 - t.a), rho, n, cfg)
    if isinstance(t, NegativeShrink):
        if rho >= 0.0:
            if t.b == 1.0 and rho == 0.0:
                return 0.0
            return _cdf(rho, rho, n, cfg)
        if t.b == 1.0:
            return 0.0
        return _cdf(rho / (1.0 - t.b), rho, n, cfg)
    if isinstance(t, UpwardShift):
        if rho <= t.c - 1.0:
            return 0.0
        return _cdf(rho - t.c, rho, n, cfg)
    if isinstance(t, QuantileBias):
        if t.n != n:
            raise ParameterDomainError(
                f"QuantileBias built for n={t.n} evaluated at n={n}"
            )
        x = pearson_quantile(1.0 - t.alpha, DensityParams(n, rho), cfg)
        return _cdf(x, rho, n, cfg)
    raise TypeError(f"unsupported transform {t!r}")


def _check_grid(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ParameterDomainError("grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) <= 0.0):
        raise ParameterDomainError("grid must be strictly increasing")
    return grid


def curve(t, n, grid=None, cfg=DEFAULT_CONFIG):
    """:func:`prob_underestimation` over ``grid`` (default 201 points on [-0.99, 0.99])."""
    grid = _check_grid(default_grid() if grid is None else grid)
    if grid[0] <= -1.0 or grid[-1] >= 1.0:
        raise ParameterDomainError("grid must lie inside (-1, 1)")
    prob = np.array([prob_underestimation(t, rho, n, cfg) for rho in grid])
    return UnderestimationCurve(transform=t, n=n, rho=grid, prob=prob)


def transform_curve(t, grid=None, cfg=DEFAULT_CONFIG):
    """The transform itself on a grid of ``r_hat`` values in [-1, 1]."""
    grid = _check_grid(default_grid(201, -1.0, 1.0) if grid is None else grid)
    values = np.array([transform_apply(t, r, cfg) for r in grid])
    return TransformCurve(transform=t, r_hat=grid, r_tilde=values)
