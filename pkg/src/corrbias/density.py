"""Exact sampling distribution of the Pearson correlation coefficient.

For ``n`` independent draws from a bivariate normal with correlation ``rho``
the sample correlation has density

    p(r | rho) = 2**(n-3) / (pi * Gamma(n-2)) * (1-rho**2)**((n-1)/2)
                 * (1-r**2)**((n-4)/2)
                 * sum_k Gamma((n+k-1)/2)**2 * (2*rho*r)**k / k!

All gamma factors are handled in log space and the series is accumulated with
a running rescale, so large ``n`` does not overflow. The CDF is integrated in
the angle ``theta = arcsin(r)``, which turns the endpoint factor into
``cos(theta)**(n-3)`` and removes the singularity at ``r = +-1`` for n >= 3.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize
from scipy.special import gammaln

from ._quadrature import adaptive_integrate, cumulative_integrate
from .errors import ConvergenceError, ParameterDomainError, SeriesConvergenceError

__all__ = [
    "DensityParams",
    "NumericConfig",
    "DEFAULT_CONFIG",
    "pearson_density",
    "pearson_cdf",
    "pearson_cdf_many",
    "pearson_quantile",
    "mean_approx",
]

_HALF_PI = 0.5 * math.pi
_CHUNK = 8192


@dataclass(frozen=True)
class NumericConfig:
    """Tolerances and iteration caps shared by the numerical routines."""

    series_tol: float = 1e-12
    series_max_terms: int = 100_000
    quad_tol: float = 1e-10
    root_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        for name in ("series_tol", "quad_tol", "root_tol"):
            if not getattr(self, name) > 0:
                raise ParameterDomainError(f"{name} must be positive")
        for name in ("series_max_terms", "max_iter"):
            if getattr(self, name) < 1:
                raise ParameterDomainError(f"{name} must be at least 1")


DEFAULT_CONFIG = NumericConfig()


@dataclass(frozen=True)
class DensityParams:
    """Sample size ``n`` (real, > 2) and population correlation ``rho``."""

    n: float
    rho: float

    def __post_init__(self):
        if not (np.isfinite(self.n) and self.n > 2):
            raise ParameterDomainError(f"sample size must exceed 2, got n={self.n}")
        if not -1.0 <= self.rho <= 1.0:
            raise ParameterDomainError(f"rho must lie in [-1, 1], got {self.rho}")


def _check_unit_interval(values, name):
    values = np.asarray(values, dtype=float)
    if np.any(np.isnan(values)) or np.any(np.abs(values) > 1.0):
        raise ParameterDomainError(f"{name} must lie in [-1, 1]")
    return values


def _log_series(x, n, cfg):
    """Return ``log S(x)`` for ``S(x) = sum_k Gamma((n+k-1)/2)**2 (2x)**k / k!``.

    ``x`` is the product ``rho * r`` and must satisfy ``|x| < 1``. For x < 0
    the terms alternate; the truncation test is then taken relative to the
    sum of absolute values, which also bounds the attainable rounding error.
    Points where cancellation leaves a non-positive sum get ``-inf``.
    """
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, 2.0 * gammaln(0.5 * (n - 1.0)))
    active = np.flatnonzero(x != 0.0)
    if active.size == 0:
        return out

    xa = x[active]
    ax = np.abs(xa)
    log2x = np.log(2.0 * ax)
    negative = xa < 0.0
    log_tol = math.log(cfg.series_tol)

    scale = np.full(xa.shape, -np.inf)
    acc = np.zeros(xa.shape)
    acc_abs = np.zeros(xa.shape)
    tail_log = np.full(xa.shape, np.inf)

    k0, block = 0, 32
    live = np.arange(xa.size)
    while live.size and k0 < cfg.series_max_terms:
        ks = np.arange(k0, min(k0 + block, cfg.series_max_terms), dtype=float)
        coeff = 2.0 * gammaln(0.5 * (n + ks - 1.0)) - gammaln(ks + 1.0)
        logt = coeff[None, :] + ks[None, :] * log2x[live, None]
        odd = (ks % 2.0) == 1.0
        signs = np.where(negative[live, None] & odd[None, :], -1.0, 1.0)

        new_scale = np.maximum(scale[live], logt.max(axis=1))
        shrink = np.exp(scale[live] - new_scale)
        weights = np.exp(logt - new_scale[:, None])
        acc[live] = acc[live] * shrink + (signs * weights).sum(axis=1)
        acc_abs[live] = acc_abs[live] * shrink + weights.sum(axis=1)
        scale[live] = new_scale

        k_last = ks[-1]
        last = logt[:, -1]
        q = ax[live] * (n + k_last) / (k_last + 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(q < 1.0, last + np.log(q / (1.0 - q)), np.inf)
        ref = np.where(negative[live], acc_abs[live], np.abs(acc[live]))
        with np.errstate(divide="ignore"):
            log_ref = new_scale + np.log(ref)
        converged = (last <= log_tol + log_ref) & (tail <= log_tol + log_ref)
        tail_log[live] = tail
        live = live[~converged]
        k0 += block
        block = min(2 * block, 4096)

    if live.size:
        i = live[0]
        with np.errstate(over="ignore"):
            partial = float(acc[i] * np.exp(scale[i]))
            bound = float(np.exp(tail_log[i]))
        raise SeriesConvergenceError(
            f"density series not converged within {cfg.series_max_terms} terms "
            f"at rho*r={xa[i]:.6g}, n={n:g}",
            partial_sum=partial,
            tail_bound=bound,
        )

    with np.errstate(divide="ignore", invalid="ignore"):
        out[active] = scale + np.where(acc > 0.0, np.log(acc), -np.inf)
    return out


def _log_prefactor(params):
    n, rho = params.n, params.rho
    return (
        (n - 3.0) * math.log(2.0)
        - math.log(math.pi)
        - math.lgamma(n - 2.0)
        + 0.5 * (n - 1.0) * math.log1p(-rho * rho)
    )


def _log_null_constant(n):
    return math.lgamma(0.5 * (n - 1.0)) - math.lgamma(0.5 * (n - 2.0)) - 0.5 * math.log(math.pi)


def _log_density_core(x_prod, log_endpoint, params, cfg):
    """log density given ``rho*r`` and the precomputed endpoint log-factor."""
    if params.rho == 0.0:
        return _log_null_constant(params.n) + np.asarray(log_endpoint, dtype=float)
    out = np.empty(np.shape(x_prod))
    flat_x = np.ravel(x_prod)
    flat_end = np.ravel(log_endpoint)
    flat_out = out.reshape(-1)
    logc = _log_prefactor(params)
    for start in range(0, flat_x.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        flat_out[sl] = logc + flat_end[sl] + _log_series(flat_x[sl], params.n, cfg)
    return out


def pearson_density(r, params, cfg=DEFAULT_CONFIG):
    """Sampling density ``p(r | rho)`` of the sample correlation.

    ``r`` may be a scalar or an array. At ``r = +-1`` the density is 0 for
    ``n > 4``, finite for ``n == 4`` and ``inf`` for ``n < 4`` (an integrable
    singularity). For ``|rho| == 1`` the distribution is a point mass at
    ``rho``, reported here as 0 away from it and ``inf`` on it.

    Raises
    ------
    ParameterDomainError
        If ``|r| > 1``.
    SeriesConvergenceError
        If the series needs more than ``cfg.series_max_terms`` terms.
    """
    scalar = np.ndim(r) == 0
    shape = np.shape(r)
    r = np.atleast_1d(_check_unit_interval(r, "r")).ravel()
    n, rho = params.n, params.rho

    if abs(rho) == 1.0:
        out = np.where(r == rho, np.inf, 0.0)
        return float(out[0]) if scalar else out.reshape(shape)

    interior = np.abs(r) < 1.0
    with np.errstate(divide="ignore"):
        log_end = 0.5 * (n - 4.0) * np.log1p(-np.where(interior, r * r, 0.0))
    out = np.exp(_log_density_core(rho * r, log_end, params, cfg))

    if not interior.all():
        # (1-r^2)^((n-4)/2) at the endpoints
        edge = ~interior
        if n > 4.0:
            out[edge] = 0.0
        elif n < 4.0:
            out[edge] = np.inf
        else:
            x_edge = rho * r[edge]
            out[edge] = np.exp(
                _log_prefactor(params) + _log_series(x_edge, n, cfg)
                if rho != 0.0
                else _log_null_constant(n) + 0.0 * x_edge
            )
    return float(out[0]) if scalar else out.reshape(shape)


def _theta_integrand(params, cfg):
    """Density in the angle variable: ``p(sin t | rho) * cos t``."""
    n, rho = params.n, params.rho

    def f(theta):
        log_end = (n - 3.0) * np.log(np.cos(theta))
        return np.exp(_log_density_core(rho * np.sin(theta), log_end, params, cfg))

    return f


def _point_mass_cdf(x, rho):
    if rho == 1.0:
        return 1.0 if x >= 1.0 else 0.0
    return 1.0 if x > -1.0 else 0.0


def pearson_cdf(x, params, cfg=DEFAULT_CONFIG):
    """Distribution function ``F(x | rho)``, the integral of the density on [-1, x].

    The integral is computed adaptively in ``theta = arcsin(r)`` to absolute
    accuracy ``cfg.quad_tol``. Sample sizes below 3 leave an endpoint
    singularity in ``theta`` and usually raise ``ConvergenceError``.
    """
    x = float(_check_unit_interval(x, "x"))
    if abs(params.rho) == 1.0:
        return _point_mass_cdf(x, params.rho)
    if x == -1.0:
        return 0.0
    upper = _HALF_PI if x == 1.0 else math.asin(x)
    value, _ = adaptive_integrate(
        _theta_integrand(params, cfg), -_HALF_PI, upper, cfg.quad_tol, max_rounds=cfg.max_iter
    )
    return min(max(value, 0.0), 1.0)


def pearson_cdf_many(xs, params, cfg=DEFAULT_CONFIG, panels=512):
    """``F(x | rho)`` at many points at once.

    The angle range is cut at every requested point and at ``panels`` equally
    spaced angles, each piece is integrated with a fixed Gauss-Legendre rule,
    and the pieces are accumulated. Intended for large batches such as
    goodness-of-fit statistics; for single points use :func:`pearson_cdf`.
    """
    xs = _check_unit_interval(xs, "xs")
    shape = xs.shape
    flat = xs.ravel()
    if abs(params.rho) == 1.0:
        return np.array([_point_mass_cdf(v, params.rho) for v in flat]).reshape(shape)
    theta = np.arcsin(flat)
    grid = np.linspace(-_HALF_PI, _HALF_PI, panels + 1)
    cuts = np.unique(np.concatenate([grid, theta]))
    pieces = cumulative_integrate(_theta_integrand(params, cfg), cuts)
    cum = np.concatenate([[0.0], np.cumsum(pieces)])
    out = cum[np.searchsorted(cuts, theta)]
    return np.clip(out, 0.0, 1.0).reshape(shape)


def pearson_quantile(p, params, cfg=DEFAULT_CONFIG):
    """Inverse of :func:`pearson_cdf` in its first argument.

    Brent's method on ``[-1, 1]`` (bisection safeguarded, so the monotone
    bracket always converges), followed by Newton polishing until the CDF
    residual is within ``cfg.quad_tol``.
    """
    if not 0.0 < p < 1.0:
        raise ParameterDomainError(f"probability must lie in (0, 1), got {p}")
    if abs(params.rho) == 1.0:
        return params.rho

    def residual(x):
        if x <= -1.0:
            return -p
        if x >= 1.0:
            return 1.0 - p
        return pearson_cdf(x, params, cfg) - p

    x, info = optimize.brentq(
        residual, -1.0, 1.0, xtol=cfg.root_tol, maxiter=cfg.max_iter,
        full_output=True, disp=False,
    )
    if not info.converged:
        raise ConvergenceError(f"quantile search stopped: {info.flag}")

    for _ in range(3):
        res = residual(x)
        if abs(res) <= cfg.quad_tol:
            break
        dens = pearson_density(x, params, cfg)
        if not (np.isfinite(dens) and dens > 0.0):
            break
        step = res / dens
        if abs(step) > cfg.root_tol:
            break
        x = min(max(x - step, -1.0), 1.0)
    return x


def mean_approx(params):
    """Leading-order mean of the sample correlation, ``rho * (1 - (1-rho^2)/(2n))``."""
    rho = params.rho
    return rho * (1.0 - (1.0 - rho * rho) / (2.0 * params.n))
