"""Correlation estimators: Pearson's r and the systematically biased maps.

Four maps push the sample correlation upward. Three of them are piecewise
linear; the fourth, :class:`QuantileBias`, picks the correlation ``t`` at
which the observed ``r_hat`` is the ``1 - alpha`` quantile, i.e. it solves
``F(r_hat | t) = 1 - alpha``. That choice makes the probability of
underestimating the true correlation exactly ``1 - alpha`` for every rho.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize
from scipy.special import erfc

from .density import DEFAULT_CONFIG, DensityParams, pearson_cdf, pearson_quantile
from .errors import (
    ConvergenceError,
    DegenerateSampleError,
    NonInvertibleError,
    ParameterDomainError,
)

__all__ = [
    "BivariateSample",
    "pearson_r",
    "Identity",
    "AffineTowardOne",
    "NegativeShrink",
    "UpwardShift",
    "QuantileBias",
    "transform_apply",
    "transform_inverse",
    "quantile_estimator",
    "quantile_estimator_asymptotic",
    "normal_quantile",
]

# slack for image-boundary checks; apply() round-off can land a few ulps outside
_EDGE = 1e-12


@dataclass(frozen=True)
class BivariateSample:
    """Paired observations ``(x_i, y_i)``, ``i = 1..n``."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape:
            raise ParameterDomainError("x and y must be 1-D arrays of equal length")
        if x.size < 3:
            raise ParameterDomainError(f"need at least 3 pairs, got {x.size}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ParameterDomainError("sample contains non-finite values")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_pairs(cls, pairs):
        arr = np.asarray(list(pairs), dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ParameterDomainError("pairs must be a sequence of (x, y)")
        return cls(arr[:, 0], arr[:, 1])

    @property
    def n(self):
        return self.x.size


def pearson_r(sample):
    """Sample product-moment correlation of a :class:`BivariateSample`."""
    dx = sample.x - sample.x.mean()
    dy = sample.y - sample.y.mean()
    sxx = dx @ dx
    syy = dy @ dy
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateSampleError("a coordinate is constant; correlation undefined")
    r = (dx @ dy) / math.sqrt(sxx * syy)
    return min(max(r, -1.0), 1.0)


def _check_r(value, name="r_hat"):
    if not -1.0 <= value <= 1.0:
        raise ParameterDomainError(f"{name} must lie in [-1, 1], got {value}")


def _clip_to_image(value, low):
    """Reject points outside ``[low, 1]``, snapping round-off at the edges."""
    if value < low - _EDGE or value > 1.0 + _EDGE:
        raise ParameterDomainError(f"{value} is outside the image [{low}, 1]")
    return min(max(value, low), 1.0)


@dataclass(frozen=True)
class Identity:
    """The unbiased-in-shape map ``r_hat -> r_hat``."""

    name = "identity"

    def apply(self, r_hat, cfg=DEFAULT_CONFIG):
        _check_r(r_hat)
        return r_hat

    def inverse(self, r_tilde, cfg=DEFAULT_CONFIG):
        _check_r(r_tilde, "r_tilde")
        return r_tilde

    def params(self):
        return {}


@dataclass(frozen=True)
class AffineTowardOne:
    """``(1 - a) * r_hat + a``: a straight line through (1, 1) and (0, a)."""

    a: float
    name = "affine"

    def __post_init__(self):
        if not 0.0 <= self.a < 1.0:
            raise ParameterDomainError(f"a must lie in [0, 1), got {self.a}")

    def apply(self, r_hat, cfg=DEFAULT_CONFIG):
        _check_r(r_hat)
        return (1.0 - self.a) * r_hat + self.a

    def inverse(self, r_tilde, cfg=DEFAULT_CONFIG):
        r_tilde = _clip_to_image(r_tilde, 2.0 * self.a - 1.0)
        return min(max((r_tilde - self.a) / (1.0 - self.a), -1.0), 1.0)

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class NegativeShrink:
    """Scale negative estimates by ``1 - b`` and keep positive ones.

    ``b = 1`` is the degenerate map ``max(r_hat, 0)``, which puts an atom
    at zero and cannot be inverted there.
    """

    b: float
    name = "shrink"

    def __post_init__(self):
        if not 0.0 <= self.b <= 1.0:
            raise ParameterDomainError(f"b must lie in [0, 1], got {self.b}")

    def apply(self, r_hat, cfg=DEFAULT_CONFIG):
        _check_r(r_hat)
        return (1.0 - self.b) * r_hat if r_hat < 0.0 else r_hat

    def inverse(self, r_tilde, cfg=DEFAULT_CONFIG):
        if self.b == 1.0:
            if r_tilde == 0.0:
                raise NonInvertibleError("max(r, 0) maps all of [-1, 0] to 0")
            return _clip_to_image(r_tilde, 0.0)
        r_tilde = _clip_to_image(r_tilde, self.b - 1.0)
        if r_tilde < 0.0:
            return max(r_tilde / (1.0 - self.b), -1.0)
        return r_tilde

    def params(self):
        return {"b": self.b}


@dataclass(frozen=True)
class UpwardShift:
    """Add ``c``, bending linearly onto (1, 1) over the last ``c + eps``."""

    c: float
    eps: float = 1e-6
    name = "shift"

    def __post_init__(self):
        if not 0.0 <= self.c < 1.0:
            raise ParameterDomainError(f"c must lie in [0, 1), got {self.c}")
        if not self.eps > 0.0:
            raise ParameterDomainError(f"eps must be positive, got {self.eps}")

    def apply(self, r_hat, cfg=DEFAULT_CONFIG):
        _check_r(r_hat)
        if r_hat <= 1.0 - self.c - self.eps:
            return r_hat + self.c
        return (self.eps * r_hat + self.c) / (self.eps + self.c)

    def inverse(self, r_tilde, cfg=DEFAULT_CONFIG):
        r_tilde = _clip_to_image(r_tilde, self.c - 1.0)
        if r_tilde <= 1.0 - self.eps:
            return max(r_tilde - self.c, -1.0)
        return min((1.0 + self.c / self.eps) * r_tilde - self.c / self.eps, 1.0)

    def params(self):
        return {"c": self.c, "eps": self.eps}


@dataclass(frozen=True)
class QuantileBias:
    """The quantile-defined estimator at confidence ``alpha`` for sample size ``n``."""

    alpha: float
    n: float
    name = "quantile"

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ParameterDomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.n > 2:
            raise ParameterDomainError(f"sample size must exceed 2, got n={self.n}")

    def apply(self, r_hat, cfg=DEFAULT_CONFIG):
        return quantile_estimator(r_hat, self.alpha, self.n, cfg)

    def inverse(self, r_tilde, cfg=DEFAULT_CONFIG):
        _check_r(r_tilde, "r_tilde")
        if abs(r_tilde) == 1.0:
            return r_tilde
        return pearson_quantile(1.0 - self.alpha, DensityParams(self.n, r_tilde), cfg)

    def params(self):
        return {"alpha": self.alpha, "n": self.n}


def transform_apply(t, r_hat, cfg=DEFAULT_CONFIG):
    """Map a Pearson estimate through transform ``t``."""
    return t.apply(r_hat, cfg)


def transform_inverse(t, r_tilde, cfg=DEFAULT_CONFIG):
    """Preimage of ``r_tilde`` under transform ``t``.

    Raises ``ParameterDomainError`` outside the transform's image and
    ``NonInvertibleError`` on the atom of ``NegativeShrink(b=1)``.
    """
    return t.inverse(r_tilde, cfg)


def quantile_estimator(r_hat, alpha, n, cfg=DEFAULT_CONFIG):
    """Solve ``F(r_hat | t) = 1 - alpha`` for the correlation ``t``.

    The CDF decreases strictly in its correlation parameter, from 1 at
    ``t = -1`` to 0 at ``t = 1``, so the residual changes sign exactly once
    on ``[-1, 1]``. Those endpoint limits are used directly instead of
    evaluating the degenerate distributions there. ``r_hat = +-1`` is
    returned unchanged.
    """
    _check_r(r_hat)
    if not 0.0 < alpha < 1.0:
        raise ParameterDomainError(f"alpha must lie in (0, 1), got {alpha}")
    if not n > 2:
        raise ParameterDomainError(f"sample size must exceed 2, got n={n}")
    if abs(r_hat) == 1.0:
        return r_hat
    target = 1.0 - alpha

    def residual(t):
        if t <= -1.0:
            return 1.0 - target
        if t >= 1.0:
            return -target
        return pearson_cdf(r_hat, DensityParams(n, t), cfg) - target

    t, info = optimize.brentq(
        residual, -1.0, 1.0, xtol=cfg.root_tol, maxiter=cfg.max_iter,
        full_output=True, disp=False,
    )
    if not info.converged:
        raise ConvergenceError(f"quantile estimator search stopped: {info.flag}")
    return t


def quantile_estimator_asymptotic(r_hat, alpha, n):
    """Closed-form large-sample approximation to :func:`quantile_estimator`.

    Solves ``r_hat = t - q * (1 - t**2) / sqrt(n)`` for ``t``, with ``q`` the
    standard normal ``alpha`` quantile. Requires ``n > 4 q**2``.
    """
    _check_r(r_hat)
    q = normal_quantile(alpha)
    if not n > 4.0 * q * q:
        raise ParameterDomainError(f"need n > 4 q^2 = {4.0 * q * q:.6g}, got n={n}")
    sqrt_n = math.sqrt(n)
    disc = n + 4.0 * q * sqrt_n * r_hat + 4.0 * q * q
    # (sqrt(disc) - sqrt(n)) / (2q), rationalised so that q -> 0 gives r_hat
    return 2.0 * (sqrt_n * r_hat + q) / (math.sqrt(disc) + sqrt_n)


_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _acklam(p):
    q = np.empty_like(p)
    low = p < _P_LOW
    high = p > 1.0 - _P_LOW
    mid = ~(low | high)

    u = p[mid] - 0.5
    s = u * u
    num = ((((_A[0] * s + _A[1]) * s + _A[2]) * s + _A[3]) * s + _A[4]) * s + _A[5]
    den = ((((_B[0] * s + _B[1]) * s + _B[2]) * s + _B[3]) * s + _B[4]) * s + 1.0
    q[mid] = u * num / den

    for mask, tail, sign in ((low, p[low], 1.0), (high, 1.0 - p[high], -1.0)):
        v = np.sqrt(-2.0 * np.log(tail))
        num = ((((_C[0] * v + _C[1]) * v + _C[2]) * v + _C[3]) * v + _C[4]) * v + _C[5]
        den = (((_D[0] * v + _D[1]) * v + _D[2]) * v + _D[3]) * v + 1.0
        q[mask] = sign * num / den
    return q


def normal_quantile(alpha):
    """Standard normal quantile ``q`` with ``erf(q / sqrt 2) = 2 alpha - 1``.

    Acklam's rational approximation followed by one Halley refinement of the
    normal CDF residual. Accepts scalars or arrays with entries in (0, 1).
    """
    scalar = np.ndim(alpha) == 0
    p = np.asarray(alpha, dtype=float)
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise ParameterDomainError("alpha must lie in (0, 1)")
    p = np.atleast_1d(p)
    q = _acklam(p)
    # residual in the tail that keeps relative precision
    upper = q > 0.0
    cdf_gap = np.where(
        upper,
        (1.0 - p) - 0.5 * erfc(q / math.sqrt(2.0)),
        0.5 * erfc(-q / math.sqrt(2.0)) - p,
    )
    u = cdf_gap * math.sqrt(2.0 * math.pi) * np.exp(0.5 * q * q)
    q = q - u / (1.0 + 0.5 * q * u)
    q = np.where(p == 0.5, 0.0, q)
    return float(q[0]) if scalar else q.reshape(np.shape(alpha))

