"""Exact sampling distribution of Pearson's r and upward-biased correlation estimators."""

from .density import (
    DEFAULT_CONFIG,
    DensityParams,
    NumericConfig,
    mean_approx,
    pearson_cdf,
    pearson_cdf_many,
    pearson_density,
    pearson_quantile,
)
from .errors import (
    ConvergenceError,
    CorrBiasError,
    DegenerateSampleError,
    NonInvertibleError,
    ParameterDomainError,
    SeriesConvergenceError,
)
from .estimators import (
    AffineTowardOne,
    BivariateSample,
    Identity,
    NegativeShrink,
    QuantileBias,
    UpwardShift,
    normal_quantile,
    pearson_r,
    quantile_estimator,
    quantile_estimator_asymptotic,
    transform_apply,
    transform_inverse,
)
from .montecarlo import (
    MCConfig,
    MCReport,
    empirical_mean_r,
    empirical_underestimation,
    ks_statistic,
    sample_bivariate,
    sample_correlations,
)
from .underestimation import (
    TransformCurve,
    UnderestimationCurve,
    curve,
    prob_underestimation,
    transform_curve,
)

__version__ = "0.1.0"
