"""Tail modelling with the residual coefficient of variation."""

from .errors import (
    DataError,
    DegenerateTailError,
    DomainError,
    EvtailError,
    FitError,
    GridError,
    InsufficientTailError,
)
from .gpd import (
    FitResult,
    GpdParams,
    asymptotic_sd,
    asymptotic_variance,
    cv_covariance,
    cv_of_xi,
    gpd_cdf,
    gpd_log_likelihood,
    gpd_mle_fit,
    gpd_quantile,
    gpd_sample,
    residual_params,
    xi_of_cv,
)
from .residual_cv import (
    CvPlot,
    MeanExcessPlot,
    cv_plot,
    empirical_quantile,
    mean_excess_plot,
    residual_cv,
    residual_mean,
    residual_variance,
)
from .sample import SampleData, as_sample
from .threshold_test import (
    SelectionResult,
    SelectionStep,
    ThresholdGrid,
    TmOutcome,
    build_grid,
    continue_selection,
    deviation_statistic,
    estimate_cv_tilde,
    simulate_null_tm,
    simulate_p_value,
    threshold_select,
    tm_statistic,
    tm_test,
)
from .transforms import StabilizeSpec, inverse_stabilize, negate_reciprocal, stabilize

__version__ = "0.1.0"
