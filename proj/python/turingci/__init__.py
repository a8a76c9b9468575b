"""Occupancy-probability confidence intervals from Turing's estimator."""

from ._core import (
    Interval,
    SampleProfile,
    __version__,
    analytic_bias,
    attribute,
    chi_squared_cdf,
    chi_squared_quantile,
    classify_regime,
    confidence_interval,
    draw_sample,
    esty_ci,
    heuristic_ci,
    lindeberg_statistic,
    modified_turing_estimate,
    normal_cdf,
    normal_ci,
    normal_quantile,
    normal_ratio_ci,
    pmf,
    poisson_ci,
    run_experiment,
    sd_estimate,
    true_asymptotic_sd,
    true_occupancy_probability,
    turing_estimate,
)

__all__ = [
    "Interval",
    "SampleProfile",
    "__version__",
    "analytic_bias",
    "attribute",
    "chi_squared_cdf",
    "chi_squared_quantile",
    "classify_regime",
    "confidence_interval",
    "draw_sample",
    "esty_ci",
    "heuristic_ci",
    "lindeberg_statistic",
    "modified_turing_estimate",
    "normal_cdf",
    "normal_ci",
    "normal_quantile",
    "normal_ratio_ci",
    "pmf",
    "poisson_ci",
    "run_experiment",
    "sd_estimate",
    "true_asymptotic_sd",
    "true_occupancy_probability",
    "turing_estimate",
]
