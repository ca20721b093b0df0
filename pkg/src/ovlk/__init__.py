"""Overlapping coefficient of k >= 2 normal distributions.

Reference values by grid-refined Simpson quadrature, plug-in Simpson
estimators on a generalized logistic scale, a group-ratio comparator
estimator, and a seeded Monte Carlo harness for comparing them.
"""
from ._backend import BACKEND
from .distributions import (
    Convention,
    FittedNormal,
    GroupSample,
    NormalParams,
    derive_stream,
    fit_normal,
    normal_pdf,
    sample_normal,
)
from .errors import *  # noqa: F401,F403
from .estimators import (
    Estimate,
    EstimatorSpec,
    comparator_estimate,
    estimate_alpha,
    evaluate,
    min_density,
    simpson_ovl_estimate,
)
from .quadrature import QuadratureConfig, exact_ovl, simpson_closed, simpson_open_unit
from .simulation import (
    MetricsReport,
    Scenario,
    SimulationConfig,
    average_estimate,
    efficiency,
    load_config,
    relative_bias,
    rrmse,
    run_scenario,
    run_simulation,
)
from .transform import TransformConfig, logistic_cdf, logistic_inverse, logistic_jacobian, softplus

__version__ = "0.1.0"
