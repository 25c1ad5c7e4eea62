"""Angles between uniform random points on spheres: sampling, limit laws, tests, simulation."""

__version__ = "0.1.0"

from .angles import (
    AngleExtremes,
    AngleSet,
    EmpiricalMeasure,
    empirical_measure,
    extreme_angles,
    extremes,
    near_orthogonal_count,
    normalized_empirical,
    pairwise_angles,
)
from .inference import (
    TestResult,
    concentration_bound,
    packing_test,
    spurious_correlation_threshold,
    variance_bias_factor,
)
from .laws import LimitLaw, PivotSpec, limit_law, pivot_transform, regime_classify
from .special import log_gamma
from .sphere import DataMatrix, PointSet, SeedSpec, normalize_rows, sample_dgp, sample_uniform_sphere

__all__ = [
    "AngleExtremes",
    "AngleSet",
    "DataMatrix",
    "EmpiricalMeasure",
    "LimitLaw",
    "PivotSpec",
    "PointSet",
    "SeedSpec",
    "TestResult",
    "concentration_bound",
    "empirical_measure",
    "extreme_angles",
    "extremes",
    "limit_law",
    "log_gamma",
    "near_orthogonal_count",
    "normalize_rows",
    "normalized_empirical",
    "packing_test",
    "pairwise_angles",
    "pivot_transform",
    "regime_classify",
    "sample_dgp",
    "sample_uniform_sphere",
    "spurious_correlation_threshold",
    "variance_bias_factor",
]
