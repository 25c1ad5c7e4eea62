"""Sphericity testing and related quantities built on the minimum angle."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from scipy import integrate

from .angles import extreme_angles
from .laws import angle_density, fixed_p_extreme_cdf, fixed_p_extreme_quantile
from .special import sphere_constant
from .sphere import normalize_rows

__all__ = [
    "TestResult",
    "concentration_bound",
    "critical_value",
    "exact_deviation_probability",
    "packing_test",
    "spurious_correlation_threshold",
    "variance_bias_factor",
]


@dataclass(frozen=True)
class TestResult:
    """Outcome of the minimum-angle (packing) test of spherical symmetry."""

    __test__ = False  # not a pytest class

    statistic: float
    critical_value: float
    p_value: float
    alpha: float
    reject: bool
    n: int
    p: int
    theta_min: float

    def to_dict(self):
        return asdict(self)


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def critical_value(alpha: float, p: int) -> float:
    """c_alpha = (-log(1 - alpha) / K)^{1/(p-1)}."""
    _check_alpha(alpha)
    return float(fixed_p_extreme_quantile(alpha, p))


def packing_test(data, alpha: float = 0.05) -> TestResult:
    """Reject spherical symmetry when n^{2/(p-1)} * Theta_min <= c_alpha.

    Rows of ``data`` are projected onto the sphere first.  The p-value is
    the left-tail probability of the statistic under the fixed-p extreme
    law, so ``reject`` and ``p_value <= alpha`` always agree.
    """
    _check_alpha(alpha)
    points = normalize_rows(data)
    n, p = points.n, points.p
    theta_min = extreme_angles(points).theta_min
    statistic = n ** (2.0 / (p - 1.0)) * theta_min
    c_alpha = critical_value(alpha, p)
    p_value = float(fixed_p_extreme_cdf(statistic, p))
    return TestResult(
        statistic=float(statistic),
        critical_value=c_alpha,
        p_value=p_value,
        alpha=float(alpha),
        reject=bool(statistic <= c_alpha),
        n=n,
        p=p,
        theta_min=float(theta_min),
    )


def spurious_correlation_threshold(n: int, p: int, return_flag: bool = False):
    """Correlation magnitude reachable by chance: sqrt(1 - n^{-4/p} (log n)^{1/p}).

    Requires n >= 3.  A negative radicand (only possible for tiny p) yields 0
    and, with ``return_flag=True``, a ``True`` degenerate flag.
    """
    if n < 3:
        raise ValueError(f"threshold needs n >= 3, got n={n}")
    if p < 1:
        raise ValueError(f"p must be positive, got p={p}")
    radicand = 1.0 - n ** (-4.0 / p) * math.log(n) ** (1.0 / p)
    degenerate = radicand < 0
    value = 0.0 if degenerate else math.sqrt(radicand)
    return (value, degenerate) if return_flag else value


def variance_bias_factor(theta_min: float) -> float:
    """Factor 1 - cos^2(Theta_min) by which the residual variance is underestimated."""
    if not 0.0 <= theta_min <= math.pi:
        raise ValueError(f"angle must lie in [0, pi], got {theta_min}")
    return math.sin(theta_min) ** 2


def concentration_bound(epsilon: float, p: int) -> float:
    """Upper bound min(1, pi C_p cos(eps)^{p-2}) on P(|Theta - pi/2| >= eps)."""
    if not 0.0 < epsilon < math.pi / 2:
        raise ValueError(f"epsilon must lie in (0, pi/2), got {epsilon}")
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    log_bound = math.log(math.pi * sphere_constant(p)) + (p - 2.0) * math.log(math.cos(epsilon))
    return min(1.0, math.exp(log_bound))


def exact_deviation_probability(epsilon: float, p: int) -> float:
    """P(|Theta - pi/2| >= eps) for one pair, by quadrature of the angle density."""
    tail, _ = integrate.quad(lambda t: angle_density(t, p), math.pi / 2 + epsilon, math.pi,
                             epsabs=1e-14, epsrel=1e-12, limit=200)
    return 2.0 * tail

