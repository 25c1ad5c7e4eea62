"""Closed-form limit laws for pairwise angles and their extremes.

Each law is exposed twice: as plain functions (``angle_density``,
``fixed_p_extreme_cdf`` ...) and as an immutable :class:`LimitLaw` object with
``pdf``/``cdf``/``quantile`` methods, built by :func:`limit_law`.

The extreme-value pivots for growing dimension all have the form
``1 - exp(-c * exp((y + s) / 2))``; the corollary pivot is the mirrored
``exp(-c * exp(-(y + s) / 2))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .special import gamma_ratio, sphere_constant

__all__ = [
    "LAW_KINDS",
    "SUBEXP_CONSTANT",
    "SUPEREXP_CONSTANT",
    "LimitLaw",
    "PivotSpec",
    "PivotUndefinedError",
    "angle_cdf",
    "angle_density",
    "corollary_pivot_cdf",
    "cosine_cdf",
    "cosine_density",
    "exp_regime_constant",
    "exp_regime_limit_angle",
    "exp_regime_pivot_cdf",
    "fixed_p_constant",
    "fixed_p_extreme_cdf",
    "fixed_p_extreme_pdf",
    "fixed_p_extreme_quantile",
    "limit_law",
    "normalized_angle_cdf",
    "normalized_angle_density",
    "one_minus_mn_cdf",
    "one_minus_mn_constant",
    "pivot_transform",
    "regime_classify",
    "subexp_pivot_cdf",
    "sum_law_cdf",
    "sum_law_pdf",
    "superexp_pivot_cdf",
]

SUBEXP_CONSTANT = 1.0 / (4.0 * math.sqrt(2.0 * math.pi))
SUPEREXP_CONSTANT = 1.0 / (2.0 * math.sqrt(2.0 * math.pi))

SUBEXP_THRESHOLD = 0.05
SUPEREXP_THRESHOLD = 5.0


class PivotUndefinedError(ValueError):
    """Raised when a pivot transform has no finite value for the given design."""


def _check_p(p, minimum=2):
    if p < minimum:
        raise ValueError(f"dimension too small: need p >= {minimum}, got p={p}")


def _scalar_or_array(out):
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# single-angle laws


def angle_density(theta, p):
    """Density of the angle between two independent uniform points on S^{p-1}."""
    _check_p(p)
    theta = np.asarray(theta, dtype=np.float64)
    inside = (theta >= 0) & (theta <= np.pi)
    if p == 2:
        out = np.where(inside, 1.0 / np.pi, 0.0)
        return _scalar_or_array(out)
    # fold onto [0, pi/2] so the density is exactly symmetric about pi/2
    folded = np.where(inside, np.minimum(theta, np.pi - theta), 0.0)
    s = np.sin(folded)
    positive = inside & (s > 0)
    logs = np.log(np.where(positive, s, 1.0))
    out = np.where(positive, sphere_constant(p) * np.exp((p - 2.0) * logs), 0.0)
    return _scalar_or_array(out)


def cosine_density(rho, p):
    """Density of the cosine (dot product) of two independent uniform unit vectors."""
    _check_p(p)
    rho = np.asarray(rho, dtype=np.float64)
    inside = np.abs(rho) < 1.0
    one_minus = np.where(inside, (1.0 - rho) * (1.0 + rho), 1.0)
    out = np.where(inside, sphere_constant(p) * np.exp(0.5 * (p - 3.0) * np.log(one_minus)), 0.0)
    return _scalar_or_array(out)


def _half_tail(c2, s2, p):
    """0.5 * P(rho^2 >= c2) given c2 = cos^2 and s2 = sin^2 = 1 - c2 of the same angle.

    rho^2 is Beta(1/2, (p-1)/2) and 1 - rho^2 is Beta((p-1)/2, 1/2); use
    whichever argument is small so neither form loses digits.
    """
    b = 0.5 * (p - 1.0)
    head = special.betainc(0.5, b, c2)
    # complement by subtraction only when the tail is large; betaincc keeps tiny tails
    upper = np.where(head < 0.5, 1.0 - head, special.betaincc(0.5, b, c2))
    return np.where(c2 < 0.5, 0.5 * upper, 0.5 * special.betainc(b, 0.5, s2))


def cosine_cdf(rho, p):
    """P(rho_12 <= rho)."""
    _check_p(p)
    rho = np.clip(np.asarray(rho, dtype=np.float64), -1.0, 1.0)
    half_tail = _half_tail(rho * rho, (1.0 - rho) * (1.0 + rho), p)
    out = np.where(rho <= 0, half_tail, 1.0 - half_tail)
    return _scalar_or_array(out)


def angle_cdf(theta, p):
    _check_p(p)
    theta = np.clip(np.asarray(theta, dtype=np.float64), 0.0, np.pi)
    # P(Theta <= t) = P(rho >= cos t); fold onto [0, pi/2] to keep sin t accurate
    folded = np.minimum(theta, np.pi - theta)
    lower = _half_tail(np.cos(folded) ** 2, np.sin(folded) ** 2, p)
    out = np.where(theta <= np.pi / 2, lower, 1.0 - lower)
    return _scalar_or_array(out)


def normalized_angle_density(x, p):
    """Density of sqrt(p - 2) * (pi/2 - Theta) for one pair of uniform points."""
    _check_p(p, 3)
    scale = math.sqrt(p - 2.0)
    x = np.asarray(x, dtype=np.float64)
    out = np.asarray(angle_density(np.pi / 2 - x / scale, p)) / scale
    return _scalar_or_array(out)


def normalized_angle_cdf(x, p):
    _check_p(p, 3)
    scale = math.sqrt(p - 2.0)
    x = np.asarray(x, dtype=np.float64)
    # symmetric about pi/2, so P(pi/2 - T <= t) = P(T <= pi/2 + t)
    return angle_cdf(np.pi / 2 + x / scale, p)


# ---------------------------------------------------------------------------
# fixed dimension extremes


def fixed_p_constant(p):
    """K = Gamma(p/2) / (4 sqrt(pi) Gamma((p+1)/2))."""
    _check_p(p)
    return float(gamma_ratio(p / 2.0, (p + 1.0) / 2.0)) / (4.0 * math.sqrt(math.pi))


def one_minus_mn_constant(p):
    """K_1 = 2^((p-5)/2) Gamma(p/2) / (sqrt(pi) Gamma((p+1)/2))."""
    _check_p(p)
    return 2.0 ** ((p - 5.0) / 2.0) * float(gamma_ratio(p / 2.0, (p + 1.0) / 2.0)) / math.sqrt(math.pi)


def _weibull_cdf(x, k, shape):
    x = np.asarray(x, dtype=np.float64)
    pos = np.where(x > 0, x, 0.0)
    out = np.where(x > 0, -np.expm1(-k * pos**shape), 0.0)
    return _scalar_or_array(out)


def _weibull_pdf(x, k, shape):
    x = np.asarray(x, dtype=np.float64)
    pos = np.where(x > 0, x, 1.0)
    # log space: pos**(shape - 1) alone overflows for large shape
    with np.errstate(over="ignore"):
        log_dens = math.log(k * shape) + (shape - 1.0) * np.log(pos) - k * pos**shape
    dens = np.exp(log_dens)
    out = np.where(x > 0, dens, 0.0)
    return _scalar_or_array(out)


def _check_unit(u):
    u = np.asarray(u, dtype=np.float64)
    if np.any(~((u > 0) & (u < 1))):
        raise ValueError("quantile level must lie in the open interval (0, 1)")
    return u


def _weibull_quantile(u, k, shape):
    u = _check_unit(u)
    return _scalar_or_array((-np.log1p(-u) / k) ** (1.0 / shape))


def fixed_p_extreme_cdf(x, p):
    """Limit CDF of n^{2/(p-1)} * Theta_min (and of n^{2/(p-1)} (pi - Theta_max))."""
    return _weibull_cdf(x, fixed_p_constant(p), p - 1.0)


def fixed_p_extreme_pdf(x, p):
    return _weibull_pdf(x, fixed_p_constant(p), p - 1.0)


def fixed_p_extreme_quantile(u, p):
    return _weibull_quantile(u, fixed_p_constant(p), p - 1.0)


def one_minus_mn_cdf(x, p):
    """Limit CDF of n^{4/(p-1)} (1 - M_n), M_n the largest pairwise cosine."""
    return _weibull_cdf(x, one_minus_mn_constant(p), (p - 1.0) / 2.0)


# ---------------------------------------------------------------------------
# sum of extremes: law of X - Y with X, Y iid fixed_p_extreme

# Y = s E^{1/a} with E ~ Exp(1), a = p - 1, s = K^{-1/a}; integrate over w = log E,
# whose density exp(w - e^w) is smooth, so the integrand stays smooth even when
# the law of Y is a sharp spike (large p).
_W_RANGE = (-45.0, 4.0)  # log-Exp(1) mass outside is below 1e-19
_QUAD = dict(epsabs=1e-15, epsrel=1e-12, limit=400)


def _sum_setup(p):
    a = p - 1.0
    return a, fixed_p_constant(p) ** (-1.0 / a)


def _log_t(w, zeta, a):
    # log of (Y + z) / s expressed through w, for zeta = z / s >= 0
    return w / a + math.log1p(zeta * math.exp(-w / a))


def _sum_law_upper_tail(z, p):
    """P(X - Y > z) for z >= 0."""
    a, s = _sum_setup(p)
    zeta = z / s

    def integrand(w):
        return math.exp(w - math.exp(w) - math.exp(a * _log_t(w, zeta, a)))

    val, _ = integrate.quad(integrand, *_W_RANGE, points=[0.0], **_QUAD)
    return val


def _sum_law_cdf_scalar(z, p):
    if z >= 0:
        return 1.0 - _sum_law_upper_tail(z, p)
    return _sum_law_upper_tail(-z, p)


def _sum_law_pdf_scalar(z, p):
    a, s = _sum_setup(p)
    zeta = abs(z) / s

    def integrand(w):
        lt = _log_t(w, zeta, a)
        return math.exp(w - math.exp(w) + (a - 1.0) * lt - math.exp(a * lt))

    val, _ = integrate.quad(integrand, *_W_RANGE, points=[0.0], **_QUAD)
    return a / s * val


def sum_law_cdf(z, p):
    """P(X - Y <= z) for X, Y iid with the fixed-p extreme law.

    Computed as E[F(Y + z)] over w = log(K Y^{p-1}); negative z uses the
    symmetry of X - Y.
    """
    _check_p(p)
    z = np.asarray(z, dtype=np.float64)
    out = np.vectorize(lambda t: _sum_law_cdf_scalar(float(t), p), otypes=[float])(z)
    return _scalar_or_array(out)


def sum_law_pdf(z, p):
    _check_p(p)
    z = np.asarray(z, dtype=np.float64)
    out = np.vectorize(lambda t: _sum_law_pdf_scalar(float(t), p), otypes=[float])(z)
    return _scalar_or_array(out)


# ---------------------------------------------------------------------------
# growing dimension pivots


def _gumbel_max_cdf(y, c, shift):
    y = np.asarray(y, dtype=np.float64)
    with np.errstate(over="ignore"):
        out = -np.expm1(-c * np.exp((y + shift) / 2.0))
    return _scalar_or_array(out)


def _gumbel_max_pdf(y, c, shift):
    y = np.asarray(y, dtype=np.float64)
    with np.errstate(over="ignore", invalid="ignore"):
        t = c * np.exp((y + shift) / 2.0)
        out = np.where(np.isfinite(t), 0.5 * t * np.exp(-t), 0.0)
    return _scalar_or_array(out)


def _gumbel_max_quantile(u, c, shift):
    u = _check_unit(u)
    return _scalar_or_array(2.0 * np.log(-np.log1p(-u) / c) - shift)


def exp_regime_constant(beta):
    """K(beta) = sqrt(beta / (8 pi (1 - e^{-4 beta})))."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return math.sqrt(beta / (8.0 * math.pi * -math.expm1(-4.0 * beta)))


def subexp_pivot_cdf(y):
    """Limit CDF of 2p log sin Theta_min + 4 log n - log log n when log(n)/p -> 0."""
    return _gumbel_max_cdf(y, SUBEXP_CONSTANT, 0.0)


def exp_regime_pivot_cdf(y, beta):
    """Same pivot as the sub-exponential case when log(n)/p -> beta."""
    return _gumbel_max_cdf(y, exp_regime_constant(beta), 8.0 * beta)


def superexp_pivot_cdf(y):
    """Limit CDF of 2p log sin Theta_min + 4p/(p-1) log n - log p when log(n)/p -> inf."""
    return _gumbel_max_cdf(y, SUPEREXP_CONSTANT, 0.0)


def corollary_pivot_cdf(y, alpha):
    """Limit CDF of p cos^2 Theta_min - 4 log n + log log n when log(n)/sqrt(p) -> alpha."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    y = np.asarray(y, dtype=np.float64)
    with np.errstate(over="ignore"):
        out = np.exp(-SUBEXP_CONSTANT * np.exp(-(y + 8.0 * alpha**2) / 2.0))
    return _scalar_or_array(out)


def exp_regime_limit_angle(beta):
    """In-probability limits of (Theta_min, Theta_max) when log(n)/p -> beta."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    theta = math.acos(math.sqrt(-math.expm1(-4.0 * beta)))
    return theta, math.pi - theta


REGIMES = ("sub-exponential", "exponential", "super-exponential", "corollary")


@dataclass(frozen=True)
class PivotSpec:
    regime: str
    n: int
    p: int
    beta: float | None = None
    alpha: float | None = None

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")
        if self.regime == "exponential" and not (self.beta is not None and self.beta > 0):
            raise ValueError("exponential regime needs beta > 0")
        if self.regime == "corollary" and not (self.alpha is not None and self.alpha >= 0):
            raise ValueError("corollary regime needs alpha >= 0")

    def limit(self) -> "LimitLaw":
        """The law the pivot converges to under this regime."""
        if self.regime == "sub-exponential":
            return limit_law("subexp-pivot")
        if self.regime == "exponential":
            return limit_law("exp-regime-pivot", beta=self.beta)
        if self.regime == "super-exponential":
            return limit_law("superexp-pivot")
        return limit_law("corollary-pivot", alpha=self.alpha)


def pivot_transform(extremes, spec: PivotSpec, which: str = "min") -> float:
    """Pivot statistic for Theta_min or Theta_max under ``spec.regime``.

    Returns ``-inf`` when the angle sits exactly at 0 or pi, where log sin
    diverges.  Raises :class:`PivotUndefinedError` when n <= e for the pivots
    containing log log n.
    """
    if which not in ("min", "max"):
        raise ValueError("which must be 'min' or 'max'")
    theta = extremes.theta_min if which == "min" else extremes.theta_max
    n, p = spec.n, spec.p
    if spec.regime == "super-exponential":
        if p < 2:
            raise PivotUndefinedError("super-exponential pivot needs p >= 2")
        tail = 4.0 * p / (p - 1.0) * math.log(n) - math.log(p)
    else:
        if n <= math.e:
            raise PivotUndefinedError(f"log log n is undefined or negative for n={n}")
        tail = 4.0 * math.log(n) - math.log(math.log(n))
    if spec.regime == "corollary":
        return p * math.cos(theta) ** 2 - tail
    s = math.sin(theta)
    if s <= 0.0:
        return -math.inf
    return 2.0 * p * math.log(s) + tail


def regime_classify(n: int, p: int):
    """Advisory regime label for a finite design, returned with ratio log(n)/p."""
    if n < 2 or p < 2:
        raise ValueError(f"invalid dimension: n={n}, p={p}")
    ratio = math.log(n) / p
    if ratio < SUBEXP_THRESHOLD:
        return "sub-exponential", ratio
    if ratio <= SUPEREXP_THRESHOLD:
        return "exponential", ratio
    return "super-exponential", ratio


# ---------------------------------------------------------------------------
# LimitLaw objects


def _invert_cdf(cdf, pdf, u, lo, hi, tol=1e-13):
    """Safeguarded bisection/Newton solve of cdf(x) = u inside [lo, hi]."""
    flo, fhi = cdf(lo) - u, cdf(hi) - u
    if flo > 0 or fhi < 0:
        raise ValueError("quantile bracket does not contain the level")
    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = cdf(x) - u
        if abs(fx) <= tol:
            return x
        if fx > 0:
            hi = x
        else:
            lo = x
        d = pdf(x)
        step = x - fx / d if d > 0 else None
        x = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4e-16 * max(1.0, abs(lo), abs(hi)):
            return 0.5 * (lo + hi)
    return x


@dataclass(frozen=True)
class LimitLaw:
    """A one-dimensional limit distribution with ``pdf``, ``cdf`` and ``quantile``."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _LAWS:
            raise ValueError(f"unknown law {self.kind!r}; expected one of {sorted(_LAWS)}")
        _LAWS[self.kind]["check"](**self.params)

    def _impl(self, name):
        return _LAWS[self.kind][name]

    def pdf(self, x):
        return self._impl("pdf")(x, **self.params)

    def cdf(self, x):
        return self._impl("cdf")(x, **self.params)

    def quantile(self, u):
        closed = _LAWS[self.kind].get("quantile")
        if closed is not None:
            return closed(u, **self.params)
        u = _check_unit(u)
        bracket = self._impl("bracket")(**self.params)

        def solve(level):
            lo, hi = bracket
            while self.cdf(lo) > level:
                lo = lo - (hi - lo)
            while self.cdf(hi) < level:
                hi = hi + (hi - lo)
            return _invert_cdf(lambda t: float(self.cdf(t)), lambda t: float(self.pdf(t)), float(level), lo, hi)

        out = np.vectorize(solve, otypes=[float])(u)
        return _scalar_or_array(out)

    ppf = quantile


def _need_p(minimum):
    def check(p):
        _check_p(p, minimum)
    return check


def _no_params():
    return None


def _check_beta(beta):
    exp_regime_constant(beta)


def _check_alpha(alpha):
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")


def _sum_bracket(p):
    scale = fixed_p_constant(p) ** (-1.0 / (p - 1.0))
    return -scale, scale


_LAWS = {
    "angle-density": dict(
        check=_need_p(2), pdf=angle_density, cdf=angle_cdf, bracket=lambda p: (0.0, math.pi)),
    "normalized-angle-density": dict(
        check=_need_p(3), pdf=normalized_angle_density, cdf=normalized_angle_cdf,
        bracket=lambda p: (-math.sqrt(p - 2.0) * math.pi / 2, math.sqrt(p - 2.0) * math.pi / 2)),
    "cosine-density": dict(
        check=_need_p(2), pdf=cosine_density, cdf=cosine_cdf, bracket=lambda p: (-1.0, 1.0)),
    "fixed-p-extreme": dict(
        check=_need_p(2), pdf=fixed_p_extreme_pdf, cdf=fixed_p_extreme_cdf, quantile=fixed_p_extreme_quantile),
    "one-minus-mn": dict(
        check=_need_p(2),
        pdf=lambda x, p: _weibull_pdf(x, one_minus_mn_constant(p), (p - 1.0) / 2.0),
        cdf=one_minus_mn_cdf,
        quantile=lambda u, p: _weibull_quantile(u, one_minus_mn_constant(p), (p - 1.0) / 2.0)),
    "sum-law": dict(check=_need_p(2), pdf=sum_law_pdf, cdf=sum_law_cdf, bracket=_sum_bracket),
    "subexp-pivot": dict(
        check=_no_params,
        pdf=lambda y: _gumbel_max_pdf(y, SUBEXP_CONSTANT, 0.0),
        cdf=subexp_pivot_cdf,
        quantile=lambda u: _gumbel_max_quantile(u, SUBEXP_CONSTANT, 0.0)),
    "exp-regime-pivot": dict(
        check=_check_beta,
        pdf=lambda y, beta: _gumbel_max_pdf(y, exp_regime_constant(beta), 8.0 * beta),
        cdf=exp_regime_pivot_cdf,
        quantile=lambda u, beta: _gumbel_max_quantile(u, exp_regime_constant(beta), 8.0 * beta)),
    "superexp-pivot": dict(
        check=_no_params,
        pdf=lambda y: _gumbel_max_pdf(y, SUPEREXP_CONSTANT, 0.0),
        cdf=superexp_pivot_cdf,
        quantile=lambda u: _gumbel_max_quantile(u, SUPEREXP_CONSTANT, 0.0)),
    "corollary-pivot": dict(check=_check_alpha, pdf=None, cdf=corollary_pivot_cdf, quantile=None),
}


def _corollary_pdf(y, alpha):
    y = np.asarray(y, dtype=np.float64)
    with np.errstate(over="ignore", invalid="ignore"):
        t = SUBEXP_CONSTANT * np.exp(-(y + 8.0 * alpha**2) / 2.0)
        out = np.where(np.isfinite(t), 0.5 * t * np.exp(-t), 0.0)
    return _scalar_or_array(out)


def _corollary_quantile(u, alpha):
    u = _check_unit(u)
    return _scalar_or_array(-2.0 * np.log(-np.log(u) / SUBEXP_CONSTANT) - 8.0 * alpha**2)


_LAWS["corollary-pivot"].update(pdf=_corollary_pdf, quantile=_corollary_quantile)

LAW_KINDS = tuple(_LAWS)


def limit_law(kind: str, **params) -> LimitLaw:
    """Build a :class:`LimitLaw`, e.g. ``limit_law("fixed-p-extreme", p=3)``."""
    return LimitLaw(kind, dict(params))
