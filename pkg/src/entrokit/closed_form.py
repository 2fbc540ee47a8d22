"""Closed-form entropy measures, divergence and the modified entropy.

Seven measures are implemented: Shannon, Renyi(alpha), one-parameter
generalized Renyi GR1(alpha), Tsallis(alpha), two-parameter generalized
Renyi GR2(alpha, beta), Sharma-Mittal(alpha, beta) and the modified
Shannon entropy for bounded densities.

Everything except Shannon and GR1 factors through the power integral
J(alpha) = integral of p**alpha, for which each continuous family has a
closed log-form:

    renyi   = log J(alpha) / (1 - alpha)
    tsallis = (J(alpha) - 1) / (1 - alpha)
    gr2     = (log J(alpha) - log J(beta)) / (beta - alpha)
    sm      = (J(alpha)**((1-beta)/(1-alpha)) - 1) / (1 - beta)

Chi-squared is evaluated by delegation to Gamma(1/2, nu/2) rather than
by its own formula table; the printed chi-squared formulas serve as test
assertions instead.  Shannon entropies of the discrete families have no
closed form and are computed by the certified series engine, sharing one
code path with the oracle.

Order-parameter domains are enforced eagerly: a Gamma or chi-squared
power integral only exists for alpha*(mu-1) > -1, and violations raise
ValidityDomainError carrying the violated inequality, never NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .distributions import (ChiSquared, DensityBound, Distribution, Exponential,
                            Gamma, Laplace, LogNormal, Normal, Uniform,
                            density_sup)
from .errors import ParameterError, UnsupportedFamilyError, ValidityDomainError
from .special import digamma, log_gamma

_LOG_2PI = math.log(2.0 * math.pi)
_ORDER_EPS = 1e-10

MEASURES = ("shannon", "renyi", "gr1", "tsallis", "gr2", "sm", "modified")

_DEFAULT_SERIES_CFG = oracle.OracleConfig()


@dataclass(frozen=True)
class EntropySpec:
    """Which measure to evaluate plus its order parameters.

    measure is one of MEASURES.  alpha is required for renyi, gr1,
    tsallis, gr2 and sm; beta for gr2 and sm.  Orders within 1e-10 of a
    forbidden value (1 for renyi/tsallis/sm, alpha == beta for gr2) are
    rejected outright instead of being silently nudged.
    """

    measure: str
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ParameterError(
                f"unknown measure {self.measure!r}; expected one of {MEASURES}")
        needs_alpha = self.measure in ("renyi", "gr1", "tsallis", "gr2", "sm")
        needs_beta = self.measure in ("gr2", "sm")
        if needs_alpha:
            _check_order("alpha", self.alpha,
                         exclude_one=self.measure in ("renyi", "tsallis", "sm"))
        elif self.alpha is not None:
            raise ParameterError(f"measure {self.measure!r} takes no alpha")
        if needs_beta:
            _check_order("beta", self.beta, exclude_one=self.measure == "sm")
            if abs(self.alpha - self.beta) < _ORDER_EPS:
                raise ParameterError(
                    f"measure {self.measure!r} requires alpha != beta, "
                    f"got alpha={self.alpha}, beta={self.beta}")
        elif self.beta is not None:
            raise ParameterError(f"measure {self.measure!r} takes no beta")


def _check_order(name, value, exclude_one):
    if value is None or not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise ParameterError(f"{name} must be a finite positive real, got {value}")
    if value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")
    if exclude_one and abs(value - 1.0) < _ORDER_EPS:
        raise ParameterError(f"{name} must differ from 1, got {value}")


def _gamma_order_domain(alpha: float, mu: float, label: str):
    v = alpha * (mu - 1.0)
    if v <= -1.0:
        raise ValidityDomainError(
            f"{label}*(mu-1) = {v:.6g} <= -1: the power integral of the "
            f"gamma density diverges for {label}={alpha:.6g}, mu={mu:.6g}")


def _log_power_integral(d: Distribution, alpha: float, label: str = "alpha") -> float:
    """log of J(alpha) = integral p**alpha, per family."""
    if isinstance(d, ChiSquared):
        return _log_power_integral(d.as_gamma(), alpha, label)
    if isinstance(d, Gamma):
        _gamma_order_domain(alpha, d.mu, label)
        a = alpha * (d.mu - 1.0)
        return ((alpha - 1.0) * math.log(d.lam) - (a + 1.0) * math.log(alpha)
                + log_gamma(a + 1.0) - alpha * log_gamma(d.mu))
    if isinstance(d, Exponential):
        return (alpha - 1.0) * math.log(d.lam) - math.log(alpha)
    if isinstance(d, Laplace):
        return (alpha - 1.0) * math.log(d.lam / 2.0) - math.log(alpha)
    if isinstance(d, LogNormal):
        return ((1.0 - alpha) * (0.5 * math.log(d.sigma2) + 0.5 * _LOG_2PI + d.m)
                - 0.5 * math.log(alpha)
                + d.sigma2 * (1.0 - alpha) ** 2 / (2.0 * alpha))
    if isinstance(d, Normal):
        return ((1.0 - alpha) * (0.5 * math.log(d.sigma2) + 0.5 * _LOG_2PI)
                - 0.5 * math.log(alpha))
    if isinstance(d, Uniform):
        return (1.0 - alpha) * math.log(d.b - d.a)
    raise UnsupportedFamilyError(
        f"no closed-form power integral for {type(d).__name__}")


def shannon(d: Distribution) -> float:
    """Shannon entropy; may be negative for continuous families.

    Discrete families are summed by the certified series engine, since
    their entropies have no finite closed form.
    """
    if d.is_discrete:
        return -oracle.discrete_entropy_sum(d, "p_log_p", 1.0, _DEFAULT_SERIES_CFG).value
    if isinstance(d, ChiSquared):
        return shannon(d.as_gamma())
    if isinstance(d, Gamma):
        return (-math.log(d.lam) + log_gamma(d.mu) + d.mu
                - digamma(d.mu) * (d.mu - 1.0))
    if isinstance(d, Exponential):
        return 1.0 - math.log(d.lam)
    if isinstance(d, Laplace):
        return 1.0 - math.log(d.lam / 2.0)
    if isinstance(d, LogNormal):
        return 0.5 * math.log(d.sigma2) + 0.5 * _LOG_2PI + d.m + 0.5
    if isinstance(d, Normal):
        return 0.5 * (1.0 + _LOG_2PI) + 0.5 * math.log(d.sigma2)
    if isinstance(d, Uniform):
        return math.log(d.b - d.a)
    raise UnsupportedFamilyError(f"no Shannon entropy for {type(d).__name__}")


def renyi(alpha: float, d: Distribution) -> float:
    """Renyi entropy of order alpha (alpha > 0, alpha != 1)."""
    _check_order("alpha", alpha, exclude_one=True)
    return _log_power_integral(d, alpha) / (1.0 - alpha)


def generalized_renyi1(alpha: float, d: Distribution) -> float:
    """One-parameter generalized Renyi entropy: -int p**a log p / int p**a."""
    _check_order("alpha", alpha, exclude_one=False)
    if isinstance(d, ChiSquared):
        return generalized_renyi1(alpha, d.as_gamma())
    if isinstance(d, Gamma):
        _gamma_order_domain(alpha, d.mu, "alpha")
        a = alpha * (d.mu - 1.0)
        return (-math.log(d.lam) + log_gamma(d.mu) + (d.mu - 1.0) * math.log(alpha)
                - (d.mu - 1.0) * digamma(a + 1.0) + d.mu - 1.0 + 1.0 / alpha)
    if isinstance(d, Exponential):
        return -math.log(d.lam) + 1.0 / alpha
    if isinstance(d, Laplace):
        return -math.log(d.lam / 2.0) + 1.0 / alpha
    if isinstance(d, LogNormal):
        return (0.5 * math.log(d.sigma2) + 0.5 * _LOG_2PI + d.m + 1.0 / (2.0 * alpha)
                + d.sigma2 * (1.0 - alpha**2) / (2.0 * alpha**2))
    if isinstance(d, Normal):
        return 0.5 * math.log(d.sigma2) + 0.5 * _LOG_2PI + 1.0 / (2.0 * alpha)
    if isinstance(d, Uniform):
        return math.log(d.b - d.a)
    raise UnsupportedFamilyError(f"no GR1 closed form for {type(d).__name__}")


def tsallis(alpha: float, d: Distribution) -> float:
    """Tsallis entropy of order alpha (alpha > 0, alpha != 1)."""
    _check_order("alpha", alpha, exclude_one=True)
    return math.expm1(_log_power_integral(d, alpha)) / (1.0 - alpha)


def generalized_renyi2(alpha: float, beta: float, d: Distribution) -> float:
    """Two-parameter generalized Renyi entropy; symmetric in (alpha, beta)."""
    _check_order("alpha", alpha, exclude_one=False)
    _check_order("beta", beta, exclude_one=False)
    if abs(alpha - beta) < _ORDER_EPS:
        raise ParameterError(f"gr2 requires alpha != beta, got {alpha} and {beta}")
    log_ja = _log_power_integral(d, alpha, "alpha")
    log_jb = _log_power_integral(d, beta, "beta")
    return (log_ja - log_jb) / (beta - alpha)


def sharma_mittal(alpha: float, beta: float, d: Distribution) -> float:
    """Sharma-Mittal entropy (alpha, beta > 0, both != 1)."""
    _check_order("alpha", alpha, exclude_one=True)
    _check_order("beta", beta, exclude_one=True)
    log_j = _log_power_integral(d, alpha)
    return math.expm1(log_j * (1.0 - beta) / (1.0 - alpha)) / (1.0 - beta)


def modified_shannon(d: Distribution) -> float:
    """Modified Shannon entropy (1/M) H + log(M)/M; nonnegative.

    Requires a bounded density; propagates UnboundedDensityError from
    density_sup for Gamma with mu < 1 / chi-squared with nu = 1.
    """
    bound: DensityBound = density_sup(d)
    m = bound.M
    value = (shannon(d) + math.log(m)) / m
    # mathematically >= 0; rounding noise (uniform: log(w) + log(1/w)) is clipped
    if -1e-10 < value < 0.0:
        return 0.0
    return value


def kl_divergence(p: Distribution, q: Distribution) -> float:
    """Kullback-Leibler divergence of p from q for a same-family pair.

    Supported families: Gamma, Exponential, ChiSquared, Laplace,
    LogNormal.  Nonnegative, and exactly zero iff the parameters agree.
    """
    if type(p) is not type(q):
        raise UnsupportedFamilyError(
            f"kl_divergence needs a same-family pair, got "
            f"{type(p).__name__} and {type(q).__name__}")
    if isinstance(p, ChiSquared):
        return kl_divergence(p.as_gamma(), q.as_gamma())
    if isinstance(p, Gamma):
        return (q.mu * math.log(p.lam / q.lam) + p.mu * (q.lam / p.lam - 1.0)
                + log_gamma(q.mu) - log_gamma(p.mu)
                + (p.mu - q.mu) * digamma(p.mu))
    if isinstance(p, Exponential):
        return math.log(p.lam / q.lam) + q.lam / p.lam - 1.0
    if isinstance(p, Laplace):
        gap = abs(p.mu - q.mu)
        return (math.log(p.lam / q.lam)
                + (q.lam / p.lam) * (p.lam * gap + math.exp(-p.lam * gap)) - 1.0)
    if isinstance(p, LogNormal):
        return (0.5 * math.log(q.sigma2 / p.sigma2)
                + (p.sigma2 - q.sigma2 + (p.m - q.m) ** 2) / (2.0 * q.sigma2))
    raise UnsupportedFamilyError(
        f"no closed-form KL divergence for family {type(p).__name__}")


_MOMENT_KINDS = ("plain", "times_log", "times_centered_sq")


def lognormal_moment(p: float, m: float, sigma2: float, kind: str = "plain") -> float:
    """Closed-form lognormal expectations E X**p, E[X**p log X], E[X**p (log X - m)**2]."""
    if not (isinstance(sigma2, (int, float)) and sigma2 > 0):
        raise ParameterError(f"sigma2 must be positive, got {sigma2}")
    if kind not in _MOMENT_KINDS:
        raise ParameterError(f"kind must be one of {_MOMENT_KINDS}, got {kind!r}")
    base = math.exp(m * p + sigma2 * p * p / 2.0)
    if kind == "plain":
        return base
    if kind == "times_log":
        return (sigma2 * p + m) * base
    return sigma2 * (sigma2 * p * p + 1.0) * base


def evaluate(spec: EntropySpec, d: Distribution) -> float:
    """Dispatch a measure spec against a distribution."""
    if spec.measure == "shannon":
        return shannon(d)
    if spec.measure == "renyi":
        return renyi(spec.alpha, d)
    if spec.measure == "gr1":
        return generalized_renyi1(spec.alpha, d)
    if spec.measure == "tsallis":
        return tsallis(spec.alpha, d)
    if spec.measure == "gr2":
        return generalized_renyi2(spec.alpha, spec.beta, d)
    if spec.measure == "sm":
        return sharma_mittal(spec.alpha, spec.beta, d)
    return modified_shannon(d)
