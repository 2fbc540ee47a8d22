"""Parameter records, validation, density/pmf evaluation and density suprema.

Eleven families are supported.  Records are immutable; constructing one
with out-of-range parameters raises ParameterError, never silently
adjusts.  All logarithms throughout the toolkit are natural logs.

Density and mass evaluation is done in log space and vectorizes over
numpy arrays, which is what the quadrature and series oracles consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FamilyMismatchError, ParameterError, UnboundedDensityError
from .special import log_gamma

_LOG_2PI = math.log(2.0 * math.pi)


def _check(cond, msg):
    if not cond:
        raise ParameterError(msg)


def _finite(*vals):
    return all(isinstance(v, (int, float)) and math.isfinite(v) for v in vals)


@dataclass(frozen=True)
class Distribution:
    """Base record; concrete families subclass this."""

    @property
    def is_discrete(self) -> bool:
        return isinstance(self, _DISCRETE)


@dataclass(frozen=True)
class Gamma(Distribution):
    lam: float
    mu: float

    def __post_init__(self):
        _check(_finite(self.lam, self.mu) and self.lam > 0 and self.mu > 0,
               f"gamma requires lambda > 0 and mu > 0, got lambda={self.lam}, mu={self.mu}")


@dataclass(frozen=True)
class Exponential(Distribution):
    lam: float

    def __post_init__(self):
        _check(_finite(self.lam) and self.lam > 0,
               f"exponential requires lambda > 0, got {self.lam}")


@dataclass(frozen=True)
class ChiSquared(Distribution):
    nu: int

    def __post_init__(self):
        _check(isinstance(self.nu, int) and self.nu >= 1,
               f"chi-squared requires integer nu >= 1, got {self.nu}")

    def as_gamma(self) -> Gamma:
        """The equivalent Gamma(lambda=1/2, mu=nu/2) record."""
        return Gamma(0.5, self.nu / 2.0)


@dataclass(frozen=True)
class Laplace(Distribution):
    mu: float
    lam: float

    def __post_init__(self):
        _check(_finite(self.mu, self.lam) and self.lam > 0,
               f"laplace requires finite mu and lambda > 0, got mu={self.mu}, lambda={self.lam}")


@dataclass(frozen=True)
class LogNormal(Distribution):
    m: float
    sigma2: float

    def __post_init__(self):
        _check(_finite(self.m, self.sigma2) and self.sigma2 > 0,
               f"log-normal requires finite m and sigma2 > 0, got m={self.m}, sigma2={self.sigma2}")


@dataclass(frozen=True)
class Normal(Distribution):
    mean: float
    sigma2: float

    def __post_init__(self):
        _check(_finite(self.mean, self.sigma2) and self.sigma2 > 0,
               f"normal requires finite mean and sigma2 > 0, got mean={self.mean}, sigma2={self.sigma2}")


@dataclass(frozen=True)
class Uniform(Distribution):
    a: float
    b: float

    def __post_init__(self):
        _check(_finite(self.a, self.b) and self.a < self.b,
               f"uniform requires a < b, got a={self.a}, b={self.b}")


@dataclass(frozen=True)
class Poisson(Distribution):
    lam: float

    def __post_init__(self):
        _check(_finite(self.lam) and self.lam > 0,
               f"poisson requires lambda > 0, got {self.lam}")


@dataclass(frozen=True)
class Binomial(Distribution):
    n: int
    p: float

    def __post_init__(self):
        _check(isinstance(self.n, int) and self.n >= 1,
               f"binomial requires integer n >= 1, got n={self.n}")
        _check(_finite(self.p) and 0.0 < self.p < 1.0,
               f"binomial requires p in (0, 1), got p={self.p}")


@dataclass(frozen=True)
class NegBinomialConditional(Distribution):
    """Negative binomial conditioned on a strictly positive outcome.

    Only the conditional law P{X = k | X > 0}, k >= 1, is exposed; it is
    the object whose small-r limit is the logarithmic distribution.
    """

    p: float
    r: float

    def __post_init__(self):
        _check(_finite(self.p) and 0.0 < self.p < 1.0,
               f"nbcond requires p in (0, 1), got p={self.p}")
        _check(_finite(self.r) and self.r > 0,
               f"nbcond requires r > 0, got r={self.r}")


@dataclass(frozen=True)
class Logarithmic(Distribution):
    p: float

    def __post_init__(self):
        _check(_finite(self.p) and 0.0 < self.p < 1.0,
               f"logarithmic requires p in (0, 1), got p={self.p}")


_DISCRETE = (Poisson, Binomial, NegBinomialConditional, Logarithmic)


@dataclass(frozen=True)
class DensityBound:
    """Supremum M of a bounded density and where it is attained (None if everywhere)."""

    M: float
    attained_at: float | None


def logpdf(d: Distribution, x):
    """Log-density at x (scalar or array); -inf outside the support."""
    if d.is_discrete:
        raise FamilyMismatchError(f"{type(d).__name__} is discrete; use pmf/logpmf")
    x = np.asarray(x, dtype=float)
    if isinstance(d, ChiSquared):
        return logpdf(d.as_gamma(), x)
    if isinstance(d, Gamma):
        with np.errstate(divide="ignore", invalid="ignore"):
            lx = np.log(np.where(x > 0, x, 1.0))
            out = d.mu * math.log(d.lam) - log_gamma(d.mu) + (d.mu - 1.0) * lx - d.lam * x
        return np.where(x > 0, out, -np.inf)
    if isinstance(d, Exponential):
        return np.where(x > 0, math.log(d.lam) - d.lam * x, -np.inf)
    if isinstance(d, Laplace):
        return math.log(d.lam / 2.0) - d.lam * np.abs(x - d.mu)
    if isinstance(d, LogNormal):
        with np.errstate(divide="ignore", invalid="ignore"):
            lx = np.log(np.where(x > 0, x, 1.0))
            out = (-lx - 0.5 * math.log(d.sigma2) - 0.5 * _LOG_2PI
                   - (lx - d.m) ** 2 / (2.0 * d.sigma2))
        return np.where(x > 0, out, -np.inf)
    if isinstance(d, Normal):
        return -0.5 * (_LOG_2PI + math.log(d.sigma2)) - (x - d.mean) ** 2 / (2.0 * d.sigma2)
    if isinstance(d, Uniform):
        inside = (x >= d.a) & (x <= d.b)
        return np.where(inside, -math.log(d.b - d.a), -np.inf)
    raise FamilyMismatchError(f"unknown family {type(d).__name__}")


def pdf(d: Distribution, x):
    """Density at x; 0 outside the support."""
    out = np.exp(logpdf(d, x))
    return float(out) if np.ndim(out) == 0 else out


def logpmf(d: Distribution, k):
    """Log-probability at integer k (scalar or array); -inf outside the support."""
    if not d.is_discrete:
        raise FamilyMismatchError(f"{type(d).__name__} is continuous; use pdf/logpdf")
    k = np.asarray(k, dtype=float)
    if isinstance(d, Poisson):
        ok = (k >= 0) & (k == np.floor(k))
        ks = np.where(ok, k, 0.0)
        out = ks * math.log(d.lam) - d.lam - log_gamma(ks + 1.0)
        return np.where(ok, out, -np.inf)
    if isinstance(d, Binomial):
        ok = (k >= 0) & (k <= d.n) & (k == np.floor(k))
        ks = np.where(ok, k, 0.0)
        out = (log_gamma(d.n + 1.0) - log_gamma(ks + 1.0) - log_gamma(d.n - ks + 1.0)
               + ks * math.log(d.p) + (d.n - ks) * math.log1p(-d.p))
        return np.where(ok, out, -np.inf)
    if isinstance(d, NegBinomialConditional):
        ok = (k >= 1) & (k == np.floor(k))
        ks = np.where(ok, k, 1.0)
        # log(1 - p^r) via expm1 keeps precision for r near 0
        log_one_minus_pr = math.log(-math.expm1(d.r * math.log(d.p)))
        out = (log_gamma(ks + d.r) - log_gamma(d.r) - log_gamma(ks + 1.0)
               + ks * math.log1p(-d.p) + d.r * math.log(d.p) - log_one_minus_pr)
        return np.where(ok, out, -np.inf)
    if isinstance(d, Logarithmic):
        ok = (k >= 1) & (k == np.floor(k))
        ks = np.where(ok, k, 1.0)
        out = ks * math.log1p(-d.p) - np.log(ks) - math.log(-math.log(d.p))
        return np.where(ok, out, -np.inf)
    raise FamilyMismatchError(f"unknown family {type(d).__name__}")


def pmf(d: Distribution, k):
    """Probability mass at k; 0 outside the support."""
    out = np.exp(logpmf(d, k))
    return float(out) if np.ndim(out) == 0 else out


def density_sup(d: Distribution) -> DensityBound:
    """Exact supremum of the density of a bounded continuous family.

    Raises UnboundedDensityError for Gamma with mu < 1 (equivalently
    chi-squared with nu = 1), whose density blows up at 0.
    """
    if d.is_discrete:
        raise FamilyMismatchError(f"{type(d).__name__} is discrete; densities only")
    if isinstance(d, ChiSquared):
        bound = density_sup(d.as_gamma())
        return bound
    if isinstance(d, Gamma):
        if d.mu < 1.0:
            raise UnboundedDensityError(
                f"gamma density with mu = {d.mu} < 1 is unbounded at 0; "
                "the modified Shannon entropy does not exist")
        if d.mu == 1.0:
            return DensityBound(d.lam, 0.0)
        mode = (d.mu - 1.0) / d.lam
        log_m = (d.mu * math.log(d.lam) - log_gamma(d.mu)
                 + (d.mu - 1.0) * math.log(mode) - (d.mu - 1.0))
        return DensityBound(math.exp(log_m), mode)
    if isinstance(d, Exponential):
        return DensityBound(d.lam, 0.0)
    if isinstance(d, Laplace):
        return DensityBound(d.lam / 2.0, d.mu)
    if isinstance(d, LogNormal):
        sigma = math.sqrt(d.sigma2)
        m_val = math.exp(0.5 * d.sigma2 - d.m) / (sigma * math.sqrt(2.0 * math.pi))
        return DensityBound(m_val, math.exp(d.m - d.sigma2))
    if isinstance(d, Normal):
        return DensityBound(1.0 / math.sqrt(2.0 * math.pi * d.sigma2), d.mean)
    if isinstance(d, Uniform):
        return DensityBound(1.0 / (d.b - d.a), None)
    raise FamilyMismatchError(f"unknown family {type(d).__name__}")


# --- textual parameter syntax used by the CLI -------------------------------

_SPEC_TABLE = {
    "gamma": (Gamma, (("lambda", "lam", float), ("mu", "mu", float))),
    "exp": (Exponential, (("lambda", "lam", float),)),
    "chisq": (ChiSquared, (("nu", "nu", int),)),
    "laplace": (Laplace, (("mu", "mu", float), ("lambda", "lam", float))),
    "lognormal": (LogNormal, (("m", "m", float), ("sigma2", "sigma2", float))),
    "normal": (Normal, (("mean", "mean", float), ("sigma2", "sigma2", float))),
    "uniform": (Uniform, (("a", "a", float), ("b", "b", float))),
    "poisson": (Poisson, (("lambda", "lam", float),)),
    "binomial": (Binomial, (("n", "n", int), ("p", "p", float))),
    "nbcond": (NegBinomialConditional, (("p", "p", float), ("r", "r", float))),
    "logarithmic": (Logarithmic, (("p", "p", float),)),
}


def parse_spec(text: str) -> Distribution:
    """Parse 'family:key=val,key=val' into a Distribution, e.g. 'gamma:lambda=1,mu=2'."""
    head, sep, rest = text.strip().partition(":")
    family = head.strip().lower()
    if family not in _SPEC_TABLE:
        raise ParameterError(
            f"unknown family {family!r}; expected one of {', '.join(sorted(_SPEC_TABLE))}")
    cls, fields = _SPEC_TABLE[family]
    if not sep or not rest.strip():
        raise ParameterError(f"family {family!r} needs parameters, e.g. "
                             + family + ":" + ",".join(f"{k}=..." for k, _, _ in fields))
    given = {}
    for item in rest.split(","):
        key, eq, val = item.partition("=")
        if not eq:
            raise ParameterError(f"malformed parameter {item!r}; expected key=value")
        given[key.strip().lower()] = val.strip()
    kwargs = {}
    for key, attr, conv in fields:
        if key not in given:
            raise ParameterError(f"family {family!r} is missing parameter {key!r}")
        raw = given.pop(key)
        try:
            kwargs[attr] = conv(raw)
        except ValueError as exc:
            raise ParameterError(f"parameter {key}={raw!r} is not a valid {conv.__name__}") from exc
    if given:
        raise ParameterError(f"unknown parameter(s) {sorted(given)} for family {family!r}")
    return cls(**kwargs)


def format_spec(d: Distribution) -> str:
    """Inverse of parse_spec, used for CSV headers and error messages."""
    for name, (cls, fields) in _SPEC_TABLE.items():
        if type(d) is cls:
            parts = ",".join(f"{key}={getattr(d, attr):g}" for key, attr, _ in fields)
            return f"{name}:{parts}"
    raise ParameterError(f"unknown family {type(d).__name__}")
