"""Independent numerical ground truth for the closed forms.

Two engines live here and deliberately share nothing with the formula
code they are used to check:

* adaptive panel quadrature with an embedded Gauss(7)/Kronrod(15) pair
  for the error estimate.  Half-line integrals are mapped onto (0, 1)
  by x = scale * t / (1 - t); whole-line integrands are split at the
  density mode and each tail mapped the same way.  When the integrand
  is unbounded at 0 (gamma-type x**a with a in (-1, 0)) the initial
  mesh is graded geometrically toward the singular endpoint so the
  error estimate stays trustworthy.

* series summation for the discrete laws with a certified geometric
  tail: once the uniform one-step ratio bound q of the transformed
  terms is below 1, the remaining tail is at most term * q / (1 - q),
  reported with an extra factor-2 safety margin.

Every public routine returns its error estimate alongside the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import distributions as dist
from .errors import (FamilyMismatchError, NonConvergenceError, ParameterError,
                     SeriesBudgetError, UnsupportedFamilyError, ValidityDomainError)
from .distributions import (ChiSquared, Distribution, Exponential, Gamma, Laplace,
                            LogNormal, Normal, Uniform, logpdf, logpmf)


@dataclass(frozen=True)
class OracleConfig:
    """Tolerances and budgets for the quadrature and series oracles."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    series_tail_tol: float = 1e-14
    max_terms: int = 10**7

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0 and self.series_tail_tol > 0):
            raise ParameterError("oracle tolerances must be positive")
        if self.max_subdivisions < 1 or self.max_terms < 1:
            raise ParameterError("oracle budgets must be >= 1")


class QuadResult(NamedTuple):
    value: float
    error: float


class SeriesResult(NamedTuple):
    value: float
    tail_bound: float
    last_k: int


# 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 nodes/weights).
_XK = np.array([
    -0.9914553711208126392069, -0.9491079123427585245262,
    -0.8648644233597690727897, -0.7415311855993944398639,
    -0.5860872354676911302941, -0.4058451513773971669066,
    -0.2077849550078984676007, 0.0,
    0.2077849550078984676007, 0.4058451513773971669066,
    0.5860872354676911302941, 0.7415311855993944398639,
    0.8648644233597690727897, 0.9491079123427585245262,
    0.9914553711208126392069,
])
_WK = np.array([
    0.0229353220105292249637, 0.0630920926299785532907,
    0.1047900103222501838399, 0.1406532597155259187452,
    0.1690047266392679028266, 0.1903505780647854099133,
    0.2044329400752988924142, 0.2094821410847278280130,
    0.2044329400752988924142, 0.1903505780647854099133,
    0.1690047266392679028266, 0.1406532597155259187452,
    0.1047900103222501838399, 0.0630920926299785532907,
    0.0229353220105292249637,
])
_WG = np.array([
    0.0, 0.1294849661688696932706, 0.0, 0.2797053914892766679015,
    0.0, 0.3818300505051189449504, 0.0, 0.4179591836734693877551,
    0.0, 0.3818300505051189449504, 0.0, 0.2797053914892766679015,
    0.0, 0.1294849661688696932706, 0.0,
])


def _gk_apply(f, lo, hi):
    """Kronrod value and QUADPACK-style error estimate per panel."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = c[:, None] + h[:, None] * _XK[None, :]
    with np.errstate(all="ignore"):
        y = np.asarray(f(x.reshape(-1)), dtype=float).reshape(x.shape)
    k = (y * _WK).sum(axis=1) * h
    g = (y * _WG).sum(axis=1) * h
    d = np.abs(k - g)
    mean = k / np.where(h != 0.0, 2.0 * h, 1.0)
    resasc = (np.abs(y - mean[:, None]) * _WK).sum(axis=1) * h
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(resasc > 0.0, 200.0 * d / np.where(resasc > 0, resasc, 1.0), 0.0)
        err = np.where(resasc > 0.0, resasc * np.minimum(1.0, ratio**1.5), d)
    err = np.maximum(err, np.abs(k) * 5e-16)
    return k, err


def integrate_interval(f: Callable, breakpoints, cfg: OracleConfig) -> QuadResult:
    """Adaptive quadrature of f over the panels defined by breakpoints.

    Panels above their equidistributed error share are bisected until the
    summed estimate is under max(abs_tol, rel_tol * |integral|).
    """
    bp = np.asarray(breakpoints, dtype=float)
    lo, hi = bp[:-1], bp[1:]
    vals, errs = _gk_apply(f, lo, hi)
    while True:
        total = float(vals.sum())
        total_err = float(errs.sum())
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= tol or not np.isfinite(total_err):
            if not np.isfinite(total) or not np.isfinite(total_err):
                raise NonConvergenceError("non-finite quadrature result; integrand invalid")
            return QuadResult(total, total_err)
        n = len(vals)
        if n >= cfg.max_subdivisions:
            raise NonConvergenceError(
                f"error estimate {total_err:.3e} still above tolerance {tol:.3e} "
                f"after {n} panels (max_subdivisions={cfg.max_subdivisions})")
        mask = errs > tol / (2.0 * n)
        if not mask.any():
            mask[np.argmax(errs)] = True
        # respect the panel budget: split only the worst offenders if needed
        room = cfg.max_subdivisions - n
        if int(mask.sum()) > room:
            order = np.argsort(errs)[::-1][:room]
            keep_mask = np.zeros(n, dtype=bool)
            keep_mask[order] = True
            mask = keep_mask
        s_lo, s_hi = lo[mask], hi[mask]
        mid = 0.5 * (s_lo + s_hi)
        new_lo = np.concatenate([lo[~mask], s_lo, mid])
        new_hi = np.concatenate([hi[~mask], mid, s_hi])
        new_vals, new_errs = _gk_apply(f, np.concatenate([s_lo, mid]),
                                       np.concatenate([mid, s_hi]))
        vals = np.concatenate([vals[~mask], new_vals])
        errs = np.concatenate([errs[~mask], new_errs])
        lo, hi = new_lo, new_hi


_PLAIN_MESH = np.unique(np.concatenate([
    np.linspace(0.0, 0.9, 10),
    1.0 - np.geomspace(0.1, 1e-5, 6),
    [1.0],
]))
# geometric grading toward t = 0 keeps an x**a endpoint singularity honest
_GRADED_MESH = np.unique(np.concatenate([
    [0.0], np.geomspace(1e-120, 1e-2, 119), _PLAIN_MESH[_PLAIN_MESH > 1e-2],
]))


def integrate_halfline(g: Callable, cfg: OracleConfig, scale: float = 1.0,
                       singular_at_zero: bool = False) -> QuadResult:
    """Integral of g over (0, inf) via the x = scale*t/(1-t) substitution."""

    def f(t):
        u = 1.0 - t
        x = scale * t / u
        return g(x) * (scale / (u * u))

    mesh = _GRADED_MESH if singular_at_zero else _PLAIN_MESH
    return integrate_interval(f, mesh, cfg)


def integrate_realline(g: Callable, cfg: OracleConfig, interior, scale: float = 1.0) -> QuadResult:
    """Integral of g over the real line, split at the given interior points."""
    pts = sorted(float(p) for p in interior)
    if not pts:
        raise ParameterError("need at least one interior split point")
    sub = OracleConfig(abs_tol=cfg.abs_tol / (len(pts) + 1), rel_tol=cfg.rel_tol,
                       max_subdivisions=cfg.max_subdivisions,
                       series_tail_tol=cfg.series_tail_tol, max_terms=cfg.max_terms)

    def left(t):
        u = 1.0 - t
        return g(pts[0] - scale * t / u) * (scale / (u * u))

    def right(t):
        u = 1.0 - t
        return g(pts[-1] + scale * t / u) * (scale / (u * u))

    total, err = 0.0, 0.0
    for piece in (integrate_interval(left, _PLAIN_MESH, sub),
                  integrate_interval(right, _PLAIN_MESH, sub)):
        total += piece.value
        err += piece.error
    for a, b in zip(pts[:-1], pts[1:]):
        piece = integrate_interval(g, np.linspace(a, b, 9), sub)
        total += piece.value
        err += piece.error
    return QuadResult(total, err)


def _power_weight(d: Distribution, alpha: float, with_log: bool) -> Callable:
    def g(x):
        lp = logpdf(d, x)
        with np.errstate(all="ignore"):
            w = np.exp(alpha * lp)
            if with_log:
                w = np.where(np.isneginf(lp), 0.0, w * lp)
        return w
    return g


def _halfline_plan(d: Distribution, alpha: float):
    """(scale, singular_at_zero) for the alpha-power integrand of d."""
    if isinstance(d, ChiSquared):
        return _halfline_plan(d.as_gamma(), alpha)
    if isinstance(d, Gamma):
        a = alpha * (d.mu - 1.0)
        if a <= -1.0:
            raise ValidityDomainError(
                f"integral of p**alpha diverges: alpha*(mu-1) = {a:.6g} <= -1")
        escort_mean = (a + 1.0) / (alpha * d.lam)
        return max(escort_mean, d.mu / d.lam), a < 0.0
    if isinstance(d, Exponential):
        return 1.0 / d.lam, False
    if isinstance(d, LogNormal):
        # location of the mass of p**alpha (escort is a lognormal itself)
        center = d.m + (1.0 - alpha) * d.sigma2 / alpha
        return math.exp(center), False
    raise UnsupportedFamilyError(f"{type(d).__name__} is not a half-line family")


def _density_power_integral(d: Distribution, alpha: float, cfg: OracleConfig,
                            with_log: bool) -> QuadResult:
    if d.is_discrete:
        raise FamilyMismatchError("power integrals are defined for continuous families")
    if not (alpha > 0):
        raise ParameterError(f"alpha must be positive, got {alpha}")
    g = _power_weight(d, alpha, with_log)
    if isinstance(d, (Gamma, ChiSquared, Exponential, LogNormal)):
        scale, singular = _halfline_plan(d, alpha)
        return integrate_halfline(g, cfg, scale=scale, singular_at_zero=singular)
    if isinstance(d, Laplace):
        return integrate_realline(g, cfg, [d.mu], scale=1.0 / d.lam)
    if isinstance(d, Normal):
        return integrate_realline(g, cfg, [d.mean], scale=math.sqrt(d.sigma2))
    if isinstance(d, Uniform):
        return integrate_interval(g, np.linspace(d.a, d.b, 17), cfg)
    raise UnsupportedFamilyError(f"unknown continuous family {type(d).__name__}")


def integral_p_alpha(d: Distribution, alpha: float, cfg: OracleConfig) -> QuadResult:
    """Numerical integral of p(x)**alpha over the support of d."""
    return _density_power_integral(d, alpha, cfg, with_log=False)


def integral_p_alpha_log_p(d: Distribution, alpha: float, cfg: OracleConfig) -> QuadResult:
    """Numerical integral of p(x)**alpha * log p(x) over the support of d."""
    return _density_power_integral(d, alpha, cfg, with_log=True)


def _support_tag(d: Distribution) -> str:
    if isinstance(d, (Gamma, ChiSquared, Exponential, LogNormal)):
        return "halfline"
    if isinstance(d, (Laplace, Normal)):
        return "realline"
    if isinstance(d, Uniform):
        return f"interval[{d.a},{d.b}]"
    return "discrete"


def kl_integral(p: Distribution, q: Distribution, cfg: OracleConfig) -> QuadResult:
    """Numerical Kullback-Leibler divergence of p from q (continuous pairs)."""
    if p.is_discrete or q.is_discrete:
        raise FamilyMismatchError("kl_integral handles continuous pairs only")
    if _support_tag(p) != _support_tag(q):
        raise UnsupportedFamilyError(
            f"supports differ: {_support_tag(p)} vs {_support_tag(q)}")

    def g(x):
        lp = logpdf(p, x)
        lq = logpdf(q, x)
        with np.errstate(all="ignore"):
            out = np.exp(lp) * (lp - lq)
        return np.where(np.isneginf(lp), 0.0, out)

    tag = _support_tag(p)
    if tag == "halfline":
        scale, singular = _halfline_plan(p, 1.0)
        if isinstance(q, (Gamma, ChiSquared)):
            gq = q.as_gamma() if isinstance(q, ChiSquared) else q
            singular = singular or gq.mu < 1.0
        return integrate_halfline(g, cfg, scale=scale, singular_at_zero=singular)
    if tag == "realline":
        pts = {p.mu if isinstance(p, Laplace) else p.mean,
               q.mu if isinstance(q, Laplace) else q.mean}
        scale = 1.0 / p.lam if isinstance(p, Laplace) else math.sqrt(p.sigma2)
        return integrate_realline(g, cfg, sorted(pts), scale=scale)
    return integrate_interval(g, np.linspace(p.a, p.b, 17), cfg)


# --- discrete series with certified truncation ------------------------------

_TRANSFORMS = ("p_log_p", "p_alpha", "p_alpha_log_p")


def _ratio_bound(d: Distribution, k: int) -> float:
    """Upper bound on p_{j+1}/p_j valid for every j >= k."""
    if isinstance(d, dist.Poisson):
        return d.lam / (k + 1.0)
    if isinstance(d, dist.NegBinomialConditional):
        return (1.0 - d.p) * max(1.0, (k + d.r) / (k + 1.0))
    if isinstance(d, dist.Logarithmic):
        return 1.0 - d.p
    raise UnsupportedFamilyError(f"no ratio bound for {type(d).__name__}")


def discrete_entropy_sum(d: Distribution, transform: str, alpha: float,
                         cfg: OracleConfig) -> SeriesResult:
    """Sum of p_k log p_k, p_k**alpha, or p_k**alpha log p_k over the support.

    Binomial sums are exact (finite support).  For the infinite laws the
    summation stops once the geometric tail certificate is below
    cfg.series_tail_tol; SeriesBudgetError is raised if max_terms is hit
    before the certificate activates.
    """
    if not d.is_discrete:
        raise FamilyMismatchError("discrete_entropy_sum needs a discrete family")
    if transform not in _TRANSFORMS:
        raise ParameterError(f"transform must be one of {_TRANSFORMS}, got {transform!r}")
    if transform == "p_log_p":
        alpha = 1.0
    elif not (alpha > 0):
        raise ParameterError(f"alpha must be positive, got {alpha}")
    with_log = transform in ("p_log_p", "p_alpha_log_p")

    if isinstance(d, dist.Binomial):
        ks = np.arange(0, d.n + 1)
        lp = logpmf(d, ks)
        w = np.exp(alpha * lp)
        if with_log:
            w = w * lp
        return SeriesResult(float(w.sum()), 0.0, d.n)

    k = 0 if isinstance(d, dist.Poisson) else 1
    total = 0.0
    block = 64
    while k <= cfg.max_terms:
        ks = np.arange(k, min(k + block, cfg.max_terms + 1))
        lp = np.asarray(logpmf(d, ks), dtype=float)
        with np.errstate(all="ignore"):
            w = np.exp(alpha * lp)
            if with_log:
                w = w * lp
        total += float(w.sum())
        k_last = int(ks[-1])
        lp_last = float(lp[-1])
        rho = _ratio_bound(d, k_last)
        if rho < 1.0 and lp_last < 0.0:
            q = rho**alpha
            if with_log:
                # x**alpha * log(1/x) <= 1/(alpha*e) on (0,1)
                q += (1.0 / (alpha * math.e)) / (-lp_last)
            if q < 1.0:
                t_last = math.exp(alpha * lp_last) * ((-lp_last) if with_log else 1.0)
                tail = 2.0 * t_last * q / (1.0 - q)
                if tail <= cfg.series_tail_tol:
                    return SeriesResult(total, tail, k_last)
        k = k_last + 1
        block = min(2 * block, 65536)
    raise SeriesBudgetError(
        f"series tail not certified below {cfg.series_tail_tol:g} within "
        f"max_terms={cfg.max_terms}")


def entropy_estimate(d: Distribution, measure: str, alpha: float | None,
                     beta: float | None, cfg: OracleConfig) -> float:
    """Oracle value of a measure, assembled purely from the numeric engines.

    measure is one of shannon, renyi, gr1, tsallis, gr2, sm.  Discrete
    families support shannon only.
    """
    if d.is_discrete:
        if measure != "shannon":
            raise UnsupportedFamilyError(
                f"oracle for discrete families covers shannon only, not {measure}")
        return -discrete_entropy_sum(d, "p_log_p", 1.0, cfg).value
    if measure == "shannon":
        return -integral_p_alpha_log_p(d, 1.0, cfg).value
    if measure == "renyi":
        return math.log(integral_p_alpha(d, alpha, cfg).value) / (1.0 - alpha)
    if measure == "gr1":
        j1 = integral_p_alpha_log_p(d, alpha, cfg).value
        j = integral_p_alpha(d, alpha, cfg).value
        return -j1 / j
    if measure == "tsallis":
        return (integral_p_alpha(d, alpha, cfg).value - 1.0) / (1.0 - alpha)
    if measure == "gr2":
        ja = integral_p_alpha(d, alpha, cfg).value
        jb = integral_p_alpha(d, beta, cfg).value
        return (math.log(ja) - math.log(jb)) / (beta - alpha)
    if measure == "sm":
        j = integral_p_alpha(d, alpha, cfg).value
        return (j ** ((1.0 - beta) / (1.0 - alpha)) - 1.0) / (1.0 - beta)
    raise ParameterError(f"unknown measure {measure!r}")
