"""Priors on the success propensity and their certification predictives.

The propensity p is the limiting success fraction of an exchangeable
Bernoulli sequence.  Every prior here is beta-derived: the plain beta family
on [0, 1] (with its L- and J-shaped one-parameter special cases), a
reflected scale-transformed family supported on [1-c, 1], and a
left-truncated family supported on [omega, 1].  Conditioning is always on
n-of-n observed successes, and the headline output is the predictive
probability that N future trials all succeed.

Posterior updates for the truncated/reflected families follow the stated
shifted-beta kernel (note tag "shifted-kernel"), which is not the same as
exact Bayes conditioning with a p**n likelihood; ``exact_posterior_density``
provides the exact-conditioning route so the gap is measurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .numerics import QuadratureResult, QuadratureSpec, integrate, log_beta_norm

__all__ = [
    "Beta",
    "LShaped",
    "JShaped",
    "ReflectedScaled",
    "LeftTruncated",
    "PropensityPrior",
    "PosteriorUpdate",
    "PredictiveResult",
    "OmegaPosteriorParams",
    "OMEGA_SCHEDULE",
    "NonConvergenceError",
    "support",
    "density",
    "update_all_success",
    "predictive_all_success",
    "posterior_mass_at_one",
    "omega_posterior_params",
    "omega_posterior_density",
    "averaged_posterior_density",
    "averaged_predictive",
    "exact_posterior_density",
]


class NonConvergenceError(RuntimeError):
    """A quadrature-backed quantity failed to meet its tolerance."""


# ---------------------------------------------------------------------------
# prior families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Beta:
    """Standard beta prior on [0, 1]."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not self.alpha > 0 or not self.beta > 0:
            raise ValueError(f"Beta needs alpha, beta > 0, got {self!r}")


@dataclass(frozen=True)
class LShaped:
    """Beta(alpha, 1) with alpha < 1: density alpha * p**(alpha-1), favouring
    small p but carrying weight at p = 1."""

    alpha: float

    def __post_init__(self) -> None:
        if not 0 < self.alpha < 1:
            raise ValueError(f"LShaped needs alpha in (0, 1), got {self!r}")


@dataclass(frozen=True)
class JShaped:
    """Beta(1, beta) with beta < 1: density beta * (1-p)**(beta-1), unbounded
    at p = 1."""

    beta: float

    def __post_init__(self) -> None:
        if not 0 < self.beta < 1:
            raise ValueError(f"JShaped needs beta in (0, 1), got {self!r}")


@dataclass(frozen=True)
class ReflectedScaled:
    """Reflected scale-transformed beta: p = 1 - exp(-eta) * z with
    z ~ Beta(alpha, beta), supported on [1 - c, 1] for c = exp(-eta)."""

    alpha: float
    beta: float
    eta: float

    def __post_init__(self) -> None:
        if not self.alpha > 0 or not self.beta > 0:
            raise ValueError(f"ReflectedScaled needs alpha, beta > 0, got {self!r}")
        if not self.eta >= 0:
            raise ValueError(f"ReflectedScaled needs eta >= 0, got {self!r}")

    @property
    def c(self) -> float:
        return math.exp(-self.eta)


@dataclass(frozen=True)
class LeftTruncated:
    """J-shaped prior restricted to [omega, 1]:
    density beta * (1-p)**(beta-1) / (1-omega)**beta."""

    beta: float
    omega: float

    def __post_init__(self) -> None:
        if not 0 < self.beta < 1:
            raise ValueError(f"LeftTruncated needs beta in (0, 1), got {self!r}")
        if not 0 <= self.omega < 1:
            raise ValueError(f"LeftTruncated needs omega in [0, 1), got {self!r}")


PropensityPrior = Union[Beta, LShaped, JShaped, ReflectedScaled, LeftTruncated]


def support(prior: PropensityPrior) -> tuple[float, float]:
    """Closed support interval of the prior density."""
    if isinstance(prior, (Beta, LShaped, JShaped)):
        return 0.0, 1.0
    if isinstance(prior, ReflectedScaled):
        return 1.0 - prior.c, 1.0
    if isinstance(prior, LeftTruncated):
        return prior.omega, 1.0
    raise TypeError(f"unknown prior {prior!r}")


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------


def _exp_or_inf(log_v: float) -> float:
    try:
        return math.exp(log_v)
    except OverflowError:
        return math.inf


def _beta_density(p: float, a: float, b: float) -> float:
    if not 0.0 <= p <= 1.0:
        return 0.0
    t1 = p
    t2 = 1.0 - p
    if t1 == 0.0:
        if a < 1.0:
            return math.inf
        if a > 1.0:
            return 0.0
    if t2 == 0.0:
        if b < 1.0:
            return math.inf
        if b > 1.0:
            return 0.0
    log_d = log_beta_norm(a, b)
    if t1 > 0.0:
        log_d += (a - 1.0) * math.log(t1)
    if t2 > 0.0:
        log_d += (b - 1.0) * math.log(t2)
    return _exp_or_inf(log_d)


def _shifted_beta_density(p: float, a: float, b: float, c: float) -> float:
    # density norm(a,b) * (1/c)**(a+b-1) * (1-p)**(a-1) * (c-1+p)**(b-1)
    # on [1-c, 1]; the a-exponent sits on the upper endpoint.
    lo = 1.0 - c
    if not lo <= p <= 1.0:
        return 0.0
    t1 = max(1.0 - p, 0.0)
    t2 = max(p - lo, 0.0)
    if t1 == 0.0:
        if a < 1.0:
            return math.inf
        if a > 1.0:
            return 0.0
    if t2 == 0.0:
        if b < 1.0:
            return math.inf
        if b > 1.0:
            return 0.0
    log_d = log_beta_norm(a, b)
    log_d -= (a + b - 1.0) * math.log(c)
    if t1 > 0.0:
        log_d += (a - 1.0) * math.log(t1)
    if t2 > 0.0:
        log_d += (b - 1.0) * math.log(t2)
    return _exp_or_inf(log_d)


def density(prior: PropensityPrior, p: float) -> float:
    """Prior density at p; 0 outside the support, math.inf at singular
    endpoints (the sentinel is documented, quadrature never samples there)."""
    if isinstance(prior, Beta):
        return _beta_density(p, prior.alpha, prior.beta)
    if isinstance(prior, LShaped):
        return _beta_density(p, prior.alpha, 1.0)
    if isinstance(prior, JShaped):
        return _beta_density(p, 1.0, prior.beta)
    if isinstance(prior, ReflectedScaled):
        return _shifted_beta_density(p, prior.alpha, prior.beta, prior.c)
    if isinstance(prior, LeftTruncated):
        return _shifted_beta_density(p, prior.beta, 1.0, 1.0 - prior.omega)
    raise TypeError(f"unknown prior {prior!r}")


def _singular_flags(prior: PropensityPrior) -> tuple[bool, bool]:
    # (singular at support lo, singular at support hi)
    if isinstance(prior, Beta):
        return prior.alpha < 1.0, prior.beta < 1.0
    if isinstance(prior, LShaped):
        return True, False
    if isinstance(prior, JShaped):
        return False, True
    if isinstance(prior, ReflectedScaled):
        return prior.beta < 1.0, prior.alpha < 1.0
    if isinstance(prior, LeftTruncated):
        return False, True
    raise TypeError(f"unknown prior {prior!r}")


# ---------------------------------------------------------------------------
# posterior updates and predictives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PosteriorUpdate:
    family: PropensityPrior
    n_observed: int
    note: str  # "exact-conjugate" or "shifted-kernel"


def update_all_success(prior: PropensityPrior, n: int) -> PosteriorUpdate:
    """Posterior family after observing n successes in n trials.

    Beta-family priors update conjugately (alpha -> alpha + n).  The
    truncated/reflected families return the stated shifted-beta kernel
    (p - lo)**n (1-p)**(beta-1) on their support, tagged "shifted-kernel":
    this is the documented update, not exact Bayes conditioning.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if isinstance(prior, Beta):
        return PosteriorUpdate(Beta(prior.alpha + n, prior.beta), n, "exact-conjugate")
    if isinstance(prior, LShaped):
        return PosteriorUpdate(Beta(prior.alpha + n, 1.0), n, "exact-conjugate")
    if isinstance(prior, JShaped):
        return PosteriorUpdate(Beta(n + 1.0, prior.beta), n, "exact-conjugate")
    if isinstance(prior, LeftTruncated):
        family = ReflectedScaled(prior.beta, n + 1.0, -math.log1p(-prior.omega))
        return PosteriorUpdate(family, n, "shifted-kernel")
    if isinstance(prior, ReflectedScaled):
        if prior.alpha != 1.0:
            raise ValueError(
                "posterior update for the reflected-scaled family is defined "
                "only for alpha = 1"
            )
        family = ReflectedScaled(prior.beta, n + 1.0, prior.eta)
        return PosteriorUpdate(family, n, "shifted-kernel")
    raise TypeError(f"unknown prior {prior!r}")


@dataclass(frozen=True)
class PredictiveResult:
    value: float
    raw_value: float
    clamped: bool
    method: str  # "closed-form", "log-gamma", or "quadrature"
    err_estimate: float | None = None
    diverged: bool = False
    converged: bool = True


def _clamped(raw: float, method: str, err: float | None = None,
             diverged: bool = False, converged: bool = True) -> PredictiveResult:
    if math.isnan(raw):
        raise ArithmeticError("predictive evaluated to NaN")
    value = min(1.0, max(0.0, raw))
    return PredictiveResult(value, raw, value != raw, method, err, diverged, converged)


def predictive_all_success(prior: PropensityPrior, n: int, N: int) -> PredictiveResult:
    """P(next N trials all succeed | n-of-n observed successes).

    Beta-family priors use the log-gamma evaluation of the beta-binomial
    ratio; Beta(alpha, 1) has the closed form (alpha+n)/(alpha+n+N).  The
    left-truncated family divides the J-shaped value by (1-omega)**(n+beta),
    which can exceed 1 and is then clamped with the flag set.
    """
    if n < 0 or N < 1:
        raise ValueError(f"need n >= 0 and N >= 1, got n={n!r}, N={N!r}")
    if isinstance(prior, LShaped):
        return _clamped((prior.alpha + n) / (prior.alpha + n + N), "closed-form")
    if isinstance(prior, Beta):
        log_v = log_beta_norm(prior.alpha + n, prior.beta) - log_beta_norm(
            prior.alpha + n + N, prior.beta
        )
        return _clamped(math.exp(log_v), "log-gamma")
    if isinstance(prior, JShaped):
        log_v = log_beta_norm(n + 1.0, prior.beta) - log_beta_norm(
            n + N + 1.0, prior.beta
        )
        return _clamped(math.exp(log_v), "log-gamma")
    if isinstance(prior, LeftTruncated):
        log_v = (
            log_beta_norm(n + 1.0, prior.beta)
            - log_beta_norm(n + N + 1.0, prior.beta)
            - (n + prior.beta) * math.log1p(-prior.omega)
        )
        return _clamped(_exp_or_inf(log_v), "log-gamma")
    if isinstance(prior, ReflectedScaled):
        raise ValueError("no predictive is defined for the reflected-scaled family")
    raise TypeError(f"unknown prior {prior!r}")


def posterior_mass_at_one(prior: ReflectedScaled, n: int) -> float:
    """The stated closed-form mass at p=1 of the reflected-scaled (alpha=1)
    posterior: [Gamma(n+1+beta)/(Gamma(n+1) Gamma(beta))] * c**(beta-1).

    Reported as-is and uncapped: the expression can exceed 1 and is not a
    verified probability.
    """
    if not isinstance(prior, ReflectedScaled) or prior.alpha != 1.0:
        raise ValueError("defined only for the reflected-scaled family with alpha = 1")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    return _exp_or_inf(
        log_beta_norm(n + 1.0, prior.beta) + prior.eta * (1.0 - prior.beta)
    )


# ---------------------------------------------------------------------------
# threshold (omega) posterior machinery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaPosteriorParams:
    """Shifted-beta posterior of the support threshold omega on [1-c, 1]."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not self.a > 0 or not self.b > 0:
            raise ValueError(f"need a, b > 0, got {self!r}")
        if not 0 < self.c <= 1:
            raise ValueError(f"need c in (0, 1], got {self!r}")


# Built-in schedule of threshold-posterior parameters keyed by the number of
# observed successes; lookup is a right-continuous step function (the row
# with the largest key <= n applies).  The entries are a subjective choice,
# not a fit.
OMEGA_SCHEDULE: tuple[tuple[int, OmegaPosteriorParams], ...] = (
    (1, OmegaPosteriorParams(1.0, 1.0, 1.0)),
    (2, OmegaPosteriorParams(2.0, 2.0, 1.0)),
    (5, OmegaPosteriorParams(2.0, 3.0, 1.0)),
    (10, OmegaPosteriorParams(3.0, 4.0, 0.95)),
    (25, OmegaPosteriorParams(3.0, 4.0, 0.9)),
    (50, OmegaPosteriorParams(3.0, 4.0, 0.75)),
    (75, OmegaPosteriorParams(4.0, 5.0, 0.5)),
    (100, OmegaPosteriorParams(4.0, 5.0, 0.25)),
    (1000, OmegaPosteriorParams(4.0, 5.0, 0.05)),
)


def omega_posterior_params(n: int) -> OmegaPosteriorParams:
    """Schedule lookup: the row with the largest tabulated n <= input n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    chosen = OMEGA_SCHEDULE[0][1]
    for n_min, params in OMEGA_SCHEDULE:
        if n >= n_min:
            chosen = params
    return chosen


def omega_posterior_density(omega: float, params: OmegaPosteriorParams) -> float:
    """Shifted-beta density of the threshold on [1-c, 1]; 0 outside."""
    return _shifted_beta_density(omega, params.a, params.b, params.c)


def averaged_posterior_density(
    p: float,
    n: int,
    beta: float,
    params: OmegaPosteriorParams,
    spec: QuadratureSpec | None = None,
) -> QuadratureResult:
    """Posterior density of p with the threshold averaged out.

    Numerically evaluates
    norm * (1-p)**(beta-1) * integral over omega in [1-c, min(p, 1)] of
    (p-omega)**n (c-1+omega)**(b-1) / (1-omega)**(n+beta+1-a).
    The omega range stops at p (the shifted kernel is only defined for
    omega <= p); below 1-c the density is identically 0.
    """
    spec = spec if spec is not None else QuadratureSpec()
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta!r}")
    lo = 1.0 - params.c
    if p <= lo:
        return QuadratureResult(0.0, 0.0, True, False)

    e = n + beta + 1.0 - params.a
    b_exp = params.b - 1.0

    def integrand(w: float) -> float:
        t1 = p - w
        t2 = w - lo
        t3 = 1.0 - w
        if t1 <= 0.0 or t3 <= 0.0 or t2 < 0.0:
            return 0.0
        if t2 == 0.0:
            if b_exp < 0.0:
                return math.inf
            if b_exp > 0.0:
                return 0.0
        log_v = n * math.log(t1) - e * math.log(t3)
        if t2 > 0.0:
            log_v += b_exp * math.log(t2)
        return _exp_or_inf(log_v)

    res = integrate(integrand, lo, p, spec, singular_at_lo=params.b < 1.0)
    log_pref = (
        log_beta_norm(n + 1.0, beta)
        + log_beta_norm(params.a, params.b)
        - (params.a + params.b - 1.0) * math.log(params.c)
        + (beta - 1.0) * math.log1p(-p)
    )
    scale = _exp_or_inf(log_pref)
    return QuadratureResult(
        scale * res.value, scale * res.err_estimate, res.converged,
        res.truncated_endpoint,
    )


def averaged_predictive(
    n: int,
    N: int,
    beta: float,
    params: OmegaPosteriorParams,
    spec: QuadratureSpec | None = None,
) -> PredictiveResult:
    """All-success predictive with the threshold averaged out.

    The omega integral (c-1+omega)**(b-1) / (1-omega)**(n+beta+1-a) over
    [1-c, 1] is proper only when the exponent n+beta+1-a < 1.  Otherwise it
    diverges at omega = 1: the result then carries diverged=True and holds
    the value truncated at endpoint_eps, clamped into [0, 1].
    """
    spec = spec if spec is not None else QuadratureSpec()
    if n < 1 or N < 1:
        raise ValueError(f"need n >= 1 and N >= 1, got n={n!r}, N={N!r}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta!r}")
    a, b, c = params.a, params.b, params.c
    lo = 1.0 - c
    e = n + beta + 1.0 - a
    b_exp = b - 1.0

    def integrand(w: float) -> float:
        t2 = w - lo
        t3 = 1.0 - w
        if t3 <= 0.0 or t2 < 0.0:
            return 0.0
        if t2 == 0.0:
            if b_exp < 0.0:
                return math.inf
            if b_exp > 0.0:
                return 0.0
        log_v = -e * math.log(t3)
        if t2 > 0.0:
            log_v += b_exp * math.log(t2)
        return _exp_or_inf(log_v)

    diverged = e >= 1.0
    res = integrate(
        integrand, lo, 1.0, spec,
        singular_at_lo=b < 1.0, singular_at_hi=e > 0.0,
    )

    log_pref = (
        log_beta_norm(n + 1.0, beta)
        - log_beta_norm(n + N + 1.0, beta)
        + log_beta_norm(a, b)
        - (a + b - 1.0) * math.log(c)
    )
    if res.value <= 0.0:
        raw = 0.0
    elif not math.isfinite(res.value):
        raw = math.inf
    else:
        raw = _exp_or_inf(log_pref + math.log(res.value))
    scale = _exp_or_inf(log_pref)
    err = scale * res.err_estimate
    return _clamped(
        raw,
        "quadrature",
        err=err if math.isfinite(err) else None,
        diverged=diverged,
        converged=res.converged,
    )


def exact_posterior_density(
    prior: PropensityPrior,
    n: int,
    p: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Exact-Bayes posterior density: p**n * prior density, normalized by
    quadrature.  For conjugate families this reproduces the closed-form
    posterior; for the truncated/reflected families it quantifies the gap
    to the shifted-kernel update."""
    spec = spec if spec is not None else QuadratureSpec()
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    lo, hi = support(prior)
    if not lo <= p <= hi:
        return 0.0
    s_lo, s_hi = _singular_flags(prior)
    if lo == 0.0:
        s_lo = False  # the p**n likelihood cancels any origin singularity

    def weighted(x: float) -> float:
        return x**n * density(prior, x)

    z = integrate(weighted, lo, hi, spec, singular_at_lo=s_lo, singular_at_hi=s_hi)
    if not z.converged:
        raise NonConvergenceError(
            f"posterior normalizer failed to converge for {prior!r}, n={n}"
        )
    d = density(prior, p)
    if math.isinf(d):
        return math.inf
    return p**n * d / z.value
