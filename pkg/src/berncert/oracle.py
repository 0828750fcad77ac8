"""Independent verification engines.

These routes are deliberately separate from the main implementations: exact
rational arithmetic for discrete posteriors, the telescoping product form of
the all-success predictive, and seeded Monte-Carlo estimators.  Tests compare
the main modules against these, never the reverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .discrete_priors import (
    BayesLaplace,
    Bernardo,
    Custom,
    DiscretePriorSpec,
    Jeffreys,
    Portmanteau,
)
from . import propensity as _prop

__all__ = [
    "RATIONAL_N_CAP",
    "MCEstimate",
    "exact_discrete_posterior",
    "product_form_predictive",
    "mc_predictive",
    "mc_averaged_predictive",
]

# Binomial coefficients stay exact integers; cap N to bound their growth.
RATIONAL_N_CAP = 500


def _rational_masses(spec: DiscretePriorSpec, N: int) -> list[Fraction]:
    if isinstance(spec, BayesLaplace):
        return [Fraction(1, N + 1)] * (N + 1)
    if isinstance(spec, Jeffreys):
        k = Fraction(spec.mass_k)
        base = (1 - 2 * k) / (N + 1)
        masses = [base] * (N + 1)
        masses[0] += k
        masses[N] += k
        return masses
    if isinstance(spec, Bernardo):
        k = Fraction(spec.mass_k)
        masses = [(1 - k) / N] * N
        masses.append(k)
        return masses
    if isinstance(spec, Custom):
        if len(spec.masses) != N + 1:
            raise ValueError(
                f"Custom prior has {len(spec.masses)} masses but N={N} needs {N + 1}"
            )
        raw = [Fraction(m) for m in spec.masses]
        total = sum(raw)
        return [m / total for m in raw]
    if isinstance(spec, Portmanteau):
        raise ValueError("portmanteau masses are irrational; no exact-rational route")
    raise TypeError(f"unknown prior spec {spec!r}")


def exact_discrete_posterior(spec: DiscretePriorSpec, N: int, n: int) -> Fraction:
    """Bit-exact P(R = N | n-of-n successes) for rational-mass priors.

    Uses integer binomial coefficients throughout:
    P(R=N) * C(N,n) / sum_{r=n..N} C(r,n) * P(R=r).
    """
    if N < 1 or n < 0 or n > N:
        raise ValueError(f"need 1 <= N and 0 <= n <= N, got N={N!r}, n={n!r}")
    if N > RATIONAL_N_CAP:
        raise ValueError(f"exact route capped at N={RATIONAL_N_CAP}, got {N}")
    masses = _rational_masses(spec, N)
    denom = sum(math.comb(r, n) * masses[r] for r in range(n, N + 1))
    return masses[N] * math.comb(N, n) / denom


def product_form_predictive(n: int, N: int, beta: float) -> float:
    """All-success predictive under the alpha=1 beta prior via its product
    form prod_{j=1..N} (n+j)/(n+j+beta), accumulated in log space."""
    if n < 0 or N < 1:
        raise ValueError(f"need n >= 0 and N >= 1, got n={n!r}, N={N!r}")
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta!r}")
    j = np.arange(1, N + 1, dtype=np.float64)
    return float(np.exp(-np.sum(np.log1p(beta / (n + j)))))


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    std_error: float


def _posterior_sampler(prior, n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    # Conjugate draws; shifted-support families via affine transform of a
    # beta draw (p = 1 - (1-support_lo) * z with z ~ Beta(beta, n+1)).
    if isinstance(prior, _prop.Beta):
        return rng.beta(prior.alpha + n, prior.beta, size=size)
    if isinstance(prior, _prop.LShaped):
        return rng.beta(prior.alpha + n, 1.0, size=size)
    if isinstance(prior, _prop.JShaped):
        return rng.beta(n + 1.0, prior.beta, size=size)
    if isinstance(prior, _prop.LeftTruncated):
        z = rng.beta(prior.beta, n + 1.0, size=size)
        return 1.0 - (1.0 - prior.omega) * z
    if isinstance(prior, _prop.ReflectedScaled) and prior.alpha == 1.0:
        z = rng.beta(prior.beta, n + 1.0, size=size)
        return 1.0 - math.exp(-prior.eta) * z
    raise ValueError(f"no posterior sampler for {prior!r}")


def mc_predictive(prior, n: int, N: int, samples: int, seed: int) -> MCEstimate:
    """Monte-Carlo estimate of the all-success predictive: mean of p**N with
    p drawn from the posterior after n-of-n successes.  Deterministic for a
    fixed seed.

    Truncated/reflected draws come from the shifted-kernel posterior, whose
    p**N expectation is NOT the stated closed-form predictive for those
    families (that formula can exceed 1); cross-checks against
    predictive_all_success are only meaningful for the conjugate families.
    """
    if samples < 1000:
        raise ValueError(f"need samples >= 1000, got {samples!r}")
    if n < 0 or N < 1:
        raise ValueError(f"need n >= 0 and N >= 1, got n={n!r}, N={N!r}")
    rng = np.random.default_rng(seed)
    p = _posterior_sampler(prior, n, rng, samples)
    with np.errstate(under="ignore"):
        vals = p**N
    return MCEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples)))


def mc_averaged_predictive(
    n: int,
    N: int,
    beta: float,
    a: float,
    b: float,
    c: float,
    samples: int,
    seed: int,
) -> MCEstimate:
    """Monte-Carlo route for the threshold-averaged predictive.

    Draws the support threshold from its shifted-beta posterior
    (omega = 1 - c*z, z ~ Beta(a, b)) and averages the conditional
    (unclamped) predictive values.
    """
    if samples < 1000:
        raise ValueError(f"need samples >= 1000, got {samples!r}")
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta!r}")
    rng = np.random.default_rng(seed)
    z = rng.beta(a, b, size=samples)
    log_ratio = -np.sum(np.log1p(beta / (n + np.arange(1, N + 1, dtype=np.float64))))
    # conditional predictive: exp(log_ratio) / (1-omega)^(n+beta), 1-omega = c*z
    with np.errstate(over="ignore"):
        vals = np.exp(log_ratio - (n + beta) * (math.log(c) + np.log(z)))
    return MCEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples)))
