"""Priors on the unknown success count and the all-success posterior.

The population holds N exchangeable Bernoulli trials of which R succeed; a
random sample of n trials came back all-success.  Each prior family below
assigns P(R = r) for r = 0..N, and ``posterior_R_eq_N`` computes
P(R = N | all n sampled trials succeeded) under the hypergeometric sampling
likelihood.  Closed-form large-N limits are available where they exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "BayesLaplace",
    "Jeffreys",
    "Bernardo",
    "Portmanteau",
    "Custom",
    "DiscretePriorSpec",
    "DiscretePosterior",
    "prior_masses",
    "posterior_R_eq_N",
    "limit_posterior",
]

# Above this N the generic posterior sum always runs in floating point; at or
# below it, rational-mass priors are evaluated with exact integer arithmetic.
EXACT_ARITHMETIC_N_CAP = 300


@dataclass(frozen=True)
class BayesLaplace:
    """Uniform (indifference) prior: P(R = r) = 1/(N+1) for every r."""


@dataclass(frozen=True)
class Jeffreys:
    """Uniform prior plus extra point masses of size mass_k at r = 0 and r = N.

    mass_k = 0 reduces to the uniform prior; the admissible range is
    0 <= mass_k <= 1/2.
    """

    mass_k: float

    def __post_init__(self) -> None:
        if not 0 <= self.mass_k <= 0.5:
            raise ValueError(f"Jeffreys mass_k must lie in [0, 1/2], got {self.mass_k!r}")


@dataclass(frozen=True)
class Bernardo:
    """Point mass mass_k at r = N only; (1 - mass_k)/N on each r = 0..N-1."""

    mass_k: float

    def __post_init__(self) -> None:
        if not 0 < self.mass_k < 1:
            raise ValueError(f"Bernardo mass_k must lie in (0, 1), got {self.mass_k!r}")


@dataclass(frozen=True)
class Portmanteau:
    """End-point masses with squared-exponential decay and revival between.

    Unnormalized shape: u(0) = u(N) = lam, and
    u(r) = q**(decay_k * r**2) + q**(decay_k * (N-r)**2) for 0 < r < N,
    normalized at evaluation time.  This reconstruction reproduces the
    qualitative behaviour (finite end masses, q- and decay_k-controlled decay
    away from r = 0 and revival toward r = N) but is not a canonical form;
    treat absolute values with care.
    """

    q: float
    decay_k: float
    lam: float

    def __post_init__(self) -> None:
        if not 0 < self.q < 1:
            raise ValueError(f"Portmanteau q must lie in (0, 1), got {self.q!r}")
        if not self.decay_k > 0:
            raise ValueError(f"Portmanteau decay_k must be > 0, got {self.decay_k!r}")
        if not self.lam > 0:
            raise ValueError(f"Portmanteau lam must be > 0, got {self.lam!r}")


@dataclass(frozen=True)
class Custom:
    """Arbitrary nonnegative masses over r = 0..N, normalized at evaluation."""

    masses: tuple

    def __init__(self, masses) -> None:
        masses = tuple(float(m) for m in masses)
        if len(masses) < 2:
            raise ValueError("Custom prior needs at least two masses (N >= 1)")
        if any(not math.isfinite(m) or m < 0 for m in masses):
            raise ValueError("Custom masses must be finite and nonnegative")
        if not sum(masses) > 0:
            raise ValueError("Custom masses must have positive total")
        object.__setattr__(self, "masses", masses)


DiscretePriorSpec = Union[BayesLaplace, Jeffreys, Bernardo, Portmanteau, Custom]


@dataclass(frozen=True)
class DiscretePosterior:
    prob_R_eq_N: float
    N: int
    n: int
    method: str  # "closed-form" or "generic-sum"


def _validate_N_n(N: int, n: int) -> None:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N!r}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n!r}")
    if n > N:
        raise ValueError(f"n must not exceed N, got n={n!r}, N={N!r}")


def prior_masses(spec: DiscretePriorSpec, N: int) -> np.ndarray:
    """P(R = 0), ..., P(R = N) as a length-(N+1) array summing to 1."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N!r}")
    if isinstance(spec, BayesLaplace):
        return np.full(N + 1, 1.0 / (N + 1))
    if isinstance(spec, Jeffreys):
        base = (1.0 - 2.0 * spec.mass_k) / (N + 1)
        masses = np.full(N + 1, base)
        masses[0] += spec.mass_k
        masses[N] += spec.mass_k
        return masses
    if isinstance(spec, Bernardo):
        masses = np.full(N + 1, (1.0 - spec.mass_k) / N)
        masses[N] = spec.mass_k
        return masses
    if isinstance(spec, Portmanteau):
        r = np.arange(N + 1, dtype=np.float64)
        with np.errstate(under="ignore"):
            u = spec.q ** (spec.decay_k * r**2) + spec.q ** (spec.decay_k * (N - r) ** 2)
        u[0] = spec.lam
        u[N] = spec.lam
        return u / u.sum()
    if isinstance(spec, Custom):
        if len(spec.masses) != N + 1:
            raise ValueError(
                f"Custom prior has {len(spec.masses)} masses but N={N} needs {N + 1}"
            )
        masses = np.asarray(spec.masses, dtype=np.float64)
        return masses / masses.sum()
    raise TypeError(f"unknown prior spec {spec!r}")


def _generic_sum_float(spec: DiscretePriorSpec, N: int, n: int) -> float:
    # Sampling weights C(r,n)/C(N,n) for r = N..n via the exact downward
    # recurrence w[r-1] = w[r] * (r-n)/r; stays in [0,1] so no overflow, and
    # underflow of negligible terms is harmless.
    masses = prior_masses(spec, N)
    r = np.arange(N, n, -1, dtype=np.float64)
    with np.errstate(under="ignore"):
        weights = np.concatenate(([1.0], np.cumprod((r - n) / r)))
    masses_desc = masses[n:][::-1]
    denom = float(np.dot(weights, masses_desc))
    return float(masses[N]) / denom


def posterior_R_eq_N(
    spec: DiscretePriorSpec, N: int, n: int, *, engine: str = "auto"
) -> DiscretePosterior:
    """P(R = N | n out of n sampled trials succeeded).

    The sampling likelihood is hypergeometric, so the posterior is
    P(R=N) / sum_{r=n..N} [C(r,n)/C(N,n)] P(R=r).

    n = 0 is accepted and returns the prior mass at N (an uninformative
    sample).  ``engine`` selects the evaluation path: "auto" picks the
    closed form for the uniform prior, exact rational arithmetic for
    rational-mass priors up to N=300, and the floating log-space sum
    otherwise; "log-space" / "exact" / "closed-form" force a path.
    """
    _validate_N_n(N, n)
    if engine == "auto":
        if isinstance(spec, BayesLaplace):
            engine = "closed-form"
        elif N <= EXACT_ARITHMETIC_N_CAP and not isinstance(spec, Portmanteau):
            engine = "exact"
        else:
            engine = "log-space"

    if engine == "closed-form":
        if not isinstance(spec, BayesLaplace):
            raise ValueError(f"no closed-form posterior for {type(spec).__name__}")
        return DiscretePosterior((n + 1) / (N + 1), N, n, "closed-form")
    if engine == "exact":
        from .oracle import exact_discrete_posterior

        value = exact_discrete_posterior(spec, N, n)
        return DiscretePosterior(float(value), N, n, "generic-sum")
    if engine == "log-space":
        return DiscretePosterior(_generic_sum_float(spec, N, n), N, n, "generic-sum")
    raise ValueError(f"unknown engine {engine!r}")


def limit_posterior(spec: DiscretePriorSpec, n: int) -> float | None:
    """Large-N limit of posterior_R_eq_N at fixed n, where a closed form exists.

    Uniform prior: 0.  Jeffreys: (n+1)k / ((n+1)k + 1 - 2k).  Bernardo:
    (n+1)k / ((n+1)k + 1 - k).  Portmanteau and Custom have no closed-form
    limit; returns None (evaluate at a large finite N instead).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if isinstance(spec, BayesLaplace):
        return 0.0
    if isinstance(spec, Jeffreys):
        k = spec.mass_k
        if k == 0.0:
            return 0.0
        return (n + 1) * k / ((n + 1) * k + 1.0 - 2.0 * k)
    if isinstance(spec, Bernardo):
        k = spec.mass_k
        return (n + 1) * k / ((n + 1) * k + 1.0 - k)
    if isinstance(spec, (Portmanteau, Custom)):
        return None
    raise TypeError(f"unknown prior spec {spec!r}")
