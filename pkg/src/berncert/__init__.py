"""Certification calculus for all-success Bernoulli testing.

Given n observed trials that all succeeded, how sure can we be that future
trials will keep succeeding?  The answer depends entirely on the prior.
This package computes the posterior probability that every member of a
finite population of N trials would succeed (under priors on the success
count) and the predictive probability that N future trials all succeed
(under beta-derived priors on the success propensity), together with exact
oracles, closed-form limits, and a CLI for evaluation, sweeps, and
certification sample-size planning.
"""

from .discrete_priors import (
    BayesLaplace,
    Bernardo,
    Custom,
    DiscretePosterior,
    DiscretePriorSpec,
    Jeffreys,
    Portmanteau,
    limit_posterior,
    posterior_R_eq_N,
    prior_masses,
)
from .numerics import (
    QuadratureResult,
    QuadratureSpec,
    integrate,
    log_beta_norm,
    log_gamma,
)
from .oracle import (
    MCEstimate,
    exact_discrete_posterior,
    mc_averaged_predictive,
    mc_predictive,
    product_form_predictive,
)
from .propensity import (
    OMEGA_SCHEDULE,
    Beta,
    JShaped,
    LShaped,
    LeftTruncated,
    NonConvergenceError,
    OmegaPosteriorParams,
    PosteriorUpdate,
    PredictiveResult,
    PropensityPrior,
    ReflectedScaled,
    averaged_posterior_density,
    averaged_predictive,
    density,
    exact_posterior_density,
    omega_posterior_density,
    omega_posterior_params,
    posterior_mass_at_one,
    predictive_all_success,
    support,
    update_all_success,
)

__version__ = "0.1.0"
