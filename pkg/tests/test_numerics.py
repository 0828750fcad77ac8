"""Special functions and quadrature: exact values, identities, contracts."""

import math

import pytest

from berncert.numerics import (
    QuadratureSpec,
    integrate,
    log_beta_norm,
    log_gamma,
)


class TestLogGamma:
    def test_gamma_of_one_is_zero(self):
        assert log_gamma(1.0) == 0.0

    def test_factorial_value(self):
        """Gamma(5) = 4! = 24."""
        assert math.isclose(log_gamma(5.0), math.log(24.0), rel_tol=1e-14)

    def test_half_integer(self):
        """Gamma(1/2) = sqrt(pi)."""
        assert math.isclose(log_gamma(0.5), 0.5 * math.log(math.pi), rel_tol=1e-14)

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 10.0, 100.0, 1e4])
    def test_recurrence(self, x):
        """log_gamma(x+1) - log_gamma(x) = ln x to 1e-12 relative."""
        lhs = log_gamma(x + 1.0) - log_gamma(x)
        rhs = math.log(x)
        if rhs == 0.0:
            assert lhs == 0.0
        else:
            assert abs(lhs - rhs) / abs(rhs) <= 1e-12

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain_error(self, x):
        with pytest.raises(ValueError):
            log_gamma(x)

    def test_small_arguments(self):
        """Values below 1/2 follow Gamma(x) = Gamma(x+1)/x."""
        for x in (0.1, 0.25, 0.49):
            assert math.isclose(
                log_gamma(x), log_gamma(x + 1.0) - math.log(x), rel_tol=1e-12
            )


class TestLogBetaNorm:
    def test_uniform_norm_is_one(self):
        assert log_beta_norm(1.0, 1.0) == 0.0

    def test_integer_value(self):
        """Gamma(5)/(Gamma(2)Gamma(3)) = 24/2 = 12."""
        assert math.isclose(log_beta_norm(2.0, 3.0), math.log(12.0), rel_tol=1e-14)

    def test_reciprocal_of_standard_beta(self):
        """exp(log_beta_norm(a,b)) * B_standard(a,b) = 1."""
        a, b = 3.7, 0.4
        std_log_beta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
        assert math.isclose(
            math.exp(log_beta_norm(a, b)) * math.exp(std_log_beta), 1.0, rel_tol=1e-12
        )

    def test_symmetry_on_grid(self):
        grid = [0.1, 0.5, 1.0, 2.0, 3.7, 10.0]
        for a in grid:
            for b in grid:
                assert log_beta_norm(a, b) == log_beta_norm(b, a)

    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (1.0, 0.0), (-1.0, 2.0)])
    def test_domain_error(self, a, b):
        with pytest.raises(ValueError):
            log_beta_norm(a, b)


class TestQuadratureSpec:
    def test_defaults(self):
        spec = QuadratureSpec()
        assert spec.abs_tol == 1e-10
        assert spec.rel_tol == 1e-8
        assert spec.max_depth == 50
        assert spec.endpoint_eps == 1e-12

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"abs_tol": 0.0},
            {"rel_tol": -1e-8},
            {"max_depth": 0},
            {"endpoint_eps": 0.0},
            {"endpoint_eps": 1e-2},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)


class TestIntegrate:
    def test_constant(self):
        res = integrate(lambda x: 1.0, 0.0, 1.0)
        assert res.converged
        assert math.isclose(res.value, 1.0, rel_tol=1e-12)

    def test_polynomial(self):
        res = integrate(lambda x: x * x, 0.0, 1.0)
        assert res.converged
        assert abs(res.value - 1.0 / 3.0) <= 1e-10

    def test_integrable_algebraic_singularity(self):
        """0.1*(1-x)**(-0.9) has antiderivative -(1-x)**0.1: integral 1."""
        res = integrate(lambda x: 0.1 * (1.0 - x) ** (-0.9), 0.0, 1.0,
                        singular_at_hi=True)
        assert res.converged
        assert not res.truncated_endpoint
        assert abs(res.value - 1.0) <= 1e-8

    def test_singularity_at_lower_endpoint(self):
        res = integrate(lambda x: 0.5 * x ** (-0.5), 0.0, 1.0, singular_at_lo=True)
        assert res.converged
        assert abs(res.value - 1.0) <= 1e-8

    def test_non_integrable_endpoint_truncates(self):
        """1/(1-x) diverges: integral to 1 - eps is -ln(eps), flagged."""
        spec = QuadratureSpec()
        res = integrate(lambda x: 1.0 / (1.0 - x), 0.0, 1.0, spec,
                        singular_at_hi=True)
        assert res.truncated_endpoint
        assert not res.converged
        expected = -math.log(spec.endpoint_eps)
        assert abs(res.value - expected) / expected < 1e-3

    def test_linearity(self):
        f = lambda x: math.sin(3.0 * x)
        g = lambda x: math.exp(-x)
        a, b = 2.5, -1.25
        combined = integrate(lambda x: a * f(x) + b * g(x), 0.0, 2.0)
        parts = a * integrate(f, 0.0, 2.0).value + b * integrate(g, 0.0, 2.0).value
        assert combined.converged
        assert abs(combined.value - parts) <= 1e-9

    @pytest.mark.parametrize("a,b", [(1.0, 1.0), (2.0, 3.0), (0.5, 1.0), (1.0, 0.1)])
    def test_beta_density_normalization(self, a, b):
        """Beta(a,b) densities integrate to 1 +- 1e-6, singular flags set."""
        log_norm = log_beta_norm(a, b)

        def dens(x):
            lx = log_norm
            if a != 1.0:
                lx += (a - 1.0) * math.log(x)
            if b != 1.0:
                lx += (b - 1.0) * math.log(1.0 - x)
            return math.exp(lx)

        res = integrate(dens, 0.0, 1.0, singular_at_lo=a < 1.0, singular_at_hi=b < 1.0)
        assert abs(res.value - 1.0) <= 1e-6

    def test_converged_implies_error_within_tolerance(self):
        spec = QuadratureSpec()
        for f, flags in [
            (lambda x: math.cos(x), {}),
            (lambda x: 0.2 * (1.0 - x) ** (-0.8), {"singular_at_hi": True}),
        ]:
            res = integrate(f, 0.0, 1.0, spec, **flags)
            if res.converged:
                assert res.err_estimate <= max(
                    spec.abs_tol, spec.rel_tol * abs(res.value)
                )

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            integrate(lambda x: x, 1.0, 0.0)
        with pytest.raises(ValueError):
            integrate(lambda x: x, 0.0, math.inf)

    def test_unflagged_smooth_interval_ignores_endpoint_machinery(self):
        res = integrate(lambda x: x ** 3 - x, -1.0, 2.0)
        assert res.converged
        assert abs(res.value - 2.25) <= 1e-9

    def test_unattainable_tolerance_terminates_honestly(self):
        """Tolerances below the double-precision floor must not loop; the
        result is machine-accurate and flagged not-converged."""
        spec = QuadratureSpec(abs_tol=1e-16, rel_tol=1e-14)
        exact = 0.2 * (5.0 + math.gamma(2.0) * math.gamma(0.2) / math.gamma(2.2))
        res = integrate(
            lambda x: 0.2 * (1.0 - x) ** (-0.8) * (1.0 + x), 0.0, 1.0, spec,
            singular_at_hi=True,
        )
        assert abs(res.value - exact) <= 1e-7
        assert not res.converged  # the requested tolerance is unreachable

    def test_spurious_singularity_flag_is_harmless(self):
        """Flagging a bounded endpoint costs accuracy nothing."""
        res = integrate(lambda x: math.sin(20.0 * x) + 1.1, 0.0, 1.0,
                        singular_at_hi=True)
        exact = (1.0 - math.cos(20.0)) / 20.0 + 1.1
        assert res.converged
        assert abs(res.value - exact) <= 1e-8

    def test_narrow_interior_peak(self):
        """A peak at the resolvable scale is captured by the initial panels."""
        sigma2 = 1e-6
        res = integrate(
            lambda x: math.exp(-((x - 0.37) ** 2) / (2 * sigma2))
            / math.sqrt(2 * math.pi * sigma2),
            0.0, 1.0,
        )
        assert res.converged
        assert abs(res.value - 1.0) <= 1e-8

    def test_two_sided_singularities(self):
        """x**-1/2 (1-x)**-1/2 integrates to pi (arcsine kernel)."""
        res = integrate(
            lambda x: x ** -0.5 * (1.0 - x) ** -0.5, 0.0, 1.0,
            singular_at_lo=True, singular_at_hi=True,
        )
        assert abs(res.value - math.pi) <= 1e-7
