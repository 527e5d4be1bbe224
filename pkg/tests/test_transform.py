import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from ssrjd import (IntensityParams, ParameterError, PricingConfig, factor_a, factor_b,
                   fourier_integrand, fourier_tail_integral, fourier_terms,
                   indicator_transform, laplace_coeffs, option_transform)
from conftest import random_params


def complex_transform(p: IntensityParams, horizon: float, w: complex) -> complex:
    """E[exp(-w y_T - int_0^T y)] and its exponent via direct complex algebra.

    Independent of the production real-arithmetic route: assembles the
    closed form with complex powers and keeps the unreduced rho-dependent
    exponential-growth term of the jump bracket.
    """
    h = p.h
    E1 = math.expm1(h * horizon)
    den = 2.0 * h + (h + p.kappa + w * p.nu**2) * E1
    beta = (2.0 * w * h + (2.0 + w * (h - p.kappa)) * E1) / den
    xi = (2.0 * h * math.exp(0.5 * (p.kappa + h) * horizon) / den) ** (2.0 * p.kappa * p.mu / p.nu**2)
    if p.alpha == 0.0:
        jump = 1.0
    else:
        g = p.gamma
        q = p.nu**2 - 2.0 * p.kappa * g - 2.0 * g**2
        m = h + p.kappa + w * p.nu**2 + g * (2.0 + w * (h - p.kappa))
        growth = ((h**2 - (p.kappa + 2 * g) ** 2) * (1.0 - 0.5 * w * (h + p.kappa))
                  / (2.0 * (h - p.kappa - 2 * g + w * (g * (h + p.kappa) - p.nu**2))))
        base = (2.0 * h * (1.0 + w * g) * np.exp(growth * horizon)
                / (2.0 * h * (1.0 + w * g) + m * E1))
        jump = base ** (2.0 * p.alpha * g / q)
    return xi * jump * np.exp(-beta * p.y0), beta


def ode_transform(p: IntensityParams, horizon: float, rho: float) -> float:
    """Numerical Riccati/jump integration of the same expectation."""
    def rhs(_, z):
        b = z[0]
        return [1.0 - p.kappa * b - 0.5 * p.nu**2 * b * b,
                -p.kappa * p.mu * b + p.alpha * (1.0 / (1.0 + p.gamma * b) - 1.0)]
    sol = solve_ivp(rhs, [0.0, horizon], [rho, 0.0], rtol=1e-12, atol=1e-14,
                    method="DOP853")
    b, log_a = sol.y[0, -1], sol.y[1, -1]
    return math.exp(log_a) * math.exp(-b * p.y0)


class TestLaplaceCoeffs:
    def test_zero_weight_collapses_to_survival_factors(self, table1_params):
        p = table1_params
        a, b = laplace_coeffs(p, 4.0, 0.0)
        assert a == pytest.approx(factor_a(p, 0.0, 4.0), rel=1e-14)
        assert b == pytest.approx(factor_b(p, 0.0, 4.0), rel=1e-14)

    def test_zero_horizon(self, table1_params):
        a, b = laplace_coeffs(table1_params, 0.0, 1.7)
        assert a == 1.0
        assert b == 1.7

    def test_against_ode_oracle_at_table1_setup(self, table1_params):
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        a, b = laplace_coeffs(p, 1.0, rho)
        assert a * math.exp(-b * p.y0) == pytest.approx(ode_transform(p, 1.0, rho),
                                                        rel=1e-10)

    def test_against_ode_oracle_over_random_draws(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            p = random_params(rng)
            horizon = float(rng.uniform(0.1, 6.0))
            rho = float(rng.uniform(0.0, 3.0))
            a, b = laplace_coeffs(p, horizon, rho)
            assert a * math.exp(-b * p.y0) == pytest.approx(
                ode_transform(p, horizon, rho), rel=1e-9)

    def test_negative_rho_rejected(self, table1_params):
        with pytest.raises(ParameterError):
            laplace_coeffs(table1_params, 1.0, -0.1)


class TestFourierTerms:
    def test_v_zero_limits(self, table1_params):
        t = fourier_terms(table1_params, 1.0, 0.8, 0.0)
        assert t.W == 0.0 and t.K == 0.0 and t.y_tilde == 0.0 and t.H == 0.0
        assert t.N > 0.0

    def test_matches_complex_transform_on_grid(self, table1_params, model3):
        for p in (table1_params, model3):
            rho = factor_b(p, 0.0, 3.0)
            for T in (0.25, 1.0, 4.0):
                for v in (1e-6, 0.3, 3.0, 47.0, 1200.0, 8e5):
                    t = fourier_terms(p, T, rho, v)
                    val, beta = complex_transform(p, T, rho + 1j * v)
                    # (R + iS) e^{(U + iW) y0} must equal the complex transform
                    lhs = (t.R + 1j * t.S) * np.exp((t.U + 1j * t.W) * p.y0)
                    assert lhs.real == pytest.approx(val.real, rel=1e-10, abs=1e-13)
                    assert lhs.imag == pytest.approx(val.imag, rel=1e-10, abs=1e-13)
                    assert t.U == pytest.approx(float(-beta.real), rel=1e-11)
                    assert t.W == pytest.approx(float(-beta.imag), rel=1e-11, abs=1e-14)

    def test_j_stays_positive_over_dense_scan(self, bench_models, table1_params):
        vs = np.geomspace(1e-8, 1e6, 400)
        for p in list(bench_models.values()) + [table1_params]:
            for T in (0.25, 1.0, 5.0):
                for rho in (0.0, factor_b(p, 0.0, 2.0), factor_b(p, 0.0, 30.0)):
                    t = fourier_terms(p, T, rho, vs)
                    assert np.all(t.J >= 1.0)
                    assert np.all(t.N > 0.0)

    def test_jump_factor_is_unity_without_jumps(self):
        p = IntensityParams(y0=0.005, kappa=0.3, mu=0.04, nu=0.12, alpha=0.0, gamma=0.01)
        t = fourier_terms(p, 1.0, 0.5, 2.0)
        assert t.D == 0.0 and t.G == 0.0 and t.H == 0.0
        assert t.J == 1.0 and t.K == 0.0
        assert t.R == t.E and t.S == t.F


class TestFourierIntegrand:
    def test_scalar_matches_vector_evaluation(self, table1_params):
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        vs = np.array([0.5, 5.0, 50.0, 500.0])
        grid = fourier_integrand(p, 1.0, rho, 0.0062, p.y0, vs)
        for v, g in zip(vs, grid):
            assert fourier_integrand(p, 1.0, rho, 0.0062, p.y0, float(v)) == \
                pytest.approx(float(g), rel=1e-14)

    def test_continuous_bounded_and_decaying_like_published_plot(self, table1_params):
        # integrand over (0, 250] is finite everywhere and decays toward 0
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        vs = np.linspace(1e-4, 250.0, 5000)
        vals = fourier_integrand(p, 1.0, rho, 0.0062, p.y0, vs)
        assert np.all(np.isfinite(vals))
        head = np.max(np.abs(vals[vs <= 50.0]))
        tail = np.max(np.abs(vals[vs >= 200.0]))
        assert tail < head

    def test_vanishes_at_large_frequency(self, table1_params):
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        assert abs(fourier_integrand(p, 1.0, rho, 0.0062, p.y0, 1e7)) < 1e-10

    def test_small_v_branch_returns_finite_limit(self, table1_params):
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        at_cutoff = fourier_integrand(p, 1.0, rho, 0.0062, p.y0, 1e-8)
        below = fourier_integrand(p, 1.0, rho, 0.0062, p.y0, 1e-12)
        assert below == at_cutoff
        assert math.isfinite(at_cutoff)

    def test_negative_frequency_rejected(self, table1_params):
        with pytest.raises(ParameterError):
            fourier_integrand(table1_params, 1.0, 0.5, 0.0, 0.005, -1.0)


class TestIndicatorTransform:
    def test_zero_threshold_identity(self, table1_params):
        # the Fourier integral must return exactly -half the leading term
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        a, b = laplace_coeffs(p, 1.0, rho)
        target = a * math.exp(-b * p.y0)
        cfg = PricingConfig(fourier_truncation=1e10, fourier_tol=1e-10)
        assert indicator_transform(p, 1.0, p.y0, 0.0, rho, cfg) == \
            pytest.approx(target, abs=1e-8)

    def test_zero_threshold_identity_over_random_draws(self):
        # the non-oscillatory threshold-zero tail decays like v^-(1 + 2 k m / n^2),
        # so the sample stays in the published-range regime 2 k m / n^2 ~ 1 where
        # truncation at 1e11 leaves < 1e-9
        rng = np.random.default_rng(5)
        cfg = PricingConfig(fourier_truncation=1e11, fourier_tol=1e-10)
        draws = 0
        while draws < 8:
            p = random_params(rng)
            if 2.0 * p.kappa * p.mu / p.nu**2 < 0.95:
                continue
            draws += 1
            horizon = float(rng.uniform(0.25, 3.0))
            rho = float(rng.uniform(0.0, 2.5))
            a, b = laplace_coeffs(p, horizon, rho)
            target = a * math.exp(-b * p.y0)
            assert indicator_transform(p, horizon, p.y0, 0.0, rho, cfg) == \
                pytest.approx(target, abs=1e-8)

    def test_in_unit_interval_and_monotone(self, table1_params):
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        pis = [indicator_transform(p, 1.0, p.y0, s, rho) for s in (0.0, 0.005, 0.02, 0.1)]
        assert all(0.0 <= x <= 1.0 for x in pis)
        assert all(a >= b - 1e-12 for a, b in zip(pis, pis[1:]))  # nonincreasing in threshold
        pis_rho = [indicator_transform(p, 1.0, p.y0, 0.0062, r) for r in (0.0, 0.5, 2.2)]
        assert all(a >= b - 1e-12 for a, b in zip(pis_rho, pis_rho[1:]))

    def test_unit_interval_over_random_draws(self):
        rng = np.random.default_rng(17)
        for _ in range(15):
            p = random_params(rng)
            horizon = float(rng.uniform(0.25, 4.0))
            threshold = float(rng.uniform(0.0, 0.1))
            rho = float(rng.uniform(0.0, 2.5))
            val = indicator_transform(p, horizon, p.y0, threshold, rho)
            assert -1e-8 <= val <= 1.0 + 1e-8

    def test_continuous_across_singular_jump_parameter(self):
        # the q ~ 0 band switches the integrand to its complex limit form;
        # the value must join the regular branch continuously
        kap, nu = 0.196, 0.1594
        h = math.sqrt(kap**2 + 2 * nu**2)
        gstar = (h - kap) / 2.0
        vals = {}
        for eps in (0.0, 1e-5, -1e-5):
            p = IntensityParams(y0=0.005, kappa=kap, mu=0.065, nu=nu,
                                alpha=0.5, gamma=gstar + eps)
            vals[eps] = indicator_transform(p, 1.0, p.y0, 0.0062, 1.5)
        assert vals[1e-5] != vals[0.0]  # genuinely different parameters
        assert abs(vals[1e-5] - vals[0.0]) < 1e-4
        assert abs(vals[-1e-5] - vals[0.0]) < 1e-4

    def test_budget_exhaustion_raises_with_estimate(self, table1_params):
        p = table1_params
        from ssrjd import ConvergenceError
        cfg = PricingConfig(fourier_tol=1e-16, fourier_budget=2000)
        with pytest.raises(ConvergenceError) as err:
            indicator_transform(p, 1.0, p.y0, 0.0062, 1.0, cfg)
        assert err.value.estimate is not None
        assert err.value.error_bound is not None


class TestOptionTransform:
    def test_zero_weight_vanishes(self, table1_params):
        assert option_transform(table1_params, 0.0, 1.0, 0.005, 0.01, 0.0) == 0.0

    def test_zero_threshold_boundary(self, table1_params):
        # at threshold zero the first leg equals the shiftless survival factor
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        cfg = PricingConfig(fourier_truncation=1e10, fourier_tol=1e-10)
        val = option_transform(p, 0.0, 1.0, p.y0, 0.0, rho, cfg)
        a, b = laplace_coeffs(p, 1.0, 0.0)
        shiftless = a * math.exp(-b * p.y0)
        pir = indicator_transform(p, 1.0, p.y0, 0.0, rho, cfg)
        assert val == pytest.approx(max(0.0, shiftless - pir), abs=2e-8)
        assert val >= 0.0

    def test_nonnegative_over_parameter_sample(self, bench_models):
        for p in bench_models.values():
            for thr in (0.003, 0.02):
                for rho in (0.3, 1.8):
                    assert option_transform(p, 0.0, 1.0, p.y0, thr, rho) >= 0.0

    def test_time_homogeneity(self, table1_params):
        p = table1_params
        v1 = option_transform(p, 0.0, 1.0, p.y0, 0.006, 1.1)
        v2 = option_transform(p, 2.5, 3.5, p.y0, 0.006, 1.1)
        assert v1 == v2


class TestTruncationLadder:
    def test_monotone_convergence_pattern(self, table1_params):
        # the truncated integral stabilizes by N = 1e5 at the default tolerance
        p = table1_params
        rho = factor_b(p, 0.0, 3.0)
        values = {}
        for n in (1e2, 1e4, 1e5, 1e6):
            res = fourier_tail_integral(p, 1.0, rho, 0.0062, p.y0, truncation=n)
            assert res.converged
            values[n] = res.value
        assert abs(values[1e6] - values[1e5]) < 5e-6
        assert abs(values[1e6] - values[1e2]) > 1e-3
