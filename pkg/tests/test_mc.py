import math

import numpy as np
import pytest

from ssrjd import (IntensityParams, McConfig, ParameterError, ShiftFunction,
                   SwaptionSpec, cds_value, expected_level, factor_a, factor_b,
                   gate_integral, mc_survival, mc_swaption_price,
                   payer_swaption_price, simulate_paths)


class TestSimulatePaths:
    def test_seeded_determinism(self, fig2_params):
        cfg = McConfig(paths=5000, steps_per_year=100, seed=321)
        y1, i1 = simulate_paths(fig2_params, 1.0, cfg)
        y2, i2 = simulate_paths(fig2_params, 1.0, cfg)
        np.testing.assert_array_equal(y1, y2)
        np.testing.assert_array_equal(i1, i2)

    def test_deterministic_limit_matches_ode(self):
        # alpha = 0 and vanishing vol: paths collapse onto y' = kappa (mu - y)
        p = IntensityParams(y0=0.01, kappa=0.5, mu=0.03, nu=1e-8, alpha=0.0,
                            gamma=0.01)
        cfg = McConfig(paths=1000, steps_per_year=2000, seed=1)
        y_t, integral = simulate_paths(p, 2.0, cfg)
        closed = p.mu + (p.y0 - p.mu) * math.exp(-p.kappa * 2.0)
        assert float(y_t.mean()) == pytest.approx(closed, abs=1e-4)

    def test_first_moment_matches_jump_adjusted_mean(self, fig2_params):
        p = fig2_params
        cfg = McConfig(paths=120_000, steps_per_year=250, seed=7)
        y_t, _ = simulate_paths(p, 2.0, cfg)
        target = expected_level(p, 2.0)
        se = float(y_t.std(ddof=1)) / math.sqrt(cfg.paths)
        assert abs(float(y_t.mean()) - target) < 3.0 * se

    def test_survival_matches_closed_form_at_published_models(self, bench_models):
        for name, p in bench_models.items():
            cfg = McConfig(paths=150_000, steps_per_year=250, seed=11)
            est = mc_survival(p, 2.0, cfg)
            closed = factor_a(p, 0.0, 2.0) * math.exp(-factor_b(p, 0.0, 2.0) * p.y0)
            assert abs(est.mean - closed) < 3.0 * est.standard_error, name

    def test_standard_error_halves_with_quadruple_paths(self, fig2_params):
        small = mc_survival(fig2_params, 1.0, McConfig(paths=20_000, seed=3))
        big = mc_survival(fig2_params, 1.0, McConfig(paths=80_000, seed=4))
        ratio = big.standard_error / small.standard_error
        assert 0.4 <= ratio <= 0.6

    def test_path_floor_enforced(self):
        with pytest.raises(ParameterError):
            McConfig(paths=10)


class TestMcSwaptionPrice:
    def test_huge_strike_estimates_zero(self, fig2_params, flat_curve, zero_shift,
                                        fwd_schedule):
        spec = SwaptionSpec(maturity=1.0, schedule=fwd_schedule, strike=0.5, lgd=0.7)
        est = mc_swaption_price(fig2_params, zero_shift, flat_curve, spec,
                                McConfig(paths=20_000, seed=9))
        assert abs(est.mean) <= max(3.0 * est.standard_error, 1e-9)

    def test_deep_itm_equals_forward_cds(self, fig2_params, flat_curve, zero_shift,
                                         fwd_schedule):
        strike = 0.003  # far below the gate crossing
        assert gate_integral(fig2_params, zero_shift, flat_curve, fwd_schedule,
                             strike, 0.7) < 0.0
        spec = SwaptionSpec(maturity=1.0, schedule=fwd_schedule, strike=strike, lgd=0.7)
        est = mc_swaption_price(fig2_params, zero_shift, flat_curve, spec,
                                McConfig(paths=150_000, seed=13))
        forward = cds_value(fig2_params, zero_shift, flat_curve, fwd_schedule,
                            strike, 0.7)
        assert abs(est.mean - forward) < 3.0 * est.standard_error

    def test_agrees_with_decomposition_at_forward_strike(self, fig2_params, flat_curve,
                                                         zero_shift, fig2_spec):
        est = mc_swaption_price(fig2_params, zero_shift, flat_curve, fig2_spec,
                                McConfig(paths=200_000, seed=42))
        analytic = payer_swaption_price(fig2_params, zero_shift, flat_curve, fig2_spec)
        assert abs(analytic - est.mean) < 3.0 * est.standard_error

    def test_shifted_model_agreement(self, fig2_params, flat_curve, fwd_schedule):
        shift = ShiftFunction((0.0, 2.0), (0.002, 0.004))
        spec = SwaptionSpec(maturity=1.0, schedule=fwd_schedule, strike=0.025, lgd=0.7)
        est = mc_swaption_price(fig2_params, shift, flat_curve, spec,
                                McConfig(paths=150_000, seed=17))
        analytic = payer_swaption_price(fig2_params, shift, flat_curve, spec)
        assert abs(analytic - est.mean) < 3.0 * est.standard_error


class TestTransformAgainstPaths:
    def test_indicator_transform_within_three_standard_errors(self, model1, model3,
                                                              zero_shift):
        from ssrjd import indicator_transform
        for p in (model1, model3):
            rho = factor_b(p, 0.0, 2.0)
            threshold = 1.2 * expected_level(p, 1.0)
            y_t, integral = simulate_paths(p, 1.0, McConfig(paths=150_000, seed=29))
            sample = np.exp(-rho * y_t - integral) * (y_t >= threshold)
            se = float(sample.std(ddof=1)) / math.sqrt(len(sample))
            analytic = indicator_transform(p, 1.0, p.y0, threshold, rho)
            assert abs(analytic - float(sample.mean())) < 3.0 * se

    def test_option_transform_within_three_standard_errors(self, model1, zero_shift):
        from ssrjd import option_transform
        p = model1
        rho = factor_b(p, 0.0, 2.0)
        threshold = expected_level(p, 1.0)
        y_t, integral = simulate_paths(p, 1.0, McConfig(paths=150_000, seed=37))
        payoff = np.exp(-integral) * np.maximum(
            math.exp(-rho * threshold) - np.exp(-rho * y_t), 0.0)
        se = float(payoff.std(ddof=1)) / math.sqrt(len(payoff))
        analytic = option_transform(p, 0.0, 1.0, p.y0, threshold, rho)
        assert abs(analytic - float(payoff.mean())) < 3.0 * se


class TestMcLegEstimators:
    def test_annuity_and_protection_leg_from_deep_itm_values(self, fig2_params,
                                                             flat_curve, zero_shift,
                                                             fwd_schedule):
        # in the always-exercised regime the estimator is affine in the
        # strike: common-random-number differences isolate the risky
        # annuity, and the zero-strike value isolates the protection leg
        from ssrjd import protection_leg_integral, risky_annuity
        p, lgd = fig2_params, 0.7
        k1, k2 = 0.001, 0.003
        assert gate_integral(p, zero_shift, flat_curve, fwd_schedule, k2, lgd) < 0.0
        cfg = McConfig(paths=150_000, seed=23)

        def value(strike):
            spec = SwaptionSpec(maturity=1.0, schedule=fwd_schedule, strike=strike,
                                lgd=lgd)
            return mc_swaption_price(p, zero_shift, flat_curve, spec, cfg)

        v0, v1, v2 = value(0.0), value(k1), value(k2)
        ann_mc = -(v2.mean - v1.mean) / (k2 - k1)
        ann = risky_annuity(p, zero_shift, flat_curve, fwd_schedule)
        se_ann = (v1.standard_error + v2.standard_error) / (k2 - k1)
        assert abs(ann_mc - ann) < 3.0 * se_ann

        prot = protection_leg_integral(p, zero_shift, flat_curve, fwd_schedule)
        assert abs(v0.mean - (-lgd * prot)) < 3.0 * v0.standard_error
