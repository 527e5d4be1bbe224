"""CDS and default-swaption pricing under a shifted square-root
jump-diffusion default intensity, with an independent Monte Carlo oracle."""

from .black import (SmilePoint, black_payer_price, default_strike_grid, generate_smile,
                    implied_vol, norm_cdf)
from .calibration import FitReport, bootstrap_shift, fit_params
from .cds import (CdsLegBreakdown, cds_breakdown, cds_value, fair_spread,
                  protection_leg_integral, risky_annuity)
from .config import DEFAULT_CONFIG, PricingConfig
from .mc import (McConfig, McEstimate, expected_level, mc_survival, mc_swaption_price,
                 simulate_paths)
from .model import (BranchError, CalibrationError, ConvergenceError, DiscountCurve,
                    FellerViolation, FellerWarning, IntensityParams, ParameterError,
                    PaymentSchedule, PiecewiseFlat, ShiftFunction, SwaptionSpec,
                    validate_params)
from .quadrature import (QuadratureResult, adaptive_lobatto, composite_simpson,
                         panel_step_values, simpson_panel_grid)
from .survival import (SurvivalFactors, factor_a, factor_b, factor_xi, factor_zeta,
                       survival, survival_factors, survival_maturity_derivative)
from .swaption import (DecompositionReport, gate_integral, h_weight,
                       payer_swaption_price, price_swaption, solve_y_star)
from .transform import (FourierTerms, fourier_integrand, fourier_tail_integral,
                        fourier_terms, indicator_transform, laplace_coeffs,
                        option_transform)

__all__ = [
    "BranchError", "CalibrationError", "CdsLegBreakdown", "ConvergenceError",
    "DEFAULT_CONFIG", "DecompositionReport", "DiscountCurve", "FellerViolation",
    "FellerWarning", "FitReport", "FourierTerms", "IntensityParams", "McConfig",
    "McEstimate", "ParameterError", "PaymentSchedule", "PiecewiseFlat",
    "PricingConfig", "QuadratureResult", "ShiftFunction", "SmilePoint",
    "SurvivalFactors", "SwaptionSpec", "adaptive_lobatto", "black_payer_price",
    "bootstrap_shift", "cds_breakdown", "cds_value", "composite_simpson",
    "default_strike_grid", "expected_level", "factor_a", "factor_b", "factor_xi",
    "factor_zeta", "fair_spread", "fit_params", "fourier_integrand",
    "fourier_tail_integral", "fourier_terms", "gate_integral", "generate_smile",
    "h_weight", "implied_vol", "indicator_transform", "laplace_coeffs",
    "mc_survival", "mc_swaption_price", "norm_cdf", "option_transform",
    "panel_step_values", "payer_swaption_price", "price_swaption",
    "protection_leg_integral", "risky_annuity", "simpson_panel_grid",
    "simulate_paths", "solve_y_star", "survival", "survival_factors",
    "survival_maturity_derivative", "validate_params",
]
__version__ = "0.1.0"
