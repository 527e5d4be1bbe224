"""Present value of a (forward) credit default swap.

Unit notional, currency-free outputs, spreads in decimal per year. All
time integrals use composite Simpson with payment dates as panel
boundaries: the accrual integrand resets at each payment date, so
panels never straddle one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, PricingConfig
from .model import (DiscountCurve, IntensityParams, ParameterError, PaymentSchedule,
                    ShiftFunction)
from .quadrature import panel_step_values, simpson_panel_grid
from .survival import _log_derivative_terms, survival


@dataclass(frozen=True)
class CdsLegBreakdown:
    """Protection-buyer bookkeeping of a CDS value.

    pv = protection_leg - premium_leg - accrual_on_default
       = -(spread * annuity + lgd * protection_integral).
    """

    premium_leg: float
    accrual_on_default: float
    protection_leg: float
    annuity: float
    pv: float


def _leg_inputs(p, psi, curve, schedule, t, y, config):
    if t > schedule.start:
        raise ParameterError(f"valuation time {t} is past schedule start {schedule.start}")
    y_val = p.y0 if y is None else float(y)
    nodes, weights, panel_left, panel_right = simpson_panel_grid(
        np.asarray(schedule.dates), config.leg_subpanels)
    disc = curve.discount(t, nodes)
    # the shift enters dS/du pointwise: sample it panel-sided so knots on
    # payment dates stay out of the preceding panel
    s = survival(p, psi, t, nodes, y_val)
    dlog_xi, db, dlog_zeta = _log_derivative_terms(p, nodes - t)
    psi_u = panel_step_values(psi, nodes, panel_right)
    dS = s * (dlog_xi - y_val * db + dlog_zeta - psi_u)
    return y_val, nodes, weights, panel_left, disc, dS


def risky_annuity(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                  schedule: PaymentSchedule, t: float = 0.0, y=None,
                  config: PricingConfig = DEFAULT_CONFIG) -> float:
    """PV of a unit running spread including accrual on default.

    Coupon sum over the payment dates minus the accrual integral
    int (u - previous date) D(t, u) dS/du du over the protection span.
    """
    y_val, nodes, weights, panel_left, disc, dS = _leg_inputs(
        p, psi, curve, schedule, t, y, config)
    dates = np.asarray(schedule.dates[1:])
    accr = np.diff(schedule.dates)
    coupons = float(np.sum(accr * curve.discount(t, dates)
                           * survival(p, psi, t, dates, y_val)))
    accrual_integral = float(np.dot(weights, (nodes - panel_left) * disc * dS))
    return coupons - accrual_integral


def protection_leg_integral(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                            schedule: PaymentSchedule, t: float = 0.0, y=None,
                            config: PricingConfig = DEFAULT_CONFIG) -> float:
    """int D(t, u) dS/du du over the protection span; always <= 0."""
    _, _, weights, _, disc, dS = _leg_inputs(p, psi, curve, schedule, t, y, config)
    return float(np.dot(weights, disc * dS))


def cds_breakdown(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                  schedule: PaymentSchedule, spread: float, lgd: float,
                  t: float = 0.0, y=None,
                  config: PricingConfig = DEFAULT_CONFIG) -> CdsLegBreakdown:
    y_val, nodes, weights, panel_left, disc, dS = _leg_inputs(
        p, psi, curve, schedule, t, y, config)
    dates = np.asarray(schedule.dates[1:])
    accr = np.diff(schedule.dates)
    coupons = float(np.sum(accr * curve.discount(t, dates)
                           * survival(p, psi, t, dates, y_val)))
    accrual_integral = float(np.dot(weights, (nodes - panel_left) * disc * dS))
    prot_integral = float(np.dot(weights, disc * dS))
    annuity = coupons - accrual_integral
    return CdsLegBreakdown(
        premium_leg=spread * coupons,
        accrual_on_default=-spread * accrual_integral,
        protection_leg=-lgd * prot_integral,
        annuity=annuity,
        pv=-(spread * annuity + lgd * prot_integral),
    )


def cds_value(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
              schedule: PaymentSchedule, spread: float, lgd: float,
              t: float = 0.0, y=None,
              config: PricingConfig = DEFAULT_CONFIG) -> float:
    """Protection-buyer PV; positive when the running spread is below fair."""
    return cds_breakdown(p, psi, curve, schedule, spread, lgd, t, y, config).pv


def fair_spread(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                schedule: PaymentSchedule, lgd: float, t: float = 0.0, y=None,
                config: PricingConfig = DEFAULT_CONFIG) -> float:
    """Running spread that zeroes the CDS value (scales linearly with lgd)."""
    y_val, nodes, weights, panel_left, disc, dS = _leg_inputs(
        p, psi, curve, schedule, t, y, config)
    dates = np.asarray(schedule.dates[1:])
    accr = np.diff(schedule.dates)
    coupons = float(np.sum(accr * curve.discount(t, dates)
                           * survival(p, psi, t, dates, y_val)))
    annuity = coupons - float(np.dot(weights, (nodes - panel_left) * disc * dS))
    if annuity <= 0.0:
        raise ParameterError(f"risky annuity is not positive ({annuity}); "
                             "cannot quote a fair spread")
    prot = float(np.dot(weights, disc * dS))
    return -lgd * prot / annuity
