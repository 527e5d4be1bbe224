"""Semi-analytic payer default-swaption price.

The option on the forward CDS decomposes into a maturity-continuum of
options on survival probabilities once the critical factor level y* is
known. The weight h(u) carries a Dirac mass at the final date (the
protection payment against the terminal survival probability); that
mass never enters a quadrature: it is added analytically to every
integral of h against a continuous function.

When the strike is so far in the money that no y* >= 0 exists (the gate
integral below is negative), the option is exercised almost surely and
the price equals the forward CDS value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cds import cds_value
from .config import DEFAULT_CONFIG, PricingConfig
from .model import (BranchError, ConvergenceError, DiscountCurve, IntensityParams,
                    ParameterError, PaymentSchedule, ShiftFunction, SwaptionSpec)
from .quadrature import panel_step_values, simpson_panel_grid
from .survival import _log_derivative_terms, factor_a, factor_b, survival
from .transform import indicator_transform

DECOMPOSED = "decomposed"
DEEP_IN_THE_MONEY = "deep-in-the-money"


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of one swaption valuation.

    y_star is present exactly when the decomposed branch was taken;
    gate_integral < 0 selects the deep-in-the-money branch.
    """

    branch: str
    gate_integral: float
    price: float
    y_star: float | None = None
    outer_nodes: int = 0

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "gate_integral": self.gate_integral,
            "price": self.price,
            "y_star": self.y_star,
            "outer_nodes": self.outer_nodes,
        }


def h_weight(curve: DiscountCurve, schedule: PaymentSchedule, strike: float,
             lgd: float, u: float) -> tuple[float, float]:
    """(continuous part of h(u), point mass at the final date).

    continuous = D(T_a,u) [lgd*r(u) + K (1 - (u - previous date) r(u))];
    the point mass lgd*D(T_a,T_b) is returned alongside and must be added
    analytically to any integral of h. At an exact payment date the
    accrual uses the just-elapsed period (left limit); panel-based
    integration never evaluates the ambiguous point from both sides.
    """
    ta, tb = schedule.start, schedule.end
    if not ta <= u <= tb:
        raise ParameterError(f"u = {u} outside protection span [{ta}, {tb}]")
    if u == ta:
        prev = ta
    else:
        i = np.searchsorted(schedule.dates, u, side="left") - 1
        prev = schedule.dates[max(i, 0)]
    r_u = curve.rate(u)
    cont = curve.discount(ta, u) * (lgd * r_u + strike * (1.0 - (u - prev) * r_u))
    return float(cont), float(lgd * curve.discount(ta, tb))


class _InnerGrid:
    """Simpson machinery over the protection span, built once per pricing.

    Provides the gate integrand, the map y -> int h(u) S(T_a,u;y) du
    (point mass included) and the pieces of the outer decomposition
    integral, all on a shared node set.
    """

    def __init__(self, p, psi, curve, schedule, strike, lgd, sub_per_panel):
        self.p, self.psi, self.curve = p, psi, curve
        self.schedule, self.strike, self.lgd = schedule, strike, lgd
        ta, tb = schedule.start, schedule.end
        nodes, weights, panel_left, panel_right = simpson_panel_grid(
            np.asarray(schedule.dates), sub_per_panel)
        self.nodes, self.weights = nodes, weights
        self.panel_right = panel_right
        self.accrual = nodes - panel_left
        self.disc = curve.discount(ta, nodes)
        self.rate = panel_step_values(curve, nodes, panel_right)
        self.h_cont = self.disc * (lgd * self.rate
                                   + strike * (1.0 - self.accrual * self.rate))
        self.big_a = factor_a(p, ta, nodes) * np.exp(-psi.integral(ta, nodes))
        self.big_b = factor_b(p, ta, nodes)
        self.point_mass = lgd * float(curve.discount(ta, tb))
        self.big_a_end = float(factor_a(p, ta, tb) * math.exp(-psi.integral(ta, tb)))
        self.big_b_end = float(factor_b(p, ta, tb))

    def gate(self) -> float:
        ta = self.schedule.start
        s0 = survival(self.p, self.psi, ta, self.nodes, 0.0)
        dlog_xi, db, dlog_zeta = _log_derivative_terms(self.p, self.nodes - ta)
        psi_u = panel_step_values(self.psi, self.nodes, self.panel_right)
        ds0 = s0 * (dlog_xi + dlog_zeta - psi_u)
        integrand = (self.lgd * self.disc * ds0
                     + self.strike * s0 * self.disc * (1.0 - self.accrual * self.rate))
        return float(np.dot(self.weights, integrand))

    def h_against_survival(self, y: float) -> float:
        cont = float(np.dot(self.weights, self.h_cont * self.big_a
                            * np.exp(-self.big_b * y)))
        return cont + self.point_mass * self.big_a_end * math.exp(-self.big_b_end * y)

    def survival_weights(self):
        """(coefficients c_j, exponents B_j) with int h S(.;y) = sum c_j e^{-B_j y}."""
        c = np.append(self.weights * self.h_cont * self.big_a,
                      self.point_mass * self.big_a_end)
        b = np.append(self.big_b, self.big_b_end)
        return c, b


def gate_integral(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                  schedule: PaymentSchedule, strike: float, lgd: float,
                  config: PricingConfig = DEFAULT_CONFIG) -> float:
    """Sign gate of the decomposition, evaluated at factor level zero.

    Negative values mean the critical-level equation has no nonnegative
    root and the option price is the forward CDS value.
    """
    grid = _InnerGrid(p, psi, curve, schedule, strike, lgd, config.leg_subpanels)
    return grid.gate()


def _solve_y_star_on(grid: _InnerGrid, lgd: float) -> float:
    f0 = grid.h_against_survival(0.0)
    if f0 <= lgd:
        # the gate integrand and h*S are discretized differently, so right
        # at the branch boundary f0 can sit a quadrature-noise hair below
        # lgd while the gate is nonnegative; there the root is zero
        if f0 >= lgd - 1e-9 * max(1.0, lgd):
            return 0.0
        raise BranchError("no nonnegative critical level exists "
                          "(gate integral is negative); price as a forward CDS")
    lo, hi = 0.0, 1.0
    while grid.h_against_survival(hi) > lgd:
        hi *= 2.0
        if hi > 1e12:
            raise ConvergenceError("critical-level bracket expansion failed")
    # the map y -> int h S is strictly decreasing, so bisection is globally safe
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if grid.h_against_survival(mid) > lgd:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    y_star = 0.5 * (lo + hi)
    resid = grid.h_against_survival(y_star) - lgd
    if abs(resid) > 1e-12 * lgd:
        raise ConvergenceError(f"critical-level residual {resid:.3e} exceeds tolerance",
                               estimate=y_star, error_bound=abs(resid))
    return y_star


def solve_y_star(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                 schedule: PaymentSchedule, strike: float, lgd: float,
                 config: PricingConfig = DEFAULT_CONFIG) -> float:
    """Unique y* >= 0 with int h(u) S(T_a, u; y*) du = lgd (point mass included)."""
    grid = _InnerGrid(p, psi, curve, schedule, strike, lgd, config.leg_subpanels)
    return _solve_y_star_on(grid, lgd)


def price_swaption(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                   spec: SwaptionSpec, y=None,
                   config: PricingConfig = DEFAULT_CONFIG) -> DecompositionReport:
    """Payer default-swaption price, conditional on survival at valuation.

    Decomposed branch: D(t,T_a) e^{-int psi} [ int h A e^{-int psi} Psi du
    + point-mass term ], with the outer integral on a Simpson grid whose
    panels are the payment periods. Deep-in-the-money branch: the forward
    CDS value.
    """
    t = spec.valuation_time
    ta = spec.maturity
    y_val = p.y0 if y is None else float(y)
    schedule = spec.schedule

    gate_grid = _InnerGrid(p, psi, curve, schedule, spec.strike, spec.lgd,
                           config.leg_subpanels)
    gate = gate_grid.gate()
    if gate < 0.0:
        price = cds_value(p, psi, curve, schedule, spec.strike, spec.lgd,
                          t, y_val, config)
        return DecompositionReport(branch=DEEP_IN_THE_MONEY, gate_integral=gate,
                                   price=price)

    y_star = _solve_y_star_on(gate_grid, spec.lgd)

    outer = _InnerGrid(p, psi, curve, schedule, spec.strike, spec.lgd,
                       config.outer_subpanels)
    tau = ta - t
    pi0 = indicator_transform(p, tau, y_val, y_star, 0.0, config)

    cache: dict[float, float] = {}

    def psi_option(rho: float) -> float:
        # duplicated panel-boundary nodes share their exponent, so memoize
        if rho == 0.0:
            return 0.0
        if rho not in cache:
            pir = indicator_transform(p, tau, y_val, y_star, rho, config)
            cache[rho] = max(0.0, math.exp(-rho * y_star) * pi0 - pir)
        return cache[rho]

    try:
        psi_vals = np.array([psi_option(b) for b in outer.big_b])
        core = float(np.dot(outer.weights, outer.h_cont * outer.big_a * psi_vals))
        core += outer.point_mass * outer.big_a_end * psi_option(outer.big_b_end)
    except ConvergenceError as err:
        raise ConvergenceError(
            f"{err} [decomposed branch, gate={gate:.6e}, y_star={y_star:.6e}]",
            estimate=err.estimate, error_bound=err.error_bound) from err
    price = float(curve.discount(t, ta)) * math.exp(-psi.integral(t, ta)) * core
    return DecompositionReport(branch=DECOMPOSED, gate_integral=gate, price=price,
                               y_star=y_star, outer_nodes=int(outer.nodes.size))


def payer_swaption_price(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                         spec: SwaptionSpec, y=None,
                         config: PricingConfig = DEFAULT_CONFIG) -> float:
    return price_swaption(p, psi, curve, spec, y, config).price
