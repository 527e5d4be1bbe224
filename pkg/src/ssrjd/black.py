"""Black-style market quoting formula and implied-volatility smiles.

The market convention prices a payer default swaption as
annuity * [F Phi(d1) - K Phi(d2)] off a lognormal forward spread. Here
it is used purely as a quoting device: model prices from the
decomposition are re-expressed as implied volatilities against the
model's own annuity and forward.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .cds import fair_spread, risky_annuity
from .config import DEFAULT_CONFIG, PricingConfig
from .model import (ConvergenceError, DiscountCurve, IntensityParams, ParameterError,
                    ShiftFunction, SwaptionSpec)
from .swaption import price_swaption


def norm_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def black_payer_price(annuity: float, forward: float, strike: float,
                      sigma: float, expiry: float) -> float:
    """annuity * [F Phi(d1) - K Phi(d2)]; intrinsic at sigma = 0."""
    if annuity <= 0.0:
        raise ParameterError(f"annuity must be positive, got {annuity}")
    if forward <= 0.0 or strike <= 0.0:
        raise ParameterError("forward and strike must be positive (log-moneyness)")
    if expiry <= 0.0:
        raise ParameterError(f"expiry must be positive, got {expiry}")
    if sigma < 0.0:
        raise ParameterError(f"sigma must be nonnegative, got {sigma}")
    if sigma == 0.0:
        return annuity * max(forward - strike, 0.0)
    sq = sigma * math.sqrt(expiry)
    d1 = (math.log(forward / strike) + 0.5 * expiry * sigma**2) / sq
    d2 = d1 - sq
    return annuity * (forward * norm_cdf(d1) - strike * norm_cdf(d2))


def implied_vol(annuity: float, forward: float, strike: float, expiry: float,
                price: float, price_tol: float = 1e-10) -> float:
    """Unique sigma reproducing the price; price must lie in the static band.

    The payer price increases strictly in sigma from the intrinsic value
    to annuity * forward, which bounds the search and guarantees
    uniqueness.
    """
    intrinsic = black_payer_price(annuity, forward, strike, 0.0, expiry)
    upper = annuity * forward
    if price < intrinsic - price_tol:
        raise ParameterError(
            f"price {price} below the intrinsic bound {intrinsic}; not attainable")
    if price > upper + price_tol:
        raise ParameterError(
            f"price {price} above the annuity*forward bound {upper}; not attainable")
    price = min(max(price, intrinsic), upper)
    if price <= intrinsic + price_tol and strike < forward:
        return 0.0

    def gap(sigma):
        return black_payer_price(annuity, forward, strike, sigma, expiry) - price

    hi = 1.0
    while gap(hi) < 0.0:
        hi *= 2.0
        if hi > 1e4:
            raise ConvergenceError("implied volatility bracket expansion failed")
    vol = brentq(gap, 0.0, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200)
    if abs(gap(vol)) > price_tol:
        raise ConvergenceError(f"implied volatility inversion residual {gap(vol):.2e}",
                               estimate=vol, error_bound=abs(gap(vol)))
    return float(vol)


@dataclass(frozen=True)
class SmilePoint:
    strike: float
    model_price: float
    implied_vol: float
    converged: bool


def default_strike_grid(forward: float, n: int = 21,
                        lo: float = 0.5, hi: float = 2.0):
    """Log-spaced strikes from lo x forward to hi x forward."""
    return forward * np.exp(np.linspace(math.log(lo), math.log(hi), n))


def generate_smile(p: IntensityParams, psi: ShiftFunction, curve: DiscountCurve,
                   spec: SwaptionSpec, strikes=None,
                   config: PricingConfig = DEFAULT_CONFIG) -> list[SmilePoint]:
    """Price each strike with the decomposition and invert to implied vols.

    Annuity and forward are the model's own, computed once at the
    valuation time. Non-invertible points are flagged, never dropped.
    """
    t = spec.valuation_time
    annuity = risky_annuity(p, psi, curve, spec.schedule, t, None, config)
    forward = fair_spread(p, psi, curve, spec.schedule, spec.lgd, t, None, config)
    if strikes is None:
        strikes = default_strike_grid(forward)
    expiry = spec.maturity - t

    points = []
    for k in np.asarray(strikes, dtype=float):
        if k <= 0.0:
            raise ParameterError(f"strikes must be positive, got {k}")
        contract = SwaptionSpec(maturity=spec.maturity, schedule=spec.schedule,
                                strike=float(k), lgd=spec.lgd, valuation_time=t)
        try:
            price = price_swaption(p, psi, curve, contract, None, config).price
        except ConvergenceError as err:
            est = float("nan") if err.estimate is None else float(err.estimate)
            points.append(SmilePoint(float(k), est, float("nan"), False))
            continue
        try:
            vol = implied_vol(annuity, forward, float(k), expiry, price)
        except (ConvergenceError, ParameterError):
            points.append(SmilePoint(float(k), price, float("nan"), False))
            continue
        # a price pinned at intrinsic only admits the boundary vol 0; flag
        # it rather than report a spurious interior inversion
        points.append(SmilePoint(float(k), price, vol, vol > 0.0))
    return points
