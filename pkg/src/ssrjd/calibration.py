"""Curve and parameter calibration.

The shift function is bootstrapped exactly: one level per quote
interval, solved sequentially, so earlier quotes fully determine the
curve prefix. Parameter fitting is a derivative-free least-squares on
swaption prices with the shift re-bootstrapped inside every objective
evaluation; price space avoids implied-vol inversion failures in the
optimizer loop.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize

from .cds import fair_spread
from .config import DEFAULT_CONFIG, PricingConfig
from .model import (CalibrationError, DiscountCurve, IntensityParams, ParameterError,
                    PaymentSchedule, PiecewiseFlat, ShiftFunction, SwaptionSpec)
from .swaption import price_swaption

_ZERO_LEVEL_SLACK = 1e-8  # quotes this close below the zero-shift spread clamp to 0


def bootstrap_shift(p: IntensityParams, curve: DiscountCurve,
                    quotes: list[tuple[float, float]], lgd: float,
                    per_year: int = 4,
                    config: PricingConfig = DEFAULT_CONFIG) -> ShiftFunction:
    """Piecewise-constant shift matching a spot CDS spread term structure.

    quotes: (maturity_years, spread) pairs, strictly increasing in
    maturity and on the payment grid. Each interval's level is found by
    bracketed root search; a quote that would force a negative level
    raises CalibrationError naming the interval.
    """
    if not quotes:
        raise ParameterError("no quotes to bootstrap")
    maturities = [m for m, _ in quotes]
    spreads = [s for _, s in quotes]
    if any(b <= a for a, b in zip(maturities, maturities[1:])):
        raise ParameterError("quote maturities must be strictly increasing")
    if any(s <= 0.0 for s in spreads):
        raise ParameterError("quoted spreads must be positive")

    starts = [0.0]
    levels: list[float] = []
    prev = 0.0
    for (maturity, quote) in quotes:
        schedule = PaymentSchedule.regular(0.0, maturity, per_year)

        def spread_gap(level: float) -> float:
            trial = PiecewiseFlat(tuple(starts), tuple(levels) + (level,))
            return fair_spread(p, trial, curve, schedule, lgd, 0.0, None, config) - quote

        gap0 = spread_gap(0.0)
        if gap0 > _ZERO_LEVEL_SLACK:
            raise CalibrationError(
                f"quote at maturity {maturity}y ({quote:.6f}) lies below the "
                f"zero-shift spread by {gap0:.3e}: the shift would be negative "
                f"on ({prev}y, {maturity}y]")
        if gap0 >= 0.0:
            root = 0.0
        else:
            hi = 0.5
            while spread_gap(hi) < 0.0:
                hi *= 2.0
                if hi > 1e3:
                    raise CalibrationError(
                        f"no shift level matches the quote at maturity {maturity}y")
            root = brentq(spread_gap, 0.0, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200)
        levels.append(root)
        if maturity != quotes[-1][0]:
            starts.append(maturity)
        prev = maturity
    return ShiftFunction(tuple(starts), tuple(levels))


@dataclass(frozen=True)
class FitReport:
    params: IntensityParams
    shift: ShiftFunction
    objective: float
    trace: tuple[float, ...]
    residuals: tuple[float, ...]
    evaluations: int
    converged: bool


def fit_params(initial: IntensityParams, curve: DiscountCurve,
               cds_quotes: list[tuple[float, float]],
               swaption_quotes: list[tuple[SwaptionSpec, float]],
               budget: int = 500, enforce_feller: bool = False,
               config: PricingConfig = DEFAULT_CONFIG) -> FitReport:
    """Least-squares fit of the factor parameters to swaption prices.

    Minimizes the sum of squared relative price errors over the six
    parameters (log-transformed, so the positivity box holds by
    construction), re-bootstrapping the shift to the CDS quotes inside
    each evaluation. The returned trace is the best objective seen after
    each evaluation, hence nonincreasing.
    """
    if not swaption_quotes:
        raise ParameterError("need at least one swaption quote")
    lgd = swaption_quotes[0][0].lgd

    trace: list[float] = []
    evaluations = 0
    _PENALTY = 1e6

    def unpack(x) -> IntensityParams:
        y0, kappa, mu, nu, alpha, gamma = np.exp(x)
        return IntensityParams(y0=y0, kappa=kappa, mu=mu, nu=nu, alpha=alpha, gamma=gamma)

    def objective(x) -> float:
        nonlocal evaluations
        evaluations += 1
        try:
            trial = unpack(x)
            if enforce_feller and not trial.feller_holds():
                raise CalibrationError("feller")
            value = _price_errors(trial)
        except (CalibrationError, ParameterError, OverflowError):
            value = _PENALTY
        best = min(value, trace[-1]) if trace else value
        trace.append(best)
        return value

    def _price_errors(trial: IntensityParams, collect=None) -> float:
        shift = (bootstrap_shift(trial, curve, cds_quotes, lgd, config=config)
                 if cds_quotes else ShiftFunction.zero())
        total = 0.0
        for contract, quote in swaption_quotes:
            model = price_swaption(trial, shift, curve, contract, None, config).price
            rel = (model - quote) / quote
            total += rel * rel
            if collect is not None:
                collect.append(rel)
        return total

    x0 = np.log([initial.y0, initial.kappa, initial.mu, initial.nu,
                 initial.alpha, initial.gamma])
    result = minimize(objective, x0, method="Nelder-Mead",
                      options={"maxfev": budget, "xatol": 1e-6, "fatol": 1e-12})

    fitted = unpack(result.x)
    shift = (bootstrap_shift(fitted, curve, cds_quotes, lgd, config=config)
             if cds_quotes else ShiftFunction.zero())
    residuals: list[float] = []
    final = _price_errors(fitted, collect=residuals)
    return FitReport(params=fitted, shift=shift, objective=final,
                     trace=tuple(trace), residuals=tuple(residuals),
                     evaluations=evaluations, converged=bool(result.success))
