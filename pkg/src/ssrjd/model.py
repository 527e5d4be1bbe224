"""Model, contract and curve data types.

Everything here is an immutable container with validated invariants; no
pricing logic. Times are real-valued year fractions from the valuation
epoch (no calendar or day-count layer).
"""
from __future__ import annotations

import bisect
import math
import warnings
from dataclasses import dataclass

import numpy as np


class ParameterError(ValueError):
    """Invalid model or contract input; the message names the field."""


class FellerViolation(ParameterError):
    """2*kappa*mu > nu**2 fails in strict validation mode."""


class FellerWarning(UserWarning):
    """2*kappa*mu > nu**2 fails; recorded but not fatal in lenient mode."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to converge.

    Carries the best available estimate and its error bound so callers
    can decide whether to use it anyway.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class BranchError(RuntimeError):
    """The decomposition branch was requested outside its domain."""


class CalibrationError(RuntimeError):
    """A calibration target cannot be met; the message names the interval."""


@dataclass(frozen=True)
class IntensityParams:
    """Parameters of the square-root jump-diffusion intensity factor.

    y0:    initial factor level (1/year)
    kappa: mean-reversion speed (1/year)
    mu:    diffusive long-term mean (1/year)
    nu:    diffusion volatility of sqrt(y)
    alpha: jump arrival intensity (1/year); zero gives the pure-diffusion
           sub-model
    gamma: mean of the exponential jump sizes (1/year)
    """

    y0: float
    kappa: float
    mu: float
    nu: float
    alpha: float
    gamma: float

    def __post_init__(self):
        for name in ("y0", "kappa", "mu", "nu", "gamma"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ParameterError(f"{name} must be strictly positive, got {v!r}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0.0):
            raise ParameterError(f"alpha must be nonnegative, got {self.alpha!r}")
        if not math.isfinite(self.h) or self.h <= 0.0:
            raise ParameterError("derived h = sqrt(kappa^2 + 2 nu^2) is not finite and positive")

    @property
    def h(self) -> float:
        return math.sqrt(self.kappa**2 + 2.0 * self.nu**2)

    @property
    def feller_margin(self) -> float:
        """2*kappa*mu - nu**2; positive iff the factor cannot reach zero."""
        return 2.0 * self.kappa * self.mu - self.nu**2

    def feller_holds(self) -> bool:
        return self.feller_margin > 0.0


def validate_params(p: IntensityParams, strict: bool = False) -> IntensityParams:
    """Validate parameters beyond construction-time positivity.

    In strict mode a Feller-condition violation raises FellerViolation;
    in lenient mode it is emitted as a FellerWarning and the parameters
    are returned unchanged. Lenient mode exists because published
    parameter sets can violate the condition marginally at printed
    precision.
    """
    if not p.feller_holds():
        msg = (f"Feller condition violated: 2*kappa*mu = {2 * p.kappa * p.mu:.6e} "
               f"<= nu^2 = {p.nu**2:.6e}")
        if strict:
            raise FellerViolation(msg)
        warnings.warn(msg, FellerWarning, stacklevel=2)
    return p


@dataclass(frozen=True)
class PiecewiseFlat:
    """Right-continuous piecewise-constant function of time.

    ``values[i]`` applies on ``[starts[i], starts[i+1])``; the last value
    extrapolates to infinity. ``starts[0]`` must be 0 so the function is
    defined on the whole pricing horizon.
    """

    starts: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "starts", tuple(float(x) for x in self.starts))
        object.__setattr__(self, "values", tuple(float(x) for x in self.values))
        if len(self.starts) != len(self.values) or not self.starts:
            raise ParameterError("starts and values must be equal-length and nonempty")
        if self.starts[0] != 0.0:
            raise ParameterError(f"first knot must be 0.0, got {self.starts[0]!r}")
        for a, b in zip(self.starts, self.starts[1:]):
            if not b > a:
                raise ParameterError("knots must be strictly increasing")
        if not all(math.isfinite(v) for v in self.values):
            raise ParameterError("levels must be finite")

    @classmethod
    def flat(cls, level: float):
        return cls((0.0,), (float(level),))

    def value(self, u):
        """Level at time u (right-continuous at knots); u may be an array."""
        uu = np.asarray(u, dtype=float)
        idx = np.clip(np.searchsorted(self.starts, uu, side="right") - 1, 0, None)
        out = np.asarray(self.values)[idx]
        return float(out) if np.isscalar(u) or uu.ndim == 0 else out

    def value_left(self, u):
        """Left limit at time u; differs from value(u) only at knots.

        Quadrature panels ending exactly on a knot sample the integrand
        with this one-sided value so the panel never sees the next
        interval's level.
        """
        uu = np.asarray(u, dtype=float)
        idx = np.clip(np.searchsorted(self.starts, uu, side="left") - 1, 0, None)
        out = np.asarray(self.values)[idx]
        return float(out) if np.isscalar(u) or uu.ndim == 0 else out

    def integral(self, t1, t2):
        """Exact integral of the step function over [t1, t2]."""
        a = np.asarray(t1, dtype=float)
        b = np.asarray(t2, dtype=float)
        if np.any(a > b):
            raise ParameterError(f"integral requires t1 <= t2, got {t1!r} > {t2!r}")
        cum = self._cumulative()
        out = self._antiderivative(b, cum) - self._antiderivative(a, cum)
        scalar = np.isscalar(t1) and np.isscalar(t2)
        return float(out) if scalar else out

    def _cumulative(self):
        starts = np.asarray(self.starts)
        vals = np.asarray(self.values)
        cum = np.zeros(len(starts))
        if len(starts) > 1:
            cum[1:] = np.cumsum(vals[:-1] * np.diff(starts))
        return cum

    def _antiderivative(self, x, cum):
        starts = np.asarray(self.starts)
        vals = np.asarray(self.values)
        idx = np.clip(np.searchsorted(starts, x, side="right") - 1, 0, None)
        return cum[idx] + vals[idx] * (x - starts[idx])


@dataclass(frozen=True)
class ShiftFunction(PiecewiseFlat):
    """Deterministic intensity shift psi(t) >= 0, piecewise constant."""

    def __post_init__(self):
        super().__post_init__()
        for i, v in enumerate(self.values):
            if v < 0.0:
                raise ParameterError(f"shift level at knot {self.starts[i]} is negative ({v})")

    @classmethod
    def zero(cls):
        return cls((0.0,), (0.0,))


@dataclass(frozen=True)
class DiscountCurve(PiecewiseFlat):
    """Deterministic instantaneous short rate r(u), piecewise constant.

    Rates are capped at 100% because the swaption decomposition requires
    0 <= r <= 1 on the pricing horizon.
    """

    def __post_init__(self):
        super().__post_init__()
        for i, v in enumerate(self.values):
            if not 0.0 <= v <= 1.0:
                raise ParameterError(
                    f"short rate at knot {self.starts[i]} must lie in [0, 1], got {v}")

    def rate(self, u):
        return self.value(u)

    def discount(self, t, T):
        """D(t, T) = exp(-integral of r over [t, T])."""
        return np.exp(-self.integral(t, T))


@dataclass(frozen=True)
class PaymentSchedule:
    """Premium dates T_a < T_{a+1} < ... < T_b including the start date T_a.

    Accrual fractions must not exceed one year (payments at least annual);
    the default generator produces quarterly dates.
    """

    dates: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(float(x) for x in self.dates))
        if len(self.dates) < 2:
            raise ParameterError("schedule needs at least a start date and one payment date")
        for a, b in zip(self.dates, self.dates[1:]):
            if not b > a:
                raise ParameterError("schedule dates must be strictly increasing")
            if b - a > 1.0 + 1e-12:
                raise ParameterError(f"accrual period ({a}, {b}] exceeds one year")
        if self.dates[0] < 0.0:
            raise ParameterError("schedule cannot start before time 0")

    @classmethod
    def regular(cls, start: float, end: float, per_year: int = 4):
        n = round((end - start) * per_year)
        if n < 1 or abs(start + n / per_year - end) > 1e-9:
            raise ParameterError(
                f"({start}, {end}) does not fit a whole number of 1/{per_year}-year periods")
        return cls(tuple(start + k / per_year for k in range(n + 1)))

    @property
    def start(self) -> float:
        return self.dates[0]

    @property
    def end(self) -> float:
        return self.dates[-1]

    @property
    def accruals(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.dates, self.dates[1:]))

    def last_payment_on_or_before(self, u: float) -> float:
        """Largest schedule date <= u."""
        if u < self.start or u > self.end:
            raise ParameterError(f"u = {u} outside schedule span [{self.start}, {self.end}]")
        i = bisect.bisect_right(self.dates, u) - 1
        return self.dates[i]


@dataclass(frozen=True)
class SwaptionSpec:
    """Payer default-swaption contract terms.

    The option matures at the start date of the underlying protection
    schedule and is knocked out by an earlier default.
    """

    maturity: float
    schedule: PaymentSchedule
    strike: float
    lgd: float
    valuation_time: float = 0.0

    def __post_init__(self):
        if self.maturity != self.schedule.start:
            raise ParameterError(
                f"option maturity {self.maturity} must equal schedule start {self.schedule.start}")
        if self.valuation_time > self.maturity:
            raise ParameterError("valuation time must not exceed option maturity")
        if not 0.0 < self.lgd <= 1.0:
            raise ParameterError(f"lgd must lie in (0, 1], got {self.lgd}")
        if self.strike < 0.0:
            raise ParameterError(f"strike must be nonnegative, got {self.strike}")
