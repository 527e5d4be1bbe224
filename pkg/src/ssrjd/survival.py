"""Closed-form survival probability and its maturity derivative.

The survival probability is log-affine in the factor level,

    S(t, T; y) = A(t, T) * exp(-int_t^T psi - B(t, T) * y),
    A = xi * zeta,

with xi carrying the diffusion part and zeta the jump part. Every factor
is an algebraic function of the one exponential exp(h*(T-t)).

The exponent of zeta divides by q = nu^2 - 2*kappa*gamma - 2*gamma^2,
which vanishes at gamma = (h - kappa)/2 while zeta's base tends to 1.
The 1^inf limit is finite but not 1; inside a narrow relative band
around the singularity we evaluate the limit directly (see
``_zeta_singular_limit``), which keeps zeta continuous in gamma.
"""
from __future__ import annotations

import numpy as np
from dataclasses import dataclass

from .model import IntensityParams, ParameterError, ShiftFunction

# Relative half-width of the q ~ 0 band routed through the limit formula.
# Any narrower and the power-form evaluation just outside the band loses
# up to ~1e-4 to cancellation; at 1e-7 the worst-case seam error is ~1e-8.
_SINGULAR_RTOL = 1e-7


@dataclass(frozen=True)
class SurvivalFactors:
    """The log-affine pieces of S(t, T; y) at one horizon."""

    A: float
    B: float
    xi: float
    zeta: float


def _check_interval(t, T):
    if np.any(np.asarray(T) < np.asarray(t)):
        raise ParameterError(f"need t <= T, got t={t!r}, T={T!r}")


def jump_exponent_gap(p: IntensityParams) -> float:
    """q = nu^2 - 2*kappa*gamma - 2*gamma^2; zero marks the zeta singularity."""
    return p.nu**2 - 2.0 * p.kappa * p.gamma - 2.0 * p.gamma**2


def _in_singular_band(p: IntensityParams) -> bool:
    q = jump_exponent_gap(p)
    scale = max(p.nu**2, 2.0 * p.kappa * p.gamma + 2.0 * p.gamma**2)
    return abs(q) < _SINGULAR_RTOL * scale


def _zeta_singular_limit(p: IntensityParams, tau):
    # lim zeta = exp(-(alpha*gamma/h) * (tau - (1 - e^{-h tau})/h)),
    # the value of the jump transform exp(alpha*int(1/(1+gamma*B)-1))
    # at the singular parameter point.
    h = p.h
    return np.exp(-(p.alpha * p.gamma / h) * (tau - (1.0 - np.exp(-h * tau)) / h))


def factor_b(p: IntensityParams, t, T):
    """B(t, T): sensitivity of -log S to the factor level.

    Strictly increasing in T, bounded above by 2/(kappa + h).
    """
    _check_interval(t, T)
    h = p.h
    em1 = np.expm1(h * (np.asarray(T, dtype=float) - t))
    out = 2.0 * em1 / (2.0 * h + (p.kappa + h) * em1)
    return float(out) if out.ndim == 0 else out


def factor_xi(p: IntensityParams, t, T):
    """Diffusion factor of A(t, T)."""
    _check_interval(t, T)
    h = p.h
    tau = np.asarray(T, dtype=float) - t
    em1 = np.expm1(h * tau)
    den = 2.0 * h + (p.kappa + h) * em1
    out = (2.0 * h * np.exp(0.5 * (h + p.kappa) * tau) / den) ** (2.0 * p.kappa * p.mu / p.nu**2)
    return float(out) if out.ndim == 0 else out


def factor_zeta(p: IntensityParams, t, T):
    """Jump factor of A(t, T); identically 1 when alpha = 0."""
    _check_interval(t, T)
    tau = np.asarray(T, dtype=float) - t
    if p.alpha == 0.0:
        out = np.ones_like(tau)
        return float(out) if out.ndim == 0 else out
    if _in_singular_band(p):
        out = _zeta_singular_limit(p, tau)
        return float(out) if out.ndim == 0 else out
    h = p.h
    q = jump_exponent_gap(p)
    em1 = np.expm1(h * tau)
    den = 2.0 * h + (p.kappa + h + 2.0 * p.gamma) * em1
    base = 2.0 * h * np.exp(0.5 * (h + p.kappa + 2.0 * p.gamma) * tau) / den
    out = base ** (2.0 * p.alpha * p.gamma / q)
    return float(out) if out.ndim == 0 else out


def factor_a(p: IntensityParams, t, T):
    return factor_xi(p, t, T) * factor_zeta(p, t, T)


def survival_factors(p: IntensityParams, t: float, T: float) -> SurvivalFactors:
    xi = factor_xi(p, t, T)
    zeta = factor_zeta(p, t, T)
    return SurvivalFactors(A=xi * zeta, B=factor_b(p, t, T), xi=xi, zeta=zeta)


def survival(p: IntensityParams, psi: ShiftFunction, t, T, y):
    """S(t, T; y) in (0, 1]; equals 1 at T = t, decreasing in T and y."""
    _check_interval(t, T)
    if np.any(np.asarray(y) < 0.0):
        raise ParameterError(f"factor level y must be nonnegative, got {y!r}")
    out = factor_a(p, t, T) * np.exp(-psi.integral(t, T) - factor_b(p, t, T) * y)
    return float(out) if np.ndim(out) == 0 else out


def _log_derivative_terms(p: IntensityParams, tau):
    """(d/dT log xi, d/dT B, d/dT log zeta); the zeta ratio is regular at q = 0."""
    h = p.h
    em1 = np.expm1(h * tau)
    den = 2.0 * h + (p.kappa + h) * em1
    dlog_xi = -2.0 * p.kappa * p.mu * em1 / den
    db = 4.0 * h * h * np.exp(h * tau) / den**2
    if p.alpha == 0.0:
        dlog_zeta = np.zeros_like(np.asarray(tau, dtype=float))
    else:
        denz = 2.0 * h + (p.kappa + h + 2.0 * p.gamma) * em1
        dlog_zeta = -2.0 * p.alpha * p.gamma * em1 / denz
    return dlog_xi, db, dlog_zeta


def survival_maturity_derivative(p: IntensityParams, psi: ShiftFunction, t, T, y):
    """d/dT of S(t, T; y); always <= 0.

    psi is evaluated from the right at knot points so the derivative is
    well defined there.
    """
    _check_interval(t, T)
    if np.any(np.asarray(y) < 0.0):
        raise ParameterError(f"factor level y must be nonnegative, got {y!r}")
    tau = np.asarray(T, dtype=float) - t
    dlog_xi, db, dlog_zeta = _log_derivative_terms(p, tau)
    s = survival(p, psi, t, T, y)
    out = s * (dlog_xi - y * db + dlog_zeta - psi.value(T))
    return float(out) if np.ndim(out) == 0 else out
