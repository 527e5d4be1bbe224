"""Numerical settings shared across the pricing stack."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PricingConfig:
    """Resolution knobs with defaults tuned for production pricing.

    leg_subpanels:   Simpson subintervals per schedule period for CDS leg,
                     gate and critical-level integrals (finer than the
                     outer integral because legs feed calibration).
    outer_subpanels: Simpson subintervals per schedule period for the
                     swaption decomposition's outer integral; 2 suffices,
                     acceptance runs escalate to 8.
    fourier_tol:     absolute tolerance of the adaptive Fourier integral.
    fourier_truncation: upper limit of the truncated Fourier integral.
    fourier_vmin:    lower evaluation cutoff; below it the integrand is
                     taken at the cutoff (the v -> 0 limit is finite).
    fourier_budget:  evaluation budget per Fourier integral; exhausting it
                     yields a flagged, non-converged estimate.
    """

    leg_subpanels: int = 8
    outer_subpanels: int = 2
    fourier_tol: float = 1e-9
    fourier_truncation: float = 1e6
    fourier_vmin: float = 1e-8
    fourier_budget: int = 1_000_000


DEFAULT_CONFIG = PricingConfig()
