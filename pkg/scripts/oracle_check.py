#!/usr/bin/env python3
"""Analytic swaption prices against the Monte Carlo oracle, strike by strike."""
import argparse
import sys

from ssrjd import (DiscountCurve, McConfig, PaymentSchedule, ShiftFunction,
                   SwaptionSpec, fair_spread, mc_swaption_price, price_swaption)
from ssrjd.cli import _BENCH_MODELS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--paths", type=int, default=200_000)
    parser.add_argument("--steps-per-year", type=int, default=250)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--lgd", type=float, default=0.7)
    args = parser.parse_args()

    curve = DiscountCurve.flat(0.03)
    shift = ShiftFunction.zero()
    schedule = PaymentSchedule.regular(1.0, 5.0, 4)

    failures = 0
    for name, params in _BENCH_MODELS.items():
        atm = fair_spread(params, shift, curve, schedule, args.lgd)
        for i, mult in enumerate((0.5, 1.0, 1.5, 2.0)):
            spec = SwaptionSpec(maturity=1.0, schedule=schedule, strike=mult * atm,
                                lgd=args.lgd)
            rep = price_swaption(params, shift, curve, spec)
            cfg = McConfig(paths=args.paths, steps_per_year=args.steps_per_year,
                           seed=args.seed + i)
            est = mc_swaption_price(params, shift, curve, spec, cfg)
            z = (rep.price - est.mean) / est.standard_error
            verdict = "ok" if abs(z) <= 3.0 else "FAIL"
            failures += verdict == "FAIL"
            print(f"{name} K={mult:.1f}xATM [{rep.branch:18s}] "
                  f"analytic={rep.price * 1e4:9.4f}bp  mc={est.mean * 1e4:9.4f}bp  "
                  f"se={est.standard_error * 1e4:7.4f}bp  z={z:+5.2f}  {verdict}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
