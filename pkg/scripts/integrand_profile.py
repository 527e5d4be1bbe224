#!/usr/bin/env python3
"""Profile of the Fourier inversion integrand and its truncation ladder.

Writes the integrand on a frequency grid (the shape that motivates the
oscillation-aware quadrature) and prints the truncated integral at a
ladder of upper bounds to show convergence.
"""
import argparse
import csv
import sys

import numpy as np

from ssrjd import IntensityParams, factor_b, fourier_integrand, fourier_tail_integral


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--threshold", type=float, default=0.0062)
    parser.add_argument("--grid-max", type=float, default=250.0)
    parser.add_argument("--out", default="integrand.csv")
    args = parser.parse_args()

    params = IntensityParams(y0=0.005, kappa=0.196, mu=0.065, nu=0.1594,
                             alpha=0.5, gamma=0.025)
    rho = factor_b(params, 0.0, 3.0)

    vs = np.linspace(args.grid_max / 2000.0, args.grid_max, 2000)
    vals = fourier_integrand(params, 1.0, rho, args.threshold, params.y0, vs)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["v", "integrand"])
        writer.writerows(zip(vs, vals))
    print(f"wrote {args.out}")

    for n in (1e2, 1e3, 1e4, 1e5, 1e6, 1e7):
        res = fourier_tail_integral(params, 1.0, rho, args.threshold, params.y0,
                                    truncation=n)
        print(f"truncation {n:10.0f}: integral = {res.value:+.6f} "
              f"(error estimate {res.error_estimate:.1e}, "
              f"{res.evaluations} evaluations)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
