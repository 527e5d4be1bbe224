"""Command-line front end.

Every run is reproducible from its input files and flags, which are
echoed into the output as a provenance block. Machine output is JSON
(single prices, reports) or CSV (curves, smiles, integrand grids);
numbers carry 10 significant digits. Exit codes: 0 success, 2 input or
validation error, 3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import io
from .black import default_strike_grid, generate_smile, implied_vol
from .calibration import bootstrap_shift, fit_params
from .cds import cds_breakdown, fair_spread, risky_annuity
from .config import DEFAULT_CONFIG, PricingConfig
from .mc import McConfig, mc_swaption_price
from .model import (CalibrationError, ConvergenceError, DiscountCurve, IntensityParams,
                    ParameterError, PaymentSchedule, ShiftFunction, SwaptionSpec,
                    validate_params)
from .survival import survival, survival_maturity_derivative
from .swaption import price_swaption
from .transform import fourier_integrand, fourier_tail_integral, indicator_transform, \
    option_transform


def _fmt(x) -> float:
    """Round-trip through 10 significant digits for stable textual output."""
    return float(f"{x:.10g}")


def _provenance(args, names) -> dict:
    return {name: getattr(args, name.replace("-", "_")) for name in names}


def _config_from(args) -> PricingConfig:
    return PricingConfig(
        leg_subpanels=args.leg_subpanels,
        outer_subpanels=args.outer_subpanels,
        fourier_tol=args.tol,
        fourier_truncation=args.truncation,
    )


def _add_config_flags(sub):
    sub.add_argument("--tol", type=float, default=DEFAULT_CONFIG.fourier_tol,
                     help="Fourier integral absolute tolerance")
    sub.add_argument("--truncation", type=float,
                     default=DEFAULT_CONFIG.fourier_truncation,
                     help="Fourier integral truncation bound")
    sub.add_argument("--leg-subpanels", type=int, default=DEFAULT_CONFIG.leg_subpanels)
    sub.add_argument("--outer-subpanels", type=int,
                     default=DEFAULT_CONFIG.outer_subpanels)


def _write_csv(path, header: list[str], rows, provenance: dict):
    lines = [f"# {k} = {v}" for k, v in sorted(provenance.items())]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(f"{v:.10g}" if isinstance(v, float) else str(v)
                              for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_survival(args) -> int:
    params, shift = io.load_model(args.model)
    validate_params(params, strict=args.strict)
    y = params.y0 if args.y is None else args.y
    out = {
        "survival": _fmt(survival(params, shift, args.t, args.T, y)),
        "maturity_derivative": _fmt(
            survival_maturity_derivative(params, shift, args.t, args.T, y)),
        "inputs": _provenance(args, ["model", "t", "T", "y"]),
    }
    io.write_json(args.out, out)
    return 0


def cmd_cds(args) -> int:
    params, shift = io.load_model(args.model)
    validate_params(params, strict=args.strict)
    curve = io.load_curve(args.curve)
    schedule = io.load_schedule(args.schedule)
    config = _config_from(args)
    fair = fair_spread(params, shift, curve, schedule, args.lgd, args.t, None, config)
    spread = fair if args.spread_bps is None else args.spread_bps * 1e-4
    legs = cds_breakdown(params, shift, curve, schedule, spread, args.lgd,
                         args.t, None, config)
    out = {
        "premium_leg": _fmt(legs.premium_leg),
        "accrual_on_default": _fmt(legs.accrual_on_default),
        "protection_leg": _fmt(legs.protection_leg),
        "annuity": _fmt(legs.annuity),
        "pv": _fmt(legs.pv),
        "fair_spread": _fmt(fair),
        "fair_spread_bps": _fmt(fair * 1e4),
        "spread_used_bps": _fmt(spread * 1e4),
        "inputs": _provenance(args, ["model", "curve", "schedule", "lgd", "t",
                                     "spread-bps", "leg-subpanels"]),
    }
    io.write_json(args.out, out)
    return 0


def cmd_swaption(args) -> int:
    params, shift = io.load_model(args.model)
    validate_params(params, strict=args.strict)
    curve = io.load_curve(args.curve)
    spec = io.load_swaption_spec(args.spec)
    if args.strike_bps is not None:
        spec = SwaptionSpec(maturity=spec.maturity, schedule=spec.schedule,
                            strike=args.strike_bps * 1e-4, lgd=spec.lgd,
                            valuation_time=spec.valuation_time)
    report = price_swaption(params, shift, curve, spec, None, _config_from(args))
    out = report.to_dict()
    out["price"] = _fmt(out["price"])
    out["gate_integral"] = _fmt(out["gate_integral"])
    if out["y_star"] is not None:
        out["y_star"] = _fmt(out["y_star"])
    out["price_bps"] = _fmt(report.price * 1e4)
    out["strike_bps"] = _fmt(spec.strike * 1e4)
    out["inputs"] = _provenance(args, ["model", "curve", "spec", "strike-bps",
                                       "tol", "truncation", "outer-subpanels"])
    io.write_json(args.out, out)
    return 0


def cmd_smile(args) -> int:
    params, shift = io.load_model(args.model)
    validate_params(params, strict=args.strict)
    curve = io.load_curve(args.curve)
    spec = io.load_swaption_spec(args.spec)
    config = _config_from(args)
    if args.strikes_bps:
        strikes = [float(s) * 1e-4 for s in args.strikes_bps.split(",")]
    else:
        forward = fair_spread(params, shift, curve, spec.schedule, spec.lgd,
                              spec.valuation_time, None, config)
        strikes = default_strike_grid(forward)
    points = generate_smile(params, shift, curve, spec, strikes, config)
    rows = [(_fmt(pt.strike * 1e4), _fmt(pt.model_price * 1e4),
             _fmt(pt.implied_vol) if pt.converged else math.nan) for pt in points]
    _write_csv(args.out, ["strike_bps", "price_bps", "implied_vol"], rows,
               _provenance(args, ["model", "curve", "spec", "strikes-bps", "tol",
                                  "truncation", "outer-subpanels"]))
    return 0


def cmd_transform(args) -> int:
    params, shift = io.load_model(args.model)
    validate_params(params, strict=args.strict)
    config = _config_from(args)
    y0 = params.y0 if args.y is None else args.y
    pi = indicator_transform(params, args.T, y0, args.sigma, args.rho, config)
    psi_val = option_transform(params, 0.0, args.T, y0, args.sigma, args.rho, config)
    tail = fourier_tail_integral(params, args.T, args.rho, args.sigma, y0, config)
    out = {
        "pi": _fmt(pi),
        "psi": _fmt(psi_val),
        "fourier_integral": _fmt(tail.value),
        "fourier_error_estimate": _fmt(tail.error_estimate),
        "evaluations": tail.evaluations,
        "inputs": _provenance(args, ["model", "T", "rho", "sigma", "y", "tol",
                                     "truncation"]),
    }
    io.write_json(args.out, out)
    if args.grid_out:
        vs = np.linspace(args.grid_max / args.grid_points, args.grid_max,
                         args.grid_points)
        vals = fourier_integrand(params, args.T, args.rho, args.sigma, y0, vs)
        _write_csv(args.grid_out, ["v", "integrand"],
                   [(float(v), _fmt(val)) for v, val in zip(vs, vals)],
                   _provenance(args, ["model", "T", "rho", "sigma", "grid-max"]))
    return 0


def cmd_mc_check(args) -> int:
    params, shift = io.load_model(args.model)
    validate_params(params, strict=args.strict)
    curve = io.load_curve(args.curve)
    spec = io.load_swaption_spec(args.spec)
    if args.strike_bps is not None:
        spec = SwaptionSpec(maturity=spec.maturity, schedule=spec.schedule,
                            strike=args.strike_bps * 1e-4, lgd=spec.lgd,
                            valuation_time=spec.valuation_time)
    config = _config_from(args)
    report = price_swaption(params, shift, curve, spec, None, config)
    cfg = McConfig(paths=args.paths, steps_per_year=args.steps_per_year,
                   seed=args.seed)
    est = mc_swaption_price(params, shift, curve, spec, cfg, config)
    z = (report.price - est.mean) / est.standard_error
    out = {
        "analytic_price": _fmt(report.price),
        "mc_price": _fmt(est.mean),
        "mc_standard_error": _fmt(est.standard_error),
        "z_score": _fmt(z),
        "pass_3se": bool(abs(z) <= 3.0),
        "branch": report.branch,
        "inputs": _provenance(args, ["model", "curve", "spec", "strike-bps",
                                     "paths", "seed", "steps-per-year"]),
    }
    io.write_json(args.out, out)
    return 0


def cmd_calibrate(args) -> int:
    params, _ = io.load_model(args.model)
    validate_params(params, strict=args.strict)
    curve = io.load_curve(args.curve)
    quotes = io.load_cds_quotes_csv(args.cds_quotes)
    config = _config_from(args)
    if args.swaption_quotes:
        swq = io.load_swaption_quotes(args.swaption_quotes)
        report = fit_params(params, curve, quotes, swq, budget=args.budget,
                            enforce_feller=args.feller, config=config)
        fitted, shift = report.params, report.shift
        extra = {
            "objective": _fmt(report.objective),
            "residuals": [_fmt(r) for r in report.residuals],
            "evaluations": report.evaluations,
            "converged": report.converged,
        }
    else:
        shift = bootstrap_shift(params, curve, quotes, args.lgd, config=config)
        fitted, extra = params, {}
    out = io.model_to_dict(fitted, shift)
    out.update(extra)
    out["inputs"] = _provenance(args, ["model", "curve", "cds-quotes",
                                       "swaption-quotes", "lgd", "budget"])
    io.write_json(args.out, out)
    return 0


def _reproduce_table1(args, config) -> int:
    params = IntensityParams(y0=0.005, kappa=0.196, mu=0.065, nu=0.1594,
                             alpha=0.5, gamma=0.025)
    from .survival import factor_b
    rho = factor_b(params, 0.0, 3.0)
    rows = []
    for n in (1e2, 1e3, 1e4, 1e5, 1e6, 1e7):
        res = fourier_tail_integral(params, 1.0, rho, 0.0062, params.y0, config,
                                    truncation=n)
        rows.append((n, _fmt(res.value)))
        print(f"truncation {n:10.0f}: integral = {res.value:.10g}")
    if args.out:
        _write_csv(args.out, ["truncation", "integral"], rows, {"scenario": "table1"})
    return 0


def _reproduce_fig2(args, config) -> int:
    params = IntensityParams(y0=0.005, kappa=0.229, mu=0.0134, nu=0.078,
                             alpha=1.5, gamma=0.0067)
    curve = DiscountCurve.flat(0.03)
    schedule = PaymentSchedule.regular(1.0, 5.0, 4)
    fair = fair_spread(params, ShiftFunction.zero(), curve, schedule, 0.7,
                       0.0, None, config)
    print(f"forward default swap rate: {fair * 1e4:.10g} bps")
    if args.out:
        io.write_json(args.out, {"fair_spread_bps": _fmt(fair * 1e4),
                                 "scenario": "fig2-forward"})
    return 0


_BENCH_MODELS = {
    "model1": IntensityParams(y0=0.0007, kappa=0.4066, mu=0.0515, nu=0.1507,
                              alpha=0.5009, gamma=0.0050),
    "model2": IntensityParams(y0=1.3e-06, kappa=0.4851, mu=0.0457, nu=0.2000,
                              alpha=0.5009, gamma=0.0050),
    "model3": IntensityParams(y0=0.005, kappa=0.2281, mu=0.0134, nu=0.0782,
                              alpha=1.5000, gamma=0.0067),
}


def _reproduce_fig3(args, config) -> int:
    curve = DiscountCurve.flat(0.03)
    shift = ShiftFunction.zero()
    maturities = [0.5] + [float(k) for k in range(1, 11)]
    rows = []
    for name, params in _BENCH_MODELS.items():
        for m in maturities:
            schedule = PaymentSchedule.regular(0.0, m, 4)
            fair = fair_spread(params, shift, curve, schedule, 0.7, 0.0, None, config)
            rows.append((name, float(m), _fmt(fair * 1e4)))
            print(f"{name}  maturity {m:5.2f}y  spread = {fair * 1e4:.10g} bps")
    if args.out:
        _write_csv(args.out, ["model", "maturity_years", "spread_bps"],
                   rows, {"scenario": "fig3-term-structures"})
    return 0


def _reproduce_fig4(args, config) -> int:
    curve = DiscountCurve.flat(0.03)
    shift = ShiftFunction.zero()
    rows = []
    for name, params in _BENCH_MODELS.items():
        schedule = PaymentSchedule.regular(1.0, 5.0, 4)
        spec = SwaptionSpec(maturity=1.0, schedule=schedule, strike=0.01, lgd=0.7)
        forward = fair_spread(params, shift, curve, schedule, 0.7, 0.0, None, config)
        strikes = default_strike_grid(forward, n=args.points)
        for pt in generate_smile(params, shift, curve, spec, strikes, config):
            rows.append((name, _fmt(pt.strike * 1e4), _fmt(pt.model_price * 1e4),
                         _fmt(pt.implied_vol) if pt.converged else math.nan))
            print(f"{name}  K = {pt.strike * 1e4:8.3f} bps  "
                  f"price = {pt.model_price * 1e4:10.6f} bps  "
                  f"vol = {pt.implied_vol:.6g}")
    if args.out:
        _write_csv(args.out, ["model", "strike_bps", "price_bps", "implied_vol"],
                   rows, {"scenario": "fig4-smiles"})
    return 0


def cmd_reproduce(args) -> int:
    config = _config_from(args)
    handlers = {
        "table1": _reproduce_table1,
        "fig2-forward": _reproduce_fig2,
        "fig3-term-structures": _reproduce_fig3,
        "fig4-smiles": _reproduce_fig4,
    }
    return handlers[args.scenario](args, config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssrjd",
        description="CDS and payer default-swaption pricing under a shifted "
                    "square-root jump-diffusion intensity model")
    parser.add_argument("--strict", action="store_true",
                        help="treat a Feller-condition violation as an error")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("survival", help="survival probability and its maturity derivative")
    s.add_argument("--model", required=True)
    s.add_argument("--t", type=float, default=0.0)
    s.add_argument("--T", type=float, required=True)
    s.add_argument("--y", type=float, default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_survival)

    s = sub.add_parser("cds", help="CDS leg breakdown and fair spread")
    s.add_argument("--model", required=True)
    s.add_argument("--curve", required=True)
    s.add_argument("--schedule", required=True)
    s.add_argument("--lgd", type=float, required=True)
    s.add_argument("--t", type=float, default=0.0)
    s.add_argument("--spread-bps", type=float, default=None,
                   help="running spread; defaults to the fair spread")
    s.add_argument("--out", default=None)
    _add_config_flags(s)
    s.set_defaults(func=cmd_cds)

    s = sub.add_parser("swaption", help="payer default-swaption price")
    s.add_argument("--model", required=True)
    s.add_argument("--curve", required=True)
    s.add_argument("--spec", required=True)
    s.add_argument("--strike-bps", type=float, default=None,
                   help="overrides the strike in the spec document")
    s.add_argument("--out", default=None)
    _add_config_flags(s)
    s.set_defaults(func=cmd_swaption)

    s = sub.add_parser("smile", help="implied-volatility smile across strikes")
    s.add_argument("--model", required=True)
    s.add_argument("--curve", required=True)
    s.add_argument("--spec", required=True)
    s.add_argument("--strikes-bps", default=None,
                   help="comma-separated strikes; defaults to 0.5x-2x forward")
    s.add_argument("--out", default=None)
    _add_config_flags(s)
    s.set_defaults(func=cmd_smile)

    s = sub.add_parser("transform", help="indicator/option transforms and integrand grid")
    s.add_argument("--model", required=True)
    s.add_argument("--T", type=float, required=True)
    s.add_argument("--rho", type=float, required=True)
    s.add_argument("--sigma", type=float, required=True,
                   help="indicator threshold on the factor level")
    s.add_argument("--y", type=float, default=None)
    s.add_argument("--grid-out", default=None, help="CSV path for an integrand grid")
    s.add_argument("--grid-max", type=float, default=250.0)
    s.add_argument("--grid-points", type=int, default=1000)
    s.add_argument("--out", default=None)
    _add_config_flags(s)
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("mc-check", help="analytic price against the Monte Carlo oracle")
    s.add_argument("--model", required=True)
    s.add_argument("--curve", required=True)
    s.add_argument("--spec", required=True)
    s.add_argument("--strike-bps", type=float, default=None)
    s.add_argument("--paths", type=int, default=200_000)
    s.add_argument("--steps-per-year", type=int, default=250)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=None)
    _add_config_flags(s)
    s.set_defaults(func=cmd_mc_check)

    s = sub.add_parser("calibrate", help="bootstrap the shift and optionally fit parameters")
    s.add_argument("--model", required=True, help="initial parameters document")
    s.add_argument("--curve", required=True)
    s.add_argument("--cds-quotes", required=True, help="CSV: maturity_years, spread_bps")
    s.add_argument("--swaption-quotes", default=None, help="JSON quote array")
    s.add_argument("--lgd", type=float, default=0.7)
    s.add_argument("--budget", type=int, default=500)
    s.add_argument("--feller", action="store_true",
                   help="constrain the fit to the Feller region")
    s.add_argument("--out", default=None)
    _add_config_flags(s)
    s.set_defaults(func=cmd_calibrate)

    s = sub.add_parser("reproduce", help="canned benchmark scenarios")
    s.add_argument("scenario", choices=["table1", "fig2-forward",
                                        "fig3-term-structures", "fig4-smiles"])
    s.add_argument("--points", type=int, default=9, help="smile strikes per model")
    s.add_argument("--out", default=None)
    _add_config_flags(s)
    s.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.SchemaError, ParameterError, CalibrationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ConvergenceError as err:
        print(f"numerical error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
