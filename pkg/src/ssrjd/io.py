"""JSON document schemas for the command-line interface.

Field names follow the model symbols: y0, kappa, mu, nu, alpha, gamma,
psi_knots/psi_values for the shift, rate_knots/rate_values for the
curve, dates/strike/lgd for contracts. Schema violations raise
SchemaError with a JSON-pointer path to the offending field.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

from .model import (DiscountCurve, IntensityParams, ParameterError, PaymentSchedule,
                    ShiftFunction, SwaptionSpec)


class SchemaError(ValueError):
    """Malformed input document; the message starts with a JSON pointer."""


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"/: file not found: {path}") from None
    except json.JSONDecodeError as err:
        raise SchemaError(f"/: not valid JSON ({err})") from None
    if not isinstance(doc, dict):
        raise SchemaError("/: top-level value must be an object")
    return doc


def _number(doc: dict, key: str, pointer: str = "") -> float:
    if key not in doc:
        raise SchemaError(f"{pointer}/{key}: missing required field")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{pointer}/{key}: expected a number, got {type(v).__name__}")
    return float(v)


def _number_list(doc: dict, key: str, pointer: str = "") -> list[float]:
    if key not in doc:
        raise SchemaError(f"{pointer}/{key}: missing required field")
    v = doc[key]
    if not isinstance(v, list) or not v:
        raise SchemaError(f"{pointer}/{key}: expected a nonempty array")
    out = []
    for i, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise SchemaError(f"{pointer}/{key}/{i}: expected a number, "
                              f"got {type(x).__name__}")
        out.append(float(x))
    return out


def load_model(path) -> tuple[IntensityParams, ShiftFunction]:
    """Model document: the six factor parameters plus an optional shift."""
    doc = _load_json(path)
    try:
        params = IntensityParams(y0=_number(doc, "y0"), kappa=_number(doc, "kappa"),
                                 mu=_number(doc, "mu"), nu=_number(doc, "nu"),
                                 alpha=_number(doc, "alpha"), gamma=_number(doc, "gamma"))
    except ParameterError as err:
        raise SchemaError(f"/: {err}") from None
    if "psi_knots" in doc or "psi_values" in doc:
        knots = _number_list(doc, "psi_knots")
        values = _number_list(doc, "psi_values")
        try:
            shift = ShiftFunction(tuple(knots), tuple(values))
        except ParameterError as err:
            raise SchemaError(f"/psi_values: {err}") from None
    else:
        shift = ShiftFunction.zero()
    return params, shift


def load_curve(path) -> DiscountCurve:
    doc = _load_json(path)
    knots = _number_list(doc, "rate_knots")
    values = _number_list(doc, "rate_values")
    try:
        return DiscountCurve(tuple(knots), tuple(values))
    except ParameterError as err:
        raise SchemaError(f"/rate_values: {err}") from None


def load_schedule(path) -> PaymentSchedule:
    doc = _load_json(path)
    dates = _number_list(doc, "dates")
    try:
        return PaymentSchedule(tuple(dates))
    except ParameterError as err:
        raise SchemaError(f"/dates: {err}") from None


def load_swaption_spec(path) -> SwaptionSpec:
    doc = _load_json(path)
    dates = _number_list(doc, "dates")
    strike = _number(doc, "strike")
    lgd = _number(doc, "lgd")
    t = _number(doc, "t") if "t" in doc else 0.0
    try:
        schedule = PaymentSchedule(tuple(dates))
        return SwaptionSpec(maturity=schedule.start, schedule=schedule,
                            strike=strike, lgd=lgd, valuation_time=t)
    except ParameterError as err:
        raise SchemaError(f"/dates: {err}") from None


def model_to_dict(params: IntensityParams, shift: ShiftFunction) -> dict:
    return {
        "y0": params.y0, "kappa": params.kappa, "mu": params.mu,
        "nu": params.nu, "alpha": params.alpha, "gamma": params.gamma,
        "psi_knots": list(shift.starts), "psi_values": list(shift.values),
    }


def load_cds_quotes_csv(path) -> list[tuple[float, float]]:
    """CSV columns maturity_years, spread_bps; returns decimal spreads."""
    quotes = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or \
                not {"maturity_years", "spread_bps"} <= set(reader.fieldnames):
            raise SchemaError("/: quotes CSV needs maturity_years and spread_bps columns")
        for i, row in enumerate(reader):
            try:
                quotes.append((float(row["maturity_years"]),
                               float(row["spread_bps"]) * 1e-4))
            except (TypeError, ValueError):
                raise SchemaError(f"/{i}: non-numeric quote row {row!r}") from None
    if not quotes:
        raise SchemaError("/: quotes CSV has no data rows")
    return quotes


def load_swaption_quotes(path) -> list[tuple[SwaptionSpec, float]]:
    """JSON array of swaption quotes: dates, strike, lgd, price."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (FileNotFoundError, json.JSONDecodeError) as err:
        raise SchemaError(f"/: cannot read swaption quotes ({err})") from None
    if not isinstance(doc, list) or not doc:
        raise SchemaError("/: expected a nonempty array of quotes")
    quotes = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict):
            raise SchemaError(f"/{i}: expected an object")
        dates = _number_list(entry, "dates", f"/{i}")
        try:
            schedule = PaymentSchedule(tuple(dates))
            spec = SwaptionSpec(maturity=schedule.start, schedule=schedule,
                                strike=_number(entry, "strike", f"/{i}"),
                                lgd=_number(entry, "lgd", f"/{i}"))
        except ParameterError as err:
            raise SchemaError(f"/{i}: {err}") from None
        quotes.append((spec, _number(entry, "price", f"/{i}")))
    return quotes


def write_json(path, payload: dict):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is None:
        print(text)
    else:
        Path(path).write_text(text + "\n")
