"""Numerical integration engines.

Two engines cover everything the pricing stack needs:

* an adaptive Gauss-Lobatto rule (4-point Lobatto with the 7-point
  Kronrod extension of Gander & Gautschi) for the oscillatory Fourier
  integral, driven globally by worst-interval refinement;
* composite Simpson for the smooth time-axis integrals, with panel
  boundaries supplied by the caller so that integrand kinks (payment
  dates) never sit inside a panel.

Point masses never pass through here; they are added analytically by
the callers.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .model import ParameterError

_ALPHA = math.sqrt(2.0 / 3.0)   # outer Kronrod nodes at m +- alpha*h
_BETA = 1.0 / math.sqrt(5.0)    # Lobatto interior nodes at m +- beta*h


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


def _rules(fa, f1, f2, f3, f4, f5, fb, half):
    """4-point Lobatto (i2) and 7-point Kronrod (i1) on one interval."""
    i2 = half / 6.0 * (fa + fb + 5.0 * (f2 + f4))
    i1 = half / 1470.0 * (77.0 * (fa + fb) + 432.0 * (f1 + f5)
                          + 625.0 * (f2 + f4) + 672.0 * f3)
    return i1, i2


def adaptive_lobatto(f, a: float, b: float, tol: float,
                     max_evals: int = 1_000_000,
                     initial_edges=None) -> QuadratureResult:
    """Integrate a vectorised callable f over [a, b] to absolute tolerance.

    Refinement splits the currently worst interval at its Kronrod nodes
    (six children, all evaluated points reused as endpoints) until the
    summed Lobatto/Kronrod discrepancy drops below ``tol`` or the
    evaluation budget is exhausted; in the latter case the best estimate
    is returned flagged as non-converged instead of raising.

    ``initial_edges`` optionally pre-partitions [a, b]; callers use it to
    keep oscillatory integrands resolved from the start.
    """
    if not a < b:
        raise ParameterError(f"adaptive_lobatto requires a < b, got ({a}, {b})")
    if tol <= 0.0:
        raise ParameterError("tol must be positive")

    if initial_edges is None:
        edges = np.array([a, b])
    else:
        edges = np.asarray(initial_edges, dtype=float)
        if edges[0] != a or edges[-1] != b or np.any(np.diff(edges) <= 0):
            raise ParameterError("initial_edges must increase strictly from a to b")

    evals = 0

    def batch_eval(lo, hi, flo, fhi):
        """Evaluate the 5 interior Kronrod nodes for a batch of intervals."""
        nonlocal evals
        m = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        xs = np.stack([m - _ALPHA * half, m - _BETA * half, m,
                       m + _BETA * half, m + _ALPHA * half])
        ys = np.asarray(f(xs.ravel()), dtype=float).reshape(xs.shape)
        evals += xs.size
        i1, i2 = _rules(flo, ys[0], ys[1], ys[2], ys[3], ys[4], fhi, half)
        return np.vstack([flo, ys, fhi]), i1, np.abs(i1 - i2)

    edge_vals = np.asarray(f(edges), dtype=float)
    evals += edges.size
    nodes7, i1s, errs = batch_eval(edges[:-1], edges[1:], edge_vals[:-1], edge_vals[1:])

    # storage: per interval its 7 node abscissae are recomputable from (lo, hi)
    los = list(edges[:-1])
    his = list(edges[1:])
    vals7 = [nodes7[:, k].copy() for k in range(len(los))]
    contrib = list(i1s)
    errors = list(errs)

    total = float(np.sum(i1s))
    total_err = float(np.sum(errs))
    heap = [(-errors[k], k) for k in range(len(los))]
    heapq.heapify(heap)
    eps = np.finfo(float).eps

    while total_err > tol and heap and evals < max_evals:
        batch = []
        budget = max(1, min(64, len(heap)))
        while heap and len(batch) < budget:
            neg_err, k = heapq.heappop(heap)
            if -neg_err != errors[k]:
                continue  # stale entry
            if -neg_err <= 0.25 * tol / max(1, len(errors)):
                continue  # already negligible
            lo, hi = los[k], his[k]
            if hi - lo <= eps * max(abs(lo), abs(hi), 1.0) * 8.0:
                continue  # cannot subdivide further in floating point
            batch.append(k)
        if not batch:
            break

        child_lo, child_hi, child_flo, child_fhi = [], [], [], []
        for k in batch:
            lo, hi = los[k], his[k]
            m = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            xs = [lo, m - _ALPHA * half, m - _BETA * half, m,
                  m + _BETA * half, m + _ALPHA * half, hi]
            ys = vals7[k]
            for j in range(6):
                child_lo.append(xs[j])
                child_hi.append(xs[j + 1])
                child_flo.append(ys[j])
                child_fhi.append(ys[j + 1])
            total -= contrib[k]
            total_err -= errors[k]
            errors[k] = -1.0  # retired

        nodes7, i1s, errs = batch_eval(np.array(child_lo), np.array(child_hi),
                                       np.array(child_flo), np.array(child_fhi))
        for j in range(len(child_lo)):
            los.append(child_lo[j])
            his.append(child_hi[j])
            vals7.append(nodes7[:, j].copy())
            contrib.append(i1s[j])
            errors.append(errs[j])
            heapq.heappush(heap, (-errs[j], len(los) - 1))
        total += float(np.sum(i1s))
        total_err += float(np.sum(errs))

    return QuadratureResult(value=total, error_estimate=total_err,
                            evaluations=evals, converged=total_err <= tol)


def composite_simpson(f, nodes) -> float:
    """Composite Simpson value of f on an increasing grid.

    The grid must contain an odd number of nodes (whole interval pairs).
    Nonuniform spacing is handled with the generalized two-interval
    Simpson coefficients, which remain exact for quadratics.
    """
    x = np.asarray(nodes, dtype=float)
    if x.ndim != 1 or x.size < 3:
        raise ParameterError("composite_simpson needs at least 3 nodes")
    if x.size % 2 == 0:
        raise ParameterError("composite_simpson needs an odd node count")
    if np.any(np.diff(x) <= 0):
        raise ParameterError("nodes must be strictly increasing")
    y = np.asarray(f(x), dtype=float)
    h0 = x[1:-1:2] - x[0:-2:2]
    h1 = x[2::2] - x[1:-1:2]
    s = (h0 + h1) / 6.0 * ((2.0 - h1 / h0) * y[0:-2:2]
                           + (h0 + h1) ** 2 / (h0 * h1) * y[1:-1:2]
                           + (2.0 - h0 / h1) * y[2::2])
    return float(np.sum(s))


def simpson_panel_grid(edges, sub_per_panel: int):
    """Per-panel Simpson nodes and weights over a panelled interval.

    Each panel [edges[i], edges[i+1]] is subdivided uniformly into
    ``sub_per_panel`` intervals (forced even, minimum 2) and weighted
    1,4,2,...,4,1. Panels keep their own endpoint nodes, so boundary
    abscissae appear twice: integrands that jump at panel edges (accrual
    resets at payment dates) are integrated with the correct one-sided
    values. Returns (nodes, weights, panel_left, panel_right) giving each
    node's own panel span for accrual and one-sided level lookups.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise ParameterError("edges must be a strictly increasing grid")
    n = int(sub_per_panel)
    if n < 2:
        n = 2
    if n % 2 == 1:
        n += 1

    n_panels = edges.size - 1
    nodes = np.empty(n_panels * (n + 1))
    weights = np.empty(n_panels * (n + 1))
    panel_left = np.empty(n_panels * (n + 1))
    panel_right = np.empty(n_panels * (n + 1))
    base = np.ones(n + 1)
    base[1:-1:2] = 4.0
    base[2:-1:2] = 2.0
    for i in range(n_panels):
        lo, hi = edges[i], edges[i + 1]
        sl = slice(i * (n + 1), (i + 1) * (n + 1))
        nodes[sl] = np.linspace(lo, hi, n + 1)
        weights[sl] = base * (hi - lo) / n / 3.0
        panel_left[sl] = lo
        panel_right[sl] = hi
    return nodes, weights, panel_left, panel_right


def panel_step_values(step_fn, nodes, panel_right):
    """Piecewise-flat levels on panel nodes, one-sided at closing edges.

    A node that closes its panel takes the left limit: a knot sitting on
    the panel boundary must not leak the next interval's level into this
    panel's Simpson sum (that would cost an O(h) error).
    """
    vals = np.asarray(step_fn.value(nodes))
    at_edge = nodes == panel_right
    if np.any(at_edge):
        vals = np.where(at_edge, step_fn.value_left(nodes), vals)
    return vals
