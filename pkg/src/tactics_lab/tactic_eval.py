"""Cost-function layer comparing limit order tactics.

Combines expected shortfall and effective spread capture into a single
total cost C = -<IS> - rho * <D0> (in spread units: -g - rho * h),
locates optimal termination horizons under an opportunity-risk penalty,
and finds crossing points between tactic cost curves.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .core import BoundaryCondition, ParameterError, SpreadMultiple, TacticParams
from .peg_tactic import effective_spread_capture, expected_shortfall
from .post_wait import PwtConfig, expected_shortfall_pwt, spread_capture_pwt


class GridMismatch(ParameterError):
    """Curves being compared do not share the same q grid."""


@dataclass(frozen=True)
class CostWeights:
    """Weights of the tactic cost function: rho on spread capture, lambda on risk."""

    rho: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        if self.rho < 0.0 or self.lam < 0.0:
            raise ParameterError("cost weights must be nonnegative")


def total_cost(g: SpreadMultiple, h: SpreadMultiple, w: CostWeights) -> SpreadMultiple:
    """Total tactic cost -g - rho * h in spread units."""
    return -g - w.rho * h


@dataclass(frozen=True)
class TacticCurve:
    """A tactic's (g, h, C) values sampled over a fill-probability grid.

    ``point`` evaluates the same tactic at an arbitrary q (used for
    crossing refinement); ``clamped`` marks grid points where the
    configured asymmetry exceeded q and was clamped down to keep the
    fill probabilities valid.
    """

    label: str
    q_grid: np.ndarray
    g: np.ndarray
    h: np.ndarray
    cost: np.ndarray
    clamped: np.ndarray
    point: Callable[[float], Tuple[float, float, float]]

    def __post_init__(self):
        q = np.asarray(self.q_grid, dtype=float)
        if q.ndim != 1 or len(q) < 2 or not (np.diff(q) > 0).all():
            raise ParameterError("q grid must be strictly increasing")
        if not ((q > 0) & (q < 1)).all():
            raise ParameterError("q grid must lie inside (0, 1)")


def _clamped_params(q: float, q_a: float, S: float, N: int,
                    boundary: BoundaryCondition) -> Tuple[TacticParams, bool]:
    # Sweeping q below a fixed q_a would violate |q_a| <= q; clamp and record.
    qa_eff = float(np.clip(q_a, -q, q))
    return TacticParams(q=q, q_a=qa_eff, S=S, N=N, boundary=boundary), qa_eff != q_a


def pt_curve(q_grid: Sequence[float], q_a: float, N: int,
             boundary: BoundaryCondition, weights: CostWeights,
             S: float = 1.0) -> TacticCurve:
    """Pegging-tactic curve over a q grid with q_a clamped to min(q_a, q)."""

    def point(q: float) -> Tuple[float, float, float]:
        p, _ = _clamped_params(q, q_a, S, N, boundary)
        g = expected_shortfall(p)
        h = effective_spread_capture(p)
        return g, h, total_cost(g, h, weights)

    return _build_curve("PT", q_grid, q_a, point)


def pwt_curve(q_grid: Sequence[float], q_a: float, N: int, K: int,
              boundary: BoundaryCondition, weights: CostWeights,
              S: float = 1.0) -> TacticCurve:
    """Post-and-wait curve at posting depth K over a q grid."""

    def point(q: float) -> Tuple[float, float, float]:
        p, _ = _clamped_params(q, q_a, S, N, boundary)
        cfg = PwtConfig(params=p, K=K)
        g = expected_shortfall_pwt(cfg)
        h = spread_capture_pwt(cfg)
        return g, h, total_cost(g, h, weights)

    return _build_curve(f"PWT_K{K}", q_grid, q_a, point)


def _build_curve(label: str, q_grid: Sequence[float], q_a: float,
                 point: Callable[[float], Tuple[float, float, float]]) -> TacticCurve:
    q = np.asarray(q_grid, dtype=float)
    g = np.empty_like(q)
    h = np.empty_like(q)
    c = np.empty_like(q)
    for i, qi in enumerate(q):
        g[i], h[i], c[i] = point(float(qi))
    clamped = np.abs(q_a) > q
    return TacticCurve(label=label, q_grid=q, g=g, h=h, cost=c,
                       clamped=clamped, point=point)


_METRIC_INDEX = {"shortfall": 0, "capture": 1, "cost": 2}


def crossing_points(curve_a: TacticCurve, curve_b: TacticCurve,
                    metric: str = "cost", tol: float = 1e-6) -> List[float]:
    """Locate the q values where two tactic curves cross.

    Scans the shared grid for sign changes of the metric difference and
    refines each bracket by bisection on the continuous evaluators until
    the bracket width falls below ``tol``.  Exact zeros on grid points
    are returned as crossings directly.
    """
    if metric not in _METRIC_INDEX:
        raise ParameterError(f"unknown metric {metric!r}")
    if len(curve_a.q_grid) != len(curve_b.q_grid) or not np.allclose(
            curve_a.q_grid, curve_b.q_grid, rtol=0.0, atol=1e-12):
        raise GridMismatch("curves must share the same q grid")
    idx = _METRIC_INDEX[metric]
    values = {"shortfall": (curve_a.g, curve_b.g),
              "capture": (curve_a.h, curve_b.h),
              "cost": (curve_a.cost, curve_b.cost)}[metric]
    diff = values[0] - values[1]

    def f(q: float) -> float:
        return curve_a.point(q)[idx] - curve_b.point(q)[idx]

    # a crossing is an actual sign flip between consecutive grid points of
    # nonzero difference; zero runs (e.g. identical curves) are not flips,
    # but a zero point separating opposite signs is the crossing itself
    nz = [i for i in range(len(diff)) if diff[i] != 0.0]
    crossings: List[float] = []
    for a_i, b_i in zip(nz, nz[1:]):
        if diff[a_i] * diff[b_i] >= 0.0:
            continue
        if b_i - a_i > 1:
            # the difference vanished on the grid between the two signs
            zero_run = curve_a.q_grid[a_i + 1: b_i]
            crossings.append(float(zero_run[len(zero_run) // 2]))
            continue
        lo, hi = float(curve_a.q_grid[a_i]), float(curve_a.q_grid[b_i])
        flo = f(lo)
        mid = 0.5 * (lo + hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fmid = f(mid)
            scale = max(1.0, abs(curve_a.point(mid)[idx]))
            if fmid == 0.0 or (hi - lo <= tol and abs(fmid) <= tol * scale):
                break
            if (flo < 0) == (fmid < 0):
                lo, flo = mid, fmid
            else:
                hi = mid
        crossings.append(mid)
    return crossings


def optimal_termination(evaluate: Callable[[int], Tuple[float, float]],
                        weights: CostWeights, n_max: int,
                        risk: Callable[[int], float]) -> Tuple[int, float]:
    """Horizon minimizing C + lambda * R(N) over N in [0, n_max].

    ``evaluate(N)`` returns the tactic's (g, h) at horizon N; ``risk``
    is the opportunity-risk profile (N for the pegging tactic, sqrt(N)
    for post-and-wait).  Exhaustive scan; ties break toward smaller N.
    The minimum is frequently interior but boundary minima are legal.
    """
    if n_max < 0:
        raise ParameterError("n_max must be >= 0")
    best_n, best_c = 0, None
    for n in range(n_max + 1):
        g, h = evaluate(n)
        c = total_cost(g, h, weights) + weights.lam * risk(n)
        if best_c is None or c < best_c:
            best_n, best_c = n, c
    return best_n, float(best_c)


def pt_risk(n: int) -> float:
    """Opportunity risk of the pegging tactic: drifts one spread per quote."""
    return float(n)


def pwt_risk(n: int) -> float:
    """Opportunity risk of post-and-wait: diffusive, grows like sqrt(N)."""
    return float(np.sqrt(n))
