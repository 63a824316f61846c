"""Closed-form evaluator for the pegging tactic.

A buy limit order is pegged to the bid.  Each quote change either fills
it (probability q per quote) at the current bid, or moves the bid one
spread away, after which the order is re-posted at the new bid.  After N
quote changes the residual is liquidated per the boundary condition.

All results are pure functions of immutable inputs and are reported in
spread multiples (see :mod:`tactics_lab.core` for unit conventions).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SpreadMultiple, TacticParams


def expected_shortfall(p: TacticParams) -> SpreadMultiple:
    """Expected implementation shortfall factor g of the pegging tactic.

    The expected cost of non-execution is ``g * S`` with

        g = -(1/q) * (1 - q + (1-q)**N * ((1+b)*q - 1))

    g is always <= 0: chasing the quote can only lose relative to the
    arrival price.  Notable fixed points: g(q=1/2, MO) = -1 and
    g(q=2/3, MP) = -1/2 for every horizon N.
    """
    q, b, n = p.q, p.b, p.N
    return -(1.0 / q) * (1.0 - q + (1.0 - q) ** n * ((1.0 + b) * q - 1.0))


def expected_shortfall_infinite(q: float) -> SpreadMultiple:
    """Infinite-horizon shortfall factor -(1/q - 1).

    Limit of :func:`expected_shortfall` as N grows; independent of the
    boundary condition and a good approximation already for N >= 4.
    """
    if not (0.0 < q <= 1.0):
        raise ValueError(f"fill probability q={q} not in (0, 1]")
    return -(1.0 / q - 1.0)


def fill_time_pmf(q: float, N: int) -> np.ndarray:
    """Distribution of the execution time over 0..N quote changes.

    P(n) = q * (1-q)**n for n < N; the final entry P(N) = (1-q)**N is
    the survival mass liquidated at the horizon.  Sums to 1 exactly.
    """
    if not (0.0 < q <= 1.0):
        raise ValueError(f"fill probability q={q} not in (0, 1]")
    if N < 0:
        raise ValueError("horizon must be >= 0")
    pmf = q * (1.0 - q) ** np.arange(N + 1, dtype=float)
    pmf[N] = (1.0 - q) ** N
    return pmf


def mean_wait(q: float, N: int) -> float:
    """Expected waiting time (1-q) * (1 - (1-q)**N) / q in quote changes."""
    if not (0.0 < q <= 1.0):
        raise ValueError(f"fill probability q={q} not in (0, 1]")
    return (1.0 - q) * (1.0 - (1.0 - q) ** N) / q


def shortfall_second_moment(p: TacticParams) -> float:
    """Second moment of the shortfall, in S**2 units.

    Variance follows as ``shortfall_second_moment(p) - expected_shortfall(p)**2``;
    the raw moment is returned so callers control the cancellation.
    Stable to ~1e-10 for N <= 100.
    """
    q, b, n = p.q, p.b, p.N
    tail = -2.0 + q * (3.0 - 2.0 * n + (1.0 + b) * (-1.0 + b + 2.0 * n) * q)
    return (2.0 - 3.0 * q + q * q + (1.0 - q) ** n * tail) / (q * q)


def effective_spread_capture(p: TacticParams) -> SpreadMultiple:
    """Expected effective spread capture factor h of the pegging tactic.

    The fill price is compared to the *next* midpoint, which exposes
    adverse selection: an uptick after the fill captures +3S/2, a
    downtick loses S/2, and unfilled orders are charged -a*S at the
    horizon.  In terms of q and the asymmetry q_a = q_dn - q_up:

        h = (1/2q) * (q - 2*q_a - (1-q)**N * ((1+2a)*q - 2*q_a))

    h is affine in q_a for fixed q, N, a, and turns negative for
    sufficiently informed flow (q_dn > 3*q_up in the N -> inf limit).
    """
    q, qa, a, n = p.q, p.q_a, p.a, p.N
    return (q - 2.0 * qa - (1.0 - q) ** n * ((1.0 + 2.0 * a) * q - 2.0 * qa)) / (2.0 * q)


def spread_capture_second_moment(p: TacticParams) -> float:
    """Second moment of the effective spread capture, in S**2 units.

        <D0^2> = (1/4q) * (5q - 4*q_a + (1-q)**N * ((4a^2 - 5)*q + 4*q_a))

    At q = 1 this reduces to (5q - 4*q_a) / (4q).  The (4a^2 - 5)
    coefficient is fixed by the N = 0 degeneracy <D0^2> = a^2 and by
    path enumeration.
    """
    q, qa, a, n = p.q, p.q_a, p.a, p.N
    tail = (4.0 * a * a - 5.0) * q + 4.0 * qa
    return (5.0 * q - 4.0 * qa + (1.0 - q) ** n * tail) / (4.0 * q)


def pair_efficiency_delta(q_a: float) -> float:
    """Two-sided capture efficiency Delta = 1 - 2*q_a of passive order pairs.

    Summing the adverse selection of a simultaneous buy/sell pair under
    certain execution (q = 1) gives the average round-trip profit as a
    fraction of the spread.  Delta = 1 is perfect two-sided capture;
    Delta > 0 iff q_dn < q_up + 1/2.
    """
    if abs(q_a) > 1.0:
        raise ValueError(f"asymmetry q_a={q_a} must lie in [-1, 1]")
    return 1.0 - 2.0 * q_a


@dataclass(frozen=True)
class PegReport:
    """Bundle of pegging-tactic statistics for one parameter set.

    ``g`` and ``h`` are spread multiples; the variances are in S**2
    units; ``mean_wait`` is in quote changes; ``fill_pmf`` covers
    execution times 0..N and sums to 1.
    """

    g: SpreadMultiple
    h: SpreadMultiple
    var_is: float
    var_d: float
    mean_wait: float
    fill_pmf: np.ndarray

    @property
    def expected_executions(self) -> float:
        """Rough capacity heuristic: about N / <T>_N executions per horizon.

        Multiply by the average fill size for a share-capacity estimate.
        Infinite when fills are certain and instant (zero waiting time).
        """
        n = len(self.fill_pmf) - 1
        if n == 0:
            return 0.0
        if self.mean_wait == 0.0:
            return math.inf
        return n / self.mean_wait


def peg_report(p: TacticParams) -> PegReport:
    """Evaluate all pegging-tactic statistics for one parameter set."""
    g = expected_shortfall(p)
    h = effective_spread_capture(p)
    var_is = max(0.0, shortfall_second_moment(p) - g * g)
    var_d = max(0.0, spread_capture_second_moment(p) - h * h)
    return PegReport(
        g=g,
        h=h,
        var_is=var_is,
        var_d=var_d,
        mean_wait=mean_wait(p.q, p.N),
        fill_pmf=fill_time_pmf(p.q, p.N),
    )
