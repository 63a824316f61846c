"""Shared domain types and unit conventions for the tactic evaluators.

Conventions used throughout the library:

* All prices are measured relative to the arrival price, in units of the
  bid-ask spread ``S``.  The arrival price itself never appears as data:
  every quantity of interest is affine in it, so results are stored as
  spread multiples and stay scale-free.
* Quote time: the event clock advances when the midpoint changes.
* Volumes and block sizes are real-valued lots, not integer share counts.

All types validate on construction and are immutable afterwards, so they
are safe to share across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

# A dimensionless multiple of the bid-ask spread S (shortfall and
# spread-capture factors are reported in this unit).
SpreadMultiple = float


class ParameterError(ValueError):
    """Base class for tactic parameter validation failures."""


class InvalidProbability(ParameterError):
    """Fill probability outside (0, 1] or asymmetry exceeding it."""


class NonpositiveSpread(ParameterError):
    """Bid-ask spread must be strictly positive."""


class NegativeHorizon(ParameterError):
    """Horizon must be a nonnegative integer count of quote changes."""


class BoundaryCondition(Enum):
    """Terminal liquidation assumption for a limit order tactic.

    ``MARKET_ORDER`` crosses the spread at expiry (liquidation offset
    b = 1, terminal adverse-selection charge a = 1/2).  ``MIDPOINT``
    assumes exit at the midpoint (b = 1/2, a = 0).  No other (b, a)
    pairs are constructible.
    """

    MARKET_ORDER = ("MO", 1.0, 0.5)
    MIDPOINT = ("MP", 0.5, 0.0)

    def __init__(self, code: str, b: float, a: float):
        self.code = code
        self.b = b
        self.a = a

    @classmethod
    def from_code(cls, code: str) -> "BoundaryCondition":
        for bc in cls:
            if bc.code == code.upper():
                return bc
        raise ParameterError(f"unknown boundary condition {code!r}; use 'MO' or 'MP'")


@dataclass(frozen=True)
class TacticParams:
    """Macroscopic parameters of a limit order tactic in quote time.

    Parameters
    ----------
    q : float
        Probability of fill per quote change, in (0, 1].  q = 1 (certain
        fill) is allowed; q = 0 is rejected because the closed forms
        divide by q.
    q_a : float
        Probability asymmetry q_dn - q_up between adverse and favorable
        fills.  Must satisfy ``abs(q_a) <= q`` so that both components
        are valid probabilities.
    S : float
        Bid-ask spread in price units, > 0.
    N : int
        Horizon in quote changes, >= 0.  N = 0 means immediate
        liquidation at the boundary condition's terms.
    boundary : BoundaryCondition
    """

    q: float
    q_a: float
    S: float
    N: int
    boundary: BoundaryCondition = BoundaryCondition.MARKET_ORDER

    def __post_init__(self):
        validate_params(self)

    @property
    def q_up(self) -> float:
        """Probability of a fill followed by a favorable quote move."""
        return (self.q - self.q_a) / 2.0

    @property
    def q_dn(self) -> float:
        """Probability of a fill followed by an adverse quote move."""
        return (self.q + self.q_a) / 2.0

    @property
    def b(self) -> float:
        return self.boundary.b

    @property
    def a(self) -> float:
        return self.boundary.a


def validate_params(p: TacticParams) -> TacticParams:
    """Check all TacticParams invariants; return ``p`` unchanged if valid.

    Raises
    ------
    InvalidProbability
        If q is outside (0, 1] or ``abs(q_a) > q`` (which would make
        q_up negative or q_dn exceed 1).
    NonpositiveSpread
        If S <= 0.
    NegativeHorizon
        If N is negative or not integral.
    """
    if not (0.0 < p.q <= 1.0) or not math.isfinite(p.q):
        raise InvalidProbability(f"fill probability q={p.q} not in (0, 1]")
    if not math.isfinite(p.q_a) or abs(p.q_a) > p.q + 1e-15:
        raise InvalidProbability(
            f"asymmetry q_a={p.q_a} exceeds q={p.q}; q_up or q_dn leaves [0, 1]"
        )
    if not (p.S > 0.0) or not math.isfinite(p.S):
        raise NonpositiveSpread(f"spread S={p.S} must be > 0")
    if int(p.N) != p.N or p.N < 0:
        raise NegativeHorizon(f"horizon N={p.N} must be a nonnegative integer")
    return p


@dataclass(frozen=True)
class ImpactSpec:
    """Power-law market impact f(v) = zeta * v**beta of a trade of v lots.

    Concave and increasing for v >= 0: requires zeta > 0 and beta in (0, 1].
    """

    zeta: float
    beta: float

    def __post_init__(self):
        if not (self.zeta > 0.0):
            raise ParameterError(f"impact scale zeta={self.zeta} must be > 0")
        if not (0.0 < self.beta <= 1.0):
            raise ParameterError(f"impact exponent beta={self.beta} must be in (0, 1]")

    def impact(self, v):
        """f(v) = zeta * v**beta, vectorized over v >= 0."""
        return self.zeta * np.asarray(v, dtype=float) ** self.beta


class KernelSpec:
    """Decay kernel G(l): weight of a trade's impact l >= 1 steps later.

    Subclasses provide ``decay(lag)`` vectorized over integer lags >= 1.
    For the non-instantaneous kernels G is positive and non-increasing,
    so k(l) = G(l+1) - G(l) <= 0: a past series of same-sign trades
    reduces the marginal impact of the next one.
    """

    def decay(self, lag):
        raise NotImplementedError


@dataclass(frozen=True)
class InstantaneousKernel(KernelSpec):
    """Impact with no memory: past trades at distinct times contribute 0."""

    def decay(self, lag):
        return np.zeros_like(np.asarray(lag, dtype=float))


@dataclass(frozen=True)
class ExponentialKernel(KernelSpec):
    """G(l) = g * exp(-rho * l) with g > 0, rho > 0."""

    g: float
    rho: float

    def __post_init__(self):
        if not (self.g > 0.0 and self.rho > 0.0):
            raise ParameterError("exponential kernel requires g > 0 and rho > 0")

    def decay(self, lag):
        return self.g * np.exp(-self.rho * np.asarray(lag, dtype=float))


@dataclass(frozen=True)
class PowerLawKernel(KernelSpec):
    """G(l) = g * l**(-gamma) with g > 0, gamma in (0, 1)."""

    g: float
    gamma: float

    def __post_init__(self):
        if not (self.g > 0.0):
            raise ParameterError("power-law kernel requires g > 0")
        if not (0.0 < self.gamma < 1.0):
            raise ParameterError(f"decay exponent gamma={self.gamma} must be in (0, 1)")

    def decay(self, lag):
        return self.g * np.asarray(lag, dtype=float) ** (-self.gamma)


@dataclass(frozen=True)
class TradeSchedule:
    """An ordered sequence of (time index, volume) trades.

    Time indices are integers >= 1 and strictly increasing; volumes are
    nonnegative lots.
    """

    entries: Tuple[Tuple[int, float], ...]

    def __init__(self, entries: Sequence[Tuple[int, float]]):
        entries = tuple((int(k), float(v)) for k, v in entries)
        if not entries:
            raise ParameterError("schedule must contain at least one trade")
        prev = 0
        for k, v in entries:
            if k < 1 or k <= prev:
                raise ParameterError(
                    "schedule time indices must be >= 1 and strictly increasing"
                )
            if v < 0.0:
                raise ParameterError("schedule volumes must be nonnegative")
            prev = k
        object.__setattr__(self, "entries", entries)

    @property
    def times(self) -> np.ndarray:
        return np.array([k for k, _ in self.entries], dtype=np.int64)

    @property
    def volumes(self) -> np.ndarray:
        return np.array([v for _, v in self.entries], dtype=float)

    @property
    def total_volume(self) -> float:
        return float(sum(v for _, v in self.entries))
