"""Binomial-lattice engine for the post-and-wait tactic.

The order is posted once, K spreads below the arrival bid, and left
there for N quote changes before aggressive liquidation.  Between quote
changes the bid performs a symmetric walk in full-spread steps; at the
posting level the order fills with probability q, otherwise the quote
moves up (a down move through the level would have filled it).  Expected
values conditional on time and price level are obtained by backward
recursion over the resulting triangular lattice.

Price levels are indexed by the integer offset M from the arrival bid
(price = arrival + M * S); the posting level sits at M = -K.  States
below the posting level are unreachable while the order is alive and are
absent from the lattice, not zero-filled.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .core import ParameterError, SpreadMultiple, TacticParams

# Dense O(N^2) storage; far beyond any tactical horizon but bounded to
# keep memory predictable.
MAX_HORIZON = 10_000


class MissingAlphaModel(ParameterError):
    """alpha_improvement called on a config without an alpha model."""


@dataclass(frozen=True)
class AlphaModel:
    """Short-term directional model biasing consecutive midpoint moves.

    ``p_continue`` is the probability that the next midpoint move repeats
    the previous direction: 1/2 reproduces the unbiased lattice, below
    1/2 is mean-reverting, above 1/2 trend-following.  The endpoints 0
    (always alternate) and 1 (always continue) are allowed.
    """

    p_continue: float

    def __post_init__(self):
        if not (0.0 <= self.p_continue <= 1.0):
            raise ParameterError(f"p_continue={self.p_continue} must be in [0, 1]")


@dataclass(frozen=True)
class PwtConfig:
    """Post-and-wait configuration: tactic params, posting depth, alpha.

    ``K`` is the posting depth in spread units below the arrival bid
    (K = 0 posts at the arrival bid itself and, unlike the pegging
    tactic, never re-pegs after the quote moves away).
    """

    params: TacticParams
    K: int = 0
    alpha: Optional[AlphaModel] = None

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 0:
            raise ParameterError(f"posting depth K={self.K} must be a nonnegative integer")
        if self.params.N > MAX_HORIZON:
            raise ParameterError(
                f"horizon N={self.params.N} exceeds the {MAX_HORIZON}-step lattice cap"
            )


@dataclass(frozen=True)
class LatticeGrid:
    """Triangular array of conditional expectations v[k][M].

    ``rows[k]`` holds the reachable states of time slice k in ascending
    M; ``m_lo[k]`` is the offset of its first entry.  Reachable M run
    from max(-K, parity-matched lower edge) up to +k in steps of 2.
    """

    kind: str
    K: int
    rows: Tuple[np.ndarray, ...]
    m_lo: Tuple[int, ...]

    def value(self, k: int, M: int) -> float:
        lo = self.m_lo[k]
        if M < lo or M > k or (M - lo) % 2 != 0:
            raise KeyError(f"state (k={k}, M={M}) is not reachable")
        return float(self.rows[k][(M - lo) // 2])

    def levels(self, k: int) -> np.ndarray:
        """Reachable price-level offsets M of time slice k."""
        return np.arange(self.m_lo[k], k + 1, 2)

    @property
    def root(self) -> float:
        return float(self.rows[0][0])


def _m_lo(k: int, K: int) -> int:
    if k <= K:
        return -k
    return -K if (k - K) % 2 == 0 else -K + 1


def _backward(
    N: int,
    K: int,
    q: float,
    terminal: Callable[[np.ndarray], np.ndarray],
    level_const: float,
    kind: str,
) -> LatticeGrid:
    """Run the backward recursion with the given terminal row and fill payout.

    Above the posting level each state averages its two children; at the
    level the no-fill mass (1 - q) moves to the up child and the fill
    contributes ``level_const``.
    """
    rows: list = [None] * (N + 1)
    los = [_m_lo(k, K) for k in range(N + 1)]
    cur = terminal(np.arange(los[N], N + 1, 2, dtype=float))
    rows[N] = cur
    for k in range(N - 1, -1, -1):
        ms = np.arange(los[k], k + 1, 2, dtype=float)
        # index of a child M' = M +/- 1 within row k+1
        shift = (los[k] - 1) - los[k + 1]  # position of the down child of ms[0]
        down = cur[(shift // 2): (shift // 2) + len(ms)] if shift >= 0 else None
        up = cur[(shift // 2) + 1: (shift // 2) + 1 + len(ms)]
        if down is None:
            # first reachable state sits at the level; its down child does
            # not exist (never reached unfilled)
            down = np.concatenate(([np.nan], cur[: len(ms) - 1]))
            up = cur[: len(ms)]
        val = 0.5 * up + 0.5 * down
        at_level = ms == -K
        if at_level.any():
            val = np.where(at_level, level_const + (1.0 - q) * up, val)
        rows[k] = val
        cur = val
    return LatticeGrid(kind=kind, K=K, rows=tuple(rows), m_lo=tuple(los))


def price_lattice(cfg: PwtConfig) -> LatticeGrid:
    """Expected liquidation-inclusive fill price, relative to arrival, in S units.

    Terminal states at or above the posting level liquidate at M + b;
    the fill itself is worth -K.
    """
    p = cfg.params
    K, b = cfg.K, p.b
    terminal = lambda ms: np.where(ms >= -K, ms + b, float(-K))
    return _backward(p.N, K, p.q, terminal, p.q * (-K), "price")


def capture_lattice(cfg: PwtConfig) -> LatticeGrid:
    """Expected effective spread capture in S units, conditional on state.

    A fill at the posting level captures +3S/2 before an uptick and
    -S/2 before a downtick; unfilled states are charged -a*S at the
    horizon.
    """
    p = cfg.params
    K, a = cfg.K, p.a
    terminal = lambda ms: np.where(ms >= -K, -a, 0.0)
    level_const = 1.5 * p.q_up - 0.5 * p.q_dn
    return _backward(p.N, K, p.q, terminal, level_const, "capture")


def expected_shortfall_pwt(cfg: PwtConfig) -> SpreadMultiple:
    """Expected shortfall factor g of the post-and-wait tactic.

    g = (arrival - expected price) / S, from the root of the price
    lattice.  N = 0 degenerates to immediate liquidation (g = -b); for
    K > N the posting level is out of reach and the symmetric walk makes
    the terminal expectation a martingale, so g = -b exactly as well.
    """
    return -price_lattice(cfg).root


def spread_capture_pwt(cfg: PwtConfig) -> SpreadMultiple:
    """Expected effective spread capture factor h = <D_{0,0}> / S."""
    return capture_lattice(cfg).root


def fill_probability_pwt(cfg: PwtConfig) -> float:
    """Probability that the resting order fills within the horizon."""
    p = cfg.params
    terminal = lambda ms: np.zeros_like(ms)
    return _backward(p.N, cfg.K, p.q, terminal, p.q, "fill_probability").root


def survival_probability_pwt(cfg: PwtConfig) -> float:
    """Probability that the order is still unfilled at liquidation time.

    Computed by its own recursion rather than as 1 - fill probability,
    so the pair provides a conservation check on the lattice.
    """
    p = cfg.params
    terminal = lambda ms: np.ones_like(ms)
    return _backward(p.N, cfg.K, p.q, terminal, 0.0, "survival").root


def _alpha_price_root(cfg: PwtConfig, p_continue: float) -> float:
    """Root of the price lattice with direction-dependent transitions.

    The lattice state is augmented with the direction of the move that
    led into it (axis 1: index 0 = down, 1 = up); the initial direction
    at the root is averaged with weight 1/2 each.  At the posting level
    the no-fill branch still moves up, so its child carries the up
    direction.
    """
    p = cfg.params
    N, K, q = p.N, cfg.K, p.q
    b = p.b
    los = [_m_lo(k, K) for k in range(N + 1)]
    ms = np.arange(los[N], N + 1, 2, dtype=float)
    cur = np.repeat(np.where(ms >= -K, ms + b, float(-K))[:, None], 2, axis=1)
    p_up = np.array([1.0 - p_continue, p_continue])  # indexed by incoming dir
    for k in range(N - 1, -1, -1):
        ms = np.arange(los[k], k + 1, 2, dtype=float)
        shift = (los[k] - 1) - los[k + 1]
        if shift >= 0:
            down = cur[(shift // 2): (shift // 2) + len(ms), 0]
            up = cur[(shift // 2) + 1: (shift // 2) + 1 + len(ms), 1]
        else:
            down = np.concatenate(([np.nan], cur[: len(ms) - 1, 0]))
            up = cur[: len(ms), 1]
        # value conditional on incoming direction dir: move up w.p. p_up[dir]
        val = p_up[None, :] * up[:, None] + (1.0 - p_up)[None, :] * down[:, None]
        at_level = ms == -K
        if at_level.any():
            level_val = q * (-K) + (1.0 - q) * up
            val = np.where(at_level[:, None], level_val[:, None], val)
        cur = val
    return float(0.5 * cur[0, 1] + 0.5 * cur[0, 0])


def alpha_improvement(cfg: PwtConfig) -> float:
    """Price improvement of the alpha model over the unbiased lattice.

    Returns ``<P_0> - <P_0>_alpha`` in price units: positive when the
    directional model lowers the expected buy price.  Exactly zero for
    p_continue = 1/2.
    """
    if cfg.alpha is None:
        raise MissingAlphaModel("config carries no alpha model")
    baseline = _alpha_price_root(cfg, 0.5)
    biased = _alpha_price_root(cfg, cfg.alpha.p_continue)
    return (baseline - biased) * cfg.params.S
