"""Brute-force oracles: exhaustive probability-weighted path enumeration.

These walk every fill/no-fill branch of the quote-time process directly,
without the closed forms or lattice recursions they are used to check.
Feasible for short horizons only (branching is 2-3 per quote change).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class Moments:
    """Probability-weighted accumulators over enumerated outcomes."""

    n: int
    is_mean: float = 0.0
    is_sq: float = 0.0
    d_mean: float = 0.0
    d_sq: float = 0.0
    t_mean: float = 0.0
    fill_prob: float = 0.0
    total_prob: float = 0.0
    pmf: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.pmf is None:
            self.pmf = np.zeros(self.n + 1)

    def add(self, prob: float, is_x: float, d_x: float, t: int, filled: bool):
        self.is_mean += prob * is_x
        self.is_sq += prob * is_x * is_x
        self.d_mean += prob * d_x
        self.d_sq += prob * d_x * d_x
        self.t_mean += prob * t
        self.pmf[t] += prob
        self.fill_prob += prob if filled else 0.0
        self.total_prob += prob


def pt_enumerate(q: float, q_a: float, N: int, b: float, a: float) -> Moments:
    """Enumerate every pegging-tactic outcome sequence.

    At each surviving quote change the order fills before an uptick
    (prob q_up, captures 3/2), fills before a downtick (prob q_dn,
    captures -1/2), or survives (prob 1 - q) while the bid ratchets one
    spread away.  Shortfall of a fill at time k is -k spreads; the
    horizon liquidates at -(N + b) with capture -a.
    """
    q_up, q_dn = (q - q_a) / 2.0, (q + q_a) / 2.0
    m = Moments(N)

    def walk(k: int, prob: float):
        if k == N:
            m.add(prob, -(N + b), -a, N, filled=False)
            return
        m.add(prob * q_up, -float(k), 1.5, k, filled=True)
        m.add(prob * q_dn, -float(k), -0.5, k, filled=True)
        walk(k + 1, prob * (1.0 - q))

    walk(0, 1.0)
    return m


def pwt_enumerate(q: float, q_a: float, N: int, K: int, b: float, a: float) -> Moments:
    """Enumerate every post-and-wait path on the bid lattice.

    The bid starts at offset 0 and moves +/-1 spread per quote change;
    the order rests at offset -K.  At the level it fills with
    probability q (shortfall +K: bought below arrival) split q_up/q_dn
    for the capture, else the quote moves up.  Unfilled paths liquidate
    at -(m + b) with capture -a.
    """
    q_up, q_dn = (q - q_a) / 2.0, (q + q_a) / 2.0
    m = Moments(N)

    def walk(k: int, pos: int, prob: float):
        if k == N:
            m.add(prob, -(pos + b), -a, N, filled=False)
            return
        if pos == -K:
            m.add(prob * q_up, float(K), 1.5, k, filled=True)
            m.add(prob * q_dn, float(K), -0.5, k, filled=True)
            walk(k + 1, pos + 1, prob * (1.0 - q))
        else:
            walk(k + 1, pos + 1, prob * 0.5)
            walk(k + 1, pos - 1, prob * 0.5)

    walk(0, 0, 1.0)
    return m


def pwt_alpha_price(q: float, N: int, K: int, b: float, p_continue: float) -> float:
    """Expected liquidation-inclusive price with direction-biased moves.

    Forward enumeration carrying the previous move direction; the next
    move repeats it with probability p_continue.  The initial direction
    is averaged over up and down with weight 1/2.  Returns the expected
    price relative to arrival, in spread units.
    """

    def walk(k: int, pos: int, prev_up: bool) -> float:
        if k == N:
            return pos + b if pos >= -K else float(-K)
        if pos == -K:
            return q * (-K) + (1.0 - q) * walk(k + 1, pos + 1, True)
        p_up = p_continue if prev_up else 1.0 - p_continue
        out = 0.0
        if p_up > 0.0:
            out += p_up * walk(k + 1, pos + 1, True)
        if p_up < 1.0:
            out += (1.0 - p_up) * walk(k + 1, pos - 1, False)
        return out

    return 0.5 * walk(0, 0, True) + 0.5 * walk(0, 0, False)
