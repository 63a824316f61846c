"""Opportunistic liquidity taking under stochastic offer volumes.

The volume offered at each trade-time step is a random draw; the
opportunistic tactic takes every offer of at least v0 lots arriving at
least d steps after the previously taken one, until the order is filled.
Expected block cost and captured volume are estimated by Monte Carlo;
the residual is priced as a uniform stream.  Grid optimization over
(v0, d) reuses one set of sampled streams for every grid point (common
random numbers), which keeps the cost surface smooth in the parameters
and makes the argmin deterministic for a given seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._util import parallel_map
from .core import ImpactSpec, KernelSpec, ParameterError
from .exec_market import ExecProblem, InfeasibleProblem, _residual_cost
from .monte_carlo import McEstimate, _estimate

_COST_CHUNK = 256


class VolumeDist:
    """Distribution of the volume offered at one trade-time step.

    Subclasses draw strictly positive samples; ``mean`` is the exact
    distribution mean used in sanity checks.
    """

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        raise NotImplementedError

    def mean(self) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class WeibullVolume(VolumeDist):
    """Weibull offer volumes with scale lambda_w and shape k_w."""

    lambda_w: float
    k_w: float

    def __post_init__(self):
        if not (self.lambda_w > 0 and self.k_w > 0):
            raise ParameterError("Weibull parameters must be positive")

    def sample(self, rng, size):
        return self.lambda_w * rng.weibull(self.k_w, size=size)

    def mean(self):
        return self.lambda_w * math.gamma(1.0 + 1.0 / self.k_w)


@dataclass(frozen=True)
class LogNormalVolume(VolumeDist):
    """Lognormal offer volumes; sigma = 0 degenerates to a point mass at e**mu."""

    mu: float
    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ParameterError("sigma must be >= 0")

    def sample(self, rng, size):
        return rng.lognormal(mean=self.mu, sigma=self.sigma, size=size)

    def mean(self):
        return math.exp(self.mu + 0.5 * self.sigma ** 2)


@dataclass(frozen=True)
class GammaVolume(VolumeDist):
    """Gamma offer volumes with the given shape and scale."""

    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise ParameterError("Gamma parameters must be positive")

    def sample(self, rng, size):
        return rng.gamma(self.shape, self.scale, size=size)

    def mean(self):
        return self.shape * self.scale


@dataclass(frozen=True)
class OlttParams:
    """Opportunistic tactic constraints: volume threshold and minimum delay."""

    v0: float
    d: int

    def __post_init__(self):
        if self.v0 < 0:
            raise ParameterError("v0 must be >= 0")
        if self.d < 1 or int(self.d) != self.d:
            raise ParameterError("d must be an integer >= 1")


@dataclass(frozen=True)
class EventStream:
    """Offered volumes at increasing trade-time steps."""

    times: np.ndarray
    volumes: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.int64)
        v = np.asarray(self.volumes, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ParameterError("times and volumes must be 1-d and equally long")
        if len(t) and (t[0] < 1 or (np.diff(t) <= 0).any()):
            raise ParameterError("event times must be >= 1 and strictly increasing")
        if (v <= 0).any():
            raise ParameterError("offered volumes must be positive")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "volumes", v)

    def __len__(self) -> int:
        return len(self.times)


def sample_stream(dist: VolumeDist, T: int, seed: int) -> EventStream:
    """Draw one i.i.d. offer-volume stream of T steps from a Philox seed."""
    if T < 1:
        raise ParameterError("T must be >= 1")
    rng = np.random.Generator(np.random.Philox(key=seed))
    return EventStream(times=np.arange(1, T + 1), volumes=dist.sample(rng, T))


def sample_conditional_stream(draw, T: int, seed: int) -> EventStream:
    """Stream from a history-conditioned volume model.

    ``draw(rng, history)`` receives the volumes drawn so far (a read-only
    array) and returns the next one.  Only the interface ships here; the
    library itself provides unconditional samplers.
    """
    if T < 1:
        raise ParameterError("T must be >= 1")
    rng = np.random.Generator(np.random.Philox(key=seed))
    vols = np.empty(T)
    for t in range(T):
        vols[t] = draw(rng, vols[:t])
    return EventStream(times=np.arange(1, T + 1), volumes=vols)


def filter_events(stream: EventStream, p: OlttParams) -> EventStream:
    """Greedy left-to-right selection of tactic-eligible events.

    Keeps an event when its volume is at least v0 and it arrives at
    least d steps after the previously *kept* event.  The output is a
    fixed point: filtering it again changes nothing.
    """
    keep_t: List[int] = []
    keep_v: List[float] = []
    last = None
    for t, v in zip(stream.times, stream.volumes):
        if v >= p.v0 and (last is None or t - last >= p.d):
            keep_t.append(int(t))
            keep_v.append(float(v))
            last = int(t)
    return EventStream(times=np.array(keep_t, dtype=np.int64),
                       volumes=np.array(keep_v))


def stream_matrix(dist: VolumeDist, n_mc: int, T: int, seed: int) -> np.ndarray:
    """n_mc independent streams as one (n_mc, T) draw from a single seed."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    return dist.sample(rng, (n_mc, T))


def _next_eligible(V: np.ndarray, v0: float) -> np.ndarray:
    """NE[i, t]: first 0-based step index >= t with V[i] >= v0, or T if none."""
    n, T = V.shape
    idx = np.where(V >= v0, np.arange(T, dtype=np.int64)[None, :], T)
    return np.minimum.accumulate(idx[:, ::-1], axis=1)[:, ::-1]


def _kept_padded(V: np.ndarray, v0: float, d: int, x0: float,
                 next_eligible: Optional[np.ndarray] = None
                 ) -> Tuple[np.ndarray, np.ndarray]:
    """Kept trades of every stream as zero-padded (times, sizes) arrays.

    Implements the greedy rule by jumping between eligible events, so the
    work scales with the number of kept trades rather than the horizon.
    Row order of kept events is chronological; padding columns carry
    time 0 and size 0.
    """
    n, T = V.shape
    ne = _next_eligible(V, v0) if next_eligible is None else next_eligible
    rows = np.arange(n)
    remaining = np.full(n, float(x0))
    cur = ne[:, 0].copy()
    active = (cur < T) & (remaining > 1e-12)
    times, sizes = [], []
    while active.any():
        v = V[rows, np.minimum(cur, T - 1)]
        u = np.where(active, np.minimum(v, remaining), 0.0)
        times.append(np.where(active, cur + 1, 0).astype(np.int64))
        sizes.append(u)
        remaining = remaining - u
        nxt = cur + d
        cur = np.where(active & (nxt < T), ne[rows, np.minimum(nxt, T - 1)], T)
        active = (cur < T) & (remaining > 1e-12)
    if not times:
        return np.zeros((n, 0), dtype=np.int64), np.zeros((n, 0))
    return np.column_stack(times), np.column_stack(sizes)


def _filter_matrix(V: np.ndarray, v0: float, d: int, x0: float
                   ) -> Tuple[np.ndarray, np.ndarray]:
    """Kept-event mask and traded sizes per stream (dense layout).

    Matches :func:`filter_events` plus the order-size cap
    u = min(offer, remaining volume).
    """
    n, T = V.shape
    t_pad, u_pad = _kept_padded(V, v0, d, x0)
    taken = np.zeros((n, T), dtype=bool)
    sizes = np.zeros((n, T))
    valid = t_pad > 0
    rows = np.nonzero(valid)[0]
    cols = t_pad[valid] - 1
    taken[rows, cols] = True
    sizes[rows, cols] = u_pad[valid]
    return taken, sizes


def _pairwise_cost_padded(t_pad: np.ndarray, u_pad: np.ndarray,
                          impact: ImpactSpec, kernel: KernelSpec,
                          horizon: int) -> np.ndarray:
    """Per-stream double-sum cost of chronologically padded kept trades."""
    n, m = t_pad.shape
    cost = np.zeros(n)
    if m < 2:
        return cost
    decay_table = kernel.decay(np.arange(1, horizon + 1, dtype=float))
    f_pad = np.where(u_pad > 0, impact.impact(u_pad), 0.0)
    # earlier trades sit at lower column indices, so the strict lower
    # triangle is exactly the k' < k pair set
    tri = np.tril(np.ones((m, m), dtype=bool), -1)
    chunk = max(1, min(_COST_CHUNK, int(2e7 // max(1, m * m))))
    for s in range(0, n, chunk):
        tp = t_pad[s:s + chunk]
        lag = tp[:, :, None] - tp[:, None, :]  # lag[j, i] = t_j - t_i
        g = decay_table[np.clip(lag, 1, horizon) - 1] * tri
        # padded columns contribute nothing: their size and impact are 0
        cost[s:s + chunk] = np.einsum("sj,sji,si->s", u_pad[s:s + chunk], g,
                                      f_pad[s:s + chunk])
    return cost


def _pairwise_cost(taken: np.ndarray, sizes: np.ndarray,
                   impact: ImpactSpec, kernel: KernelSpec) -> np.ndarray:
    """Per-stream double-sum cost of the kept trades (dense mask layout)."""
    n, T = taken.shape
    counts = taken.sum(axis=1)
    m = int(counts.max()) if n else 0
    if m < 2:
        return np.zeros(n)
    t_pad = np.zeros((n, m), dtype=np.int64)
    u_pad = np.zeros((n, m))
    rows, ts = np.nonzero(taken)
    pos = (np.cumsum(taken, axis=1) - 1)[rows, ts]
    t_pad[rows, pos] = ts + 1
    u_pad[rows, pos] = sizes[rows, ts]
    return _pairwise_cost_padded(t_pad, u_pad, impact, kernel, T)


def oltt_cost_mc(dist: VolumeDist, p: OlttParams, prob: ExecProblem,
                 n_mc: int, seed: int) -> Tuple[McEstimate, McEstimate]:
    """Monte-Carlo block cost and captured volume of the (v0, d) tactic.

    Each sampled stream is filtered greedily; kept offers are traded at
    min(offer, remaining) so the blocks never overshoot the order.  The
    residual X0 - X_b is left to the uniform stream (priced separately,
    see :func:`optimize_stochastic`).  Deterministic for a given seed.
    """
    if n_mc < 1:
        raise ParameterError("n_mc must be >= 1")
    V = stream_matrix(dist, n_mc, prob.T, seed)
    t_pad, u_pad = _kept_padded(V, p.v0, p.d, prob.X0)
    cost = _pairwise_cost_padded(t_pad, u_pad, prob.impact, prob.kernel, prob.T)
    return _estimate(cost), _estimate(u_pad.sum(axis=1))


@dataclass(frozen=True)
class SurfacePoint:
    """Cost-surface entry of the stochastic optimizer at one (v0, d)."""

    v0: float
    d: int
    block_cost: float
    block_volume: float
    residual_cost: float
    total_cost: float


@dataclass(frozen=True)
class StochasticResult:
    argmin: OlttParams
    cost: float
    surface: Tuple[SurfacePoint, ...]


def optimize_stochastic(dist: VolumeDist, grid: Sequence[Tuple[float, int]],
                        prob: ExecProblem, n_mc: int, seed: int,
                        max_workers: int = 1) -> StochasticResult:
    """Grid search of the total cost C_b(v0, d) + C_u over tactic parameters.

    All grid points are evaluated on the same sampled streams (common
    random numbers); the residual rate is set from the mean captured
    volume, (X0 - <X_b>) / T.  Ties break toward the earlier grid entry.

    Raises
    ------
    InfeasibleProblem
        If X0 > L * T (the uniform fallback alone cannot finish).
    """
    if len(grid) == 0:
        raise ParameterError("parameter grid must be nonempty")
    if prob.X0 > prob.L * prob.T + 1e-9:
        raise InfeasibleProblem(
            f"X0={prob.X0} exceeds the maximum tradable volume L*T={prob.L * prob.T}"
        )
    V = stream_matrix(dist, n_mc, prob.T, seed)

    def evaluate(point: Tuple[float, int]) -> SurfacePoint:
        v0, d = point
        t_pad, u_pad = _kept_padded(V, v0, int(d), prob.X0)
        block_cost = float(_pairwise_cost_padded(t_pad, u_pad, prob.impact,
                                                 prob.kernel, prob.T).mean())
        x_b = float(u_pad.sum(axis=1).mean())
        rho_u = max(0.0, (prob.X0 - x_b) / prob.T)
        residual = _residual_cost(prob, rho_u)
        return SurfacePoint(v0=float(v0), d=int(d), block_cost=block_cost,
                            block_volume=x_b, residual_cost=residual,
                            total_cost=block_cost + residual)

    surface = parallel_map(evaluate, list(grid), max_workers=max_workers)
    best = min(range(len(surface)), key=lambda i: (surface[i].total_cost, i))
    pt = surface[best]
    return StochasticResult(argmin=OlttParams(v0=pt.v0, d=pt.d),
                            cost=pt.total_cost, surface=tuple(surface))
