"""Evaluation and optimization of sell-side limit and market order tactics.

Closed-form and lattice evaluators for quote-time limit order tactics
(pegging, post-and-wait), Monte-Carlo simulation under parameter
uncertainty, market-order schedule optimization under nonlinear impact
with decay kernels and liquidity constraints, and the band-position
tactic selector.  See the README for the CLI front end.
"""

__version__ = "0.1.0"

from .allocator import BandPosition, TacticChoice, TacticKind, select_tactic
from .core import (
    BoundaryCondition,
    ExponentialKernel,
    ImpactSpec,
    InstantaneousKernel,
    InvalidProbability,
    KernelSpec,
    NegativeHorizon,
    NonpositiveSpread,
    ParameterError,
    PowerLawKernel,
    SpreadMultiple,
    TacticParams,
    TradeSchedule,
    validate_params,
)
from .exec_market import (
    BlockPlan,
    DegenerateExponent,
    ExecProblem,
    InfeasibleProblem,
    ansatz_cost,
    block_cost_exponential,
    block_cost_power,
    optimize_deterministic,
    schedule_cost,
    schedule_instantaneous,
    uniform_cost,
)
from .exec_stochastic import (
    EventStream,
    GammaVolume,
    LogNormalVolume,
    OlttParams,
    StochasticResult,
    SurfacePoint,
    VolumeDist,
    WeibullVolume,
    filter_events,
    oltt_cost_mc,
    optimize_stochastic,
    sample_stream,
)
from .monte_carlo import (
    DiscreteDist,
    EmptyPairs,
    FillPair,
    InvalidAtomCombination,
    McEstimate,
    SimResult,
    pair_efficiency,
    simulate_tactic,
    synthetic_pairs,
)
from .peg_tactic import (
    PegReport,
    effective_spread_capture,
    expected_shortfall,
    expected_shortfall_infinite,
    fill_time_pmf,
    mean_wait,
    pair_efficiency_delta,
    peg_report,
    shortfall_second_moment,
    spread_capture_second_moment,
)
from .post_wait import (
    AlphaModel,
    LatticeGrid,
    MissingAlphaModel,
    PwtConfig,
    alpha_improvement,
    capture_lattice,
    expected_shortfall_pwt,
    fill_probability_pwt,
    price_lattice,
    spread_capture_pwt,
    survival_probability_pwt,
)
from .tactic_eval import (
    CostWeights,
    GridMismatch,
    TacticCurve,
    crossing_points,
    optimal_termination,
    pt_curve,
    pt_risk,
    pwt_curve,
    pwt_risk,
    total_cost,
)
