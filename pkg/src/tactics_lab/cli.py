"""Command-line front end: run scenario configs, write CSV and plot data.

A scenario is a single YAML file naming a command (pt-eval, pwt-eval,
compare, mc-limit, exec-det, exec-stoch, allocate) and its parameters.
Unknown keys are rejected to catch typos.  Every run writes a results
CSV with columns in the conventional notation (q, g_PT, h_PWT, C, v0,
d, cost, ...), a gnuplot-compatible ``.dat`` file, and a manifest that
echoes the fully resolved inputs plus seed and tool version; rerunning
a manifest reproduces the CSV byte for byte.

Exit codes: 0 success, 2 configuration error, 3 infeasible problem,
1 internal error.  ``TACTICS_LAB_THREADS`` caps internal parallelism.
"""
from __future__ import annotations

import argparse
import csv
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml

from . import __version__
from ._util import thread_cap
from .allocator import BandPosition, select_tactic
from .core import (
    BoundaryCondition,
    ExponentialKernel,
    ImpactSpec,
    InstantaneousKernel,
    KernelSpec,
    ParameterError,
    PowerLawKernel,
    TacticParams,
)
from .exec_market import (
    ExecProblem,
    InfeasibleProblem,
    ansatz_cost,
    optimize_deterministic,
    plan_cost,
    schedule_instantaneous,
)
from .exec_stochastic import (
    GammaVolume,
    LogNormalVolume,
    OlttParams,
    WeibullVolume,
    oltt_cost_mc,
    optimize_stochastic,
)
from .monte_carlo import DiscreteDist, simulate_tactic
from .peg_tactic import (
    effective_spread_capture,
    expected_shortfall,
    mean_wait,
    peg_report,
    shortfall_second_moment,
    spread_capture_second_moment,
)
from .post_wait import (
    AlphaModel,
    PwtConfig,
    alpha_improvement,
    expected_shortfall_pwt,
    fill_probability_pwt,
    spread_capture_pwt,
    survival_probability_pwt,
)
from .tactic_eval import CostWeights, crossing_points, pt_curve, pwt_curve, total_cost

COMMANDS = ("pt-eval", "pwt-eval", "compare", "mc-limit",
            "exec-det", "exec-stoch", "allocate")

Row = Tuple[Any, ...]
Table = Tuple[List[str], List[Row]]


class ConfigError(Exception):
    """Scenario file failed to parse or validate; message names the field."""


# ---------------------------------------------------------------------------
# config validation


def _req(params: Dict[str, Any], key: str, path: str) -> Any:
    if key not in params:
        raise ConfigError(f"{path}: missing required key '{key}'")
    return params[key]


def _number(val: Any, path: str) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {val!r}")
    return float(val)


def _integer(val: Any, path: str) -> int:
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{path}: expected an integer, got {val!r}")
    return val


def _check_keys(d: Dict[str, Any], allowed: Sequence[str], path: str) -> None:
    if not isinstance(d, dict):
        raise ConfigError(f"{path}: expected a mapping")
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) {unknown}; allowed: {sorted(allowed)}")


def _grid(spec: Any, path: str, integer: bool = False) -> np.ndarray:
    _check_keys(spec, ("start", "stop", "step"), path)
    start = _number(_req(spec, "start", path), f"{path}.start")
    stop = _number(_req(spec, "stop", path), f"{path}.stop")
    step = _number(spec.get("step", 1.0), f"{path}.step")
    if step <= 0 or stop < start:
        raise ConfigError(f"{path}: need step > 0 and stop >= start")
    n = int(round((stop - start) / step))
    grid = start + step * np.arange(n + 1)
    grid = grid[grid <= stop + 1e-12]
    if len(grid) == 0:
        raise ConfigError(f"{path}: grid is empty")
    if integer:
        ints = np.rint(grid).astype(int)
        if not np.allclose(grid, ints, atol=1e-9):
            raise ConfigError(f"{path}: grid values must be integers")
        return ints
    return grid


def _boundary(params: Dict[str, Any], path: str) -> BoundaryCondition:
    code = _req(params, "boundary", path)
    try:
        return BoundaryCondition.from_code(str(code))
    except ParameterError as exc:
        raise ConfigError(f"{path}.boundary: {exc}") from None


def _kernel(spec: Any, path: str) -> KernelSpec:
    _check_keys(spec, ("kind", "g", "rho", "gamma"), path)
    kind = str(_req(spec, "kind", path))
    try:
        if kind == "instantaneous":
            return InstantaneousKernel()
        if kind == "exponential":
            return ExponentialKernel(g=_number(_req(spec, "g", path), f"{path}.g"),
                                     rho=_number(_req(spec, "rho", path), f"{path}.rho"))
        if kind == "power":
            return PowerLawKernel(g=_number(_req(spec, "g", path), f"{path}.g"),
                                  gamma=_number(_req(spec, "gamma", path), f"{path}.gamma"))
    except ParameterError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    raise ConfigError(f"{path}.kind: unknown kernel kind {kind!r}")


def _impact(spec: Any, path: str) -> ImpactSpec:
    _check_keys(spec, ("zeta", "beta"), path)
    try:
        return ImpactSpec(zeta=_number(_req(spec, "zeta", path), f"{path}.zeta"),
                          beta=_number(_req(spec, "beta", path), f"{path}.beta"))
    except ParameterError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _volume_dist(spec: Any, path: str):
    _check_keys(spec, ("kind", "lambda", "k", "mu", "sigma", "shape", "scale"), path)
    kind = str(_req(spec, "kind", path))
    try:
        if kind == "weibull":
            return WeibullVolume(lambda_w=_number(_req(spec, "lambda", path), f"{path}.lambda"),
                                 k_w=_number(_req(spec, "k", path), f"{path}.k"))
        if kind == "lognormal":
            return LogNormalVolume(mu=_number(_req(spec, "mu", path), f"{path}.mu"),
                                   sigma=_number(_req(spec, "sigma", path), f"{path}.sigma"))
        if kind == "gamma":
            return GammaVolume(shape=_number(_req(spec, "shape", path), f"{path}.shape"),
                               scale=_number(_req(spec, "scale", path), f"{path}.scale"))
    except ParameterError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    raise ConfigError(f"{path}.kind: unknown volume distribution {kind!r}")


def _offsets(spec: Any, path: str) -> List[Tuple[float, float]]:
    if not isinstance(spec, list) or not spec:
        raise ConfigError(f"{path}: expected a nonempty list of [offset, prob] pairs")
    out = []
    for i, pair in enumerate(spec):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"{path}[{i}]: expected [offset, prob]")
        out.append((_number(pair[0], f"{path}[{i}][0]"),
                    _number(pair[1], f"{path}[{i}][1]")))
    return out


def _tactic_params(q: float, q_a: float, S: float, N: int,
                   boundary: BoundaryCondition, path: str) -> TacticParams:
    try:
        return TacticParams(q=q, q_a=q_a, S=S, N=N, boundary=boundary)
    except ParameterError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# command runners (each returns the primary table + named extra tables)


def _q_values(params: Dict[str, Any], path: str) -> np.ndarray:
    if ("q" in params) == ("q_grid" in params):
        raise ConfigError(f"{path}: provide exactly one of 'q' or 'q_grid'")
    if "q" in params:
        return np.array([_number(params["q"], f"{path}.q")])
    return _grid(params["q_grid"], f"{path}.q_grid")


def _run_pt_eval(params: Dict[str, Any], seed: int) -> Tuple[Table, Dict[str, Table]]:
    _check_keys(params, ("q", "q_grid", "q_a", "S", "N", "boundary"), "params")
    qs = _q_values(params, "params")
    q_a = _number(_req(params, "q_a", "params"), "params.q_a")
    S = _number(params.get("S", 1.0), "params.S")
    N = _integer(_req(params, "N", "params"), "params.N")
    boundary = _boundary(params, "params")
    cols = ["q", "g_PT", "h_PT", "IS2_PT", "D02_PT", "var_IS", "var_D", "T_mean"]
    rows = []
    for q in qs:
        p = _tactic_params(float(q), min(q_a, float(q)), S, N, boundary, "params")
        rep = peg_report(p)
        rows.append((q, rep.g, rep.h, shortfall_second_moment(p),
                     spread_capture_second_moment(p), rep.var_is, rep.var_d,
                     mean_wait(p.q, p.N)))
    return (cols, rows), {}


def _run_pwt_eval(params: Dict[str, Any], seed: int) -> Tuple[Table, Dict[str, Table]]:
    _check_keys(params, ("q", "q_grid", "q_a", "S", "N", "K", "boundary",
                         "p_continue"), "params")
    qs = _q_values(params, "params")
    q_a = _number(_req(params, "q_a", "params"), "params.q_a")
    S = _number(params.get("S", 1.0), "params.S")
    N = _integer(_req(params, "N", "params"), "params.N")
    K = _integer(_req(params, "K", "params"), "params.K")
    boundary = _boundary(params, "params")
    alpha = None
    if "p_continue" in params:
        alpha = AlphaModel(_number(params["p_continue"], "params.p_continue"))
    cols = ["q", "g_PWT", "h_PWT", "fill_prob", "survival_prob"]
    if alpha is not None:
        cols.append("Omega_alpha")
    rows = []
    for q in qs:
        p = _tactic_params(float(q), min(q_a, float(q)), S, N, boundary, "params")
        cfg = PwtConfig(params=p, K=K, alpha=alpha)
        row = [q, expected_shortfall_pwt(cfg), spread_capture_pwt(cfg),
               fill_probability_pwt(cfg), survival_probability_pwt(cfg)]
        if alpha is not None:
            row.append(alpha_improvement(cfg))
        rows.append(tuple(row))
    return (cols, rows), {}


def _run_compare(params: Dict[str, Any], seed: int) -> Tuple[Table, Dict[str, Table]]:
    _check_keys(params, ("q_grid", "q_a", "S", "N", "boundary", "rho",
                         "pwt_depths"), "params")
    qs = _grid(_req(params, "q_grid", "params"), "params.q_grid")
    q_a = _number(_req(params, "q_a", "params"), "params.q_a")
    S = _number(params.get("S", 1.0), "params.S")
    N = _integer(_req(params, "N", "params"), "params.N")
    rho = _number(params.get("rho", 1.0), "params.rho")
    depths = params.get("pwt_depths", [0, 1, 2])
    if not isinstance(depths, list) or not depths:
        raise ConfigError("params.pwt_depths: expected a nonempty list of integers")
    depths = [_integer(k, "params.pwt_depths") for k in depths]
    boundary = _boundary(params, "params")
    weights = CostWeights(rho=rho)

    curves = [pt_curve(qs, q_a, N, boundary, weights, S)]
    curves += [pwt_curve(qs, q_a, N, k, boundary, weights, S) for k in depths]
    cols = ["q"]
    for c in curves:
        cols += [f"g_{c.label}", f"h_{c.label}", f"C_{c.label}"]
    cols.append("qa_clamped")
    rows = []
    for i, q in enumerate(qs):
        row: List[Any] = [q]
        for c in curves:
            row += [c.g[i], c.h[i], c.cost[i]]
        row.append(int(curves[0].clamped[i]))
        rows.append(tuple(row))

    xcols = ["curve_a", "curve_b", "metric", "q_cross"]
    xrows = []
    for c in curves[1:]:
        for metric in ("shortfall", "cost"):
            for qc in crossing_points(curves[0], c, metric=metric):
                xrows.append((curves[0].label, c.label, metric, qc))
    return (cols, rows), {"crossings": (xcols, xrows)}


def _run_mc_limit(params: Dict[str, Any], seed: int) -> Tuple[Table, Dict[str, Table]]:
    _check_keys(params, ("tactic", "K", "boundary", "N", "q", "q_grid",
                         "q_offsets", "q_a", "q_a_offsets", "S", "S_factors",
                         "n_mc"), "params")
    tactic = str(_req(params, "tactic", "params"))
    if tactic not in ("pt", "pwt"):
        raise ConfigError(f"params.tactic: expected 'pt' or 'pwt', got {tactic!r}")
    qs = _q_values(params, "params")
    q_a = _number(_req(params, "q_a", "params"), "params.q_a")
    S = _number(params.get("S", 1.0), "params.S")
    N = _integer(_req(params, "N", "params"), "params.N")
    n_mc = _integer(_req(params, "n_mc", "params"), "params.n_mc")
    K = _integer(params.get("K", 0), "params.K")
    boundary = _boundary(params, "params")
    q_off = _offsets(params.get("q_offsets", [[0.0, 1.0]]), "params.q_offsets")
    qa_off = _offsets(params.get("q_a_offsets", [[0.0, 1.0]]), "params.q_a_offsets")
    s_fac = _offsets(params.get("S_factors", [[1.0, 1.0]]), "params.S_factors")

    cols = ["q", "IS_mc", "IS_se", "D_mc", "D_se", "IS_closed", "D_closed",
            "rejection_rate"]
    rows = []
    for i, q in enumerate(qs):
        q = float(q)
        p = _tactic_params(q, min(q_a, q), S, N, boundary, "params")
        dists = (DiscreteDist([(q + o, w) for o, w in q_off]),
                 DiscreteDist([(p.q_a + o, w) for o, w in qa_off]),
                 DiscreteDist([(S * m, w) for m, w in s_fac]))
        if tactic == "pwt":
            cfg = PwtConfig(params=p, K=K)
            res = simulate_tactic(cfg, dists, n_mc, seed + i)
            is_cl = expected_shortfall_pwt(cfg) * S
            d_cl = spread_capture_pwt(cfg) * S
        else:
            res = simulate_tactic(p, dists, n_mc, seed + i)
            is_cl = expected_shortfall(p) * S
            d_cl = effective_spread_capture(p) * S
        rows.append((q, res.is_est.mean, res.is_est.std_error, res.d_est.mean,
                     res.d_est.std_error, is_cl, d_cl, res.rejection_rate))
    return (cols, rows), {}


def _exec_problem(params: Dict[str, Any], kernel: KernelSpec) -> ExecProblem:
    uniform = params.get("uniform_kernel")
    try:
        return ExecProblem(
            X0=_number(_req(params, "X0", "params"), "params.X0"),
            T=_integer(_req(params, "T", "params"), "params.T"),
            L=_number(_req(params, "L", "params"), "params.L"),
            impact=_impact(_req(params, "impact", "params"), "params.impact"),
            kernel=kernel,
            d_min=_integer(params.get("d_min", 1), "params.d_min"),
            uniform_kernel=(None if uniform is None
                            else _kernel(uniform, "params.uniform_kernel")),
        )
    except ParameterError as exc:
        raise ConfigError(f"params: {exc}") from None


def _run_exec_det(params: Dict[str, Any], seed: int) -> Tuple[Table, Dict[str, Table]]:
    _check_keys(params, ("X0", "T", "L", "d_min", "impact", "kernels",
                         "uniform_kernel", "d_grid"), "params")
    kspecs = _req(params, "kernels", "params")
    if not isinstance(kspecs, list) or not kspecs:
        raise ConfigError("params.kernels: expected a nonempty list")
    kernels = [_kernel(k, f"params.kernels[{i}]") for i, k in enumerate(kspecs)]
    d_grid = _grid(_req(params, "d_grid", "params"), "params.d_grid", integer=True)
    labels, problems = [], []
    for spec, k in zip(kspecs, kernels):
        labels.append(str(spec["kind"]))
        problems.append(_exec_problem(params, k))

    cols = ["d"]
    for lab in labels:
        cols += [f"rho_b_{lab}", f"cost_{lab}"]
    per_kernel = []
    ocols = ["kernel", "rho_b", "d", "n_blocks", "rho_u", "cost"]
    orows = []
    for lab, prob in zip(labels, problems):
        if isinstance(prob.kernel, InstantaneousKernel):
            plan = schedule_instantaneous(prob)
            surf = [(int(d), plan.rho_b, ansatz_cost(prob, plan.rho_b, int(d)))
                    for d in d_grid]
            orows.append((lab, plan.rho_b, plan.d, plan.n_blocks, plan.rho_u,
                          plan_cost(prob, plan)))
        else:
            plan, cost, surf = optimize_deterministic(prob, list(d_grid))
            orows.append((lab, plan.rho_b, plan.d, plan.n_blocks, plan.rho_u, cost))
        per_kernel.append(surf)
    rows = []
    for i, d in enumerate(d_grid):
        row: List[Any] = [int(d)]
        for surf in per_kernel:
            row += [surf[i][1], surf[i][2]]
        rows.append(tuple(row))
    return (cols, rows), {"optima": (ocols, orows)}


def _run_exec_stoch(params: Dict[str, Any], seed: int) -> Tuple[Table, Dict[str, Table]]:
    _check_keys(params, ("X0", "T", "L", "impact", "kernel", "uniform_kernel",
                         "volume", "v0_grid", "d_grid", "n_mc"), "params")
    kernel = _kernel(_req(params, "kernel", "params"), "params.kernel")
    prob = _exec_problem(params, kernel)
    dist = _volume_dist(_req(params, "volume", "params"), "params.volume")
    v0s = _grid(_req(params, "v0_grid", "params"), "params.v0_grid")
    ds = _grid(_req(params, "d_grid", "params"), "params.d_grid", integer=True)
    n_mc = _integer(_req(params, "n_mc", "params"), "params.n_mc")
    grid = [(float(v0), int(d)) for v0 in v0s for d in ds]
    result = optimize_stochastic(dist, grid, prob, n_mc, seed,
                                 max_workers=thread_cap())
    cols = ["v0", "d", "C_b", "X_b", "C_u", "C_total"]
    rows = [(p.v0, p.d, p.block_cost, p.block_volume, p.residual_cost,
             p.total_cost) for p in result.surface]
    ocols = ["v0", "d", "cost"]
    orows = [(result.argmin.v0, result.argmin.d, result.cost)]
    return (cols, rows), {"optimum": (ocols, orows)}


def _run_allocate(params: Dict[str, Any], seed: int) -> Tuple[Table, Dict[str, Table]]:
    _check_keys(params, ("zones",), "params")
    zones = params.get("zones", "all")
    if zones == "all":
        positions = list(BandPosition)
    else:
        if not isinstance(zones, list) or not zones:
            raise ConfigError("params.zones: expected 'all' or a nonempty list")
        try:
            positions = [BandPosition(z) for z in zones]
        except ValueError as exc:
            raise ConfigError(f"params.zones: {exc}") from None
    cols = ["zone", "rank", "tactic"]
    rows = []
    for pos in positions:
        for rank, choice in enumerate(select_tactic(pos), start=1):
            rows.append((pos.value, rank, choice.kind.value))
    return (cols, rows), {}


_RUNNERS: Dict[str, Callable[[Dict[str, Any], int], Tuple[Table, Dict[str, Table]]]] = {
    "pt-eval": _run_pt_eval,
    "pwt-eval": _run_pwt_eval,
    "compare": _run_compare,
    "mc-limit": _run_mc_limit,
    "exec-det": _run_exec_det,
    "exec-stoch": _run_exec_stoch,
    "allocate": _run_allocate,
}


# ---------------------------------------------------------------------------
# output


def _fmt(x: Any) -> str:
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _write_csv(path: Path, cols: List[str], rows: List[Row]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def _write_dat(path: Path, cols: List[str], rows: List[Row],
               selected: Optional[List[str]]) -> None:
    idx = list(range(len(cols)))
    if selected:
        missing = [c for c in selected if c not in cols]
        if missing:
            raise ConfigError(f"plot_columns: unknown column(s) {missing}")
        idx = [cols.index(c) for c in selected]
    with path.open("w") as fh:
        fh.write("# " + " ".join(cols[i] for i in idx) + "\n")
        for row in rows:
            fh.write(" ".join(_fmt(row[i]) for i in idx) + "\n")


# ---------------------------------------------------------------------------
# scenario driver


_TOP_KEYS = ("name", "command", "title", "seed", "out_dir", "plot_columns",
             "params", "tool_version")


def load_config(path: Path) -> Dict[str, Any]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    try:
        cfg = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: YAML parse error: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    _check_keys(cfg, _TOP_KEYS, str(path))
    for key in ("name", "command", "params"):
        _req(cfg, key, str(path))
    if cfg["command"] not in COMMANDS:
        raise ConfigError(
            f"{path}: unknown command {cfg['command']!r}; expected one of {COMMANDS}")
    if not isinstance(cfg["params"], dict):
        raise ConfigError(f"{path}: params must be a mapping")
    return cfg


def run_scenario(cfg: Dict[str, Any], out_override: Optional[str] = None,
                 seed_override: Optional[int] = None) -> List[Path]:
    name = str(cfg["name"])
    seed = int(cfg.get("seed", 0)) if seed_override is None else int(seed_override)
    out_dir = Path(out_override or cfg.get("out_dir") or f"out/{name}")
    out_dir.mkdir(parents=True, exist_ok=True)

    runner = _RUNNERS[cfg["command"]]
    (cols, rows), extras = runner(cfg["params"], seed)

    written = []
    csv_path = out_dir / f"{name}.csv"
    _write_csv(csv_path, cols, rows)
    written.append(csv_path)
    dat_path = out_dir / f"{name}.dat"
    _write_dat(dat_path, cols, rows, cfg.get("plot_columns"))
    written.append(dat_path)
    for suffix, (ecols, erows) in extras.items():
        extra_path = out_dir / f"{name}_{suffix}.csv"
        _write_csv(extra_path, ecols, erows)
        written.append(extra_path)

    manifest = {
        "name": name,
        "command": cfg["command"],
        "seed": seed,
        "out_dir": str(out_dir),
        "params": cfg["params"],
        "tool_version": __version__,
    }
    if "title" in cfg:
        manifest["title"] = cfg["title"]
    if "plot_columns" in cfg:
        manifest["plot_columns"] = cfg["plot_columns"]
    manifest_path = out_dir / f"{name}_manifest.yaml"
    manifest_path.write_text(yaml.safe_dump(manifest, sort_keys=True))
    written.append(manifest_path)
    return written


def packaged_scenarios() -> List[Path]:
    root = resources.files("tactics_lab") / "scenarios"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".yaml"))


def _resolve_config(arg: str) -> Path:
    p = Path(arg)
    if p.exists():
        return p
    for cand in packaged_scenarios():
        if cand.stem == arg or cand.name == arg:
            return cand
    raise ConfigError(f"no such config file or packaged scenario: {arg}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="tactics-lab",
        description="Evaluate and optimize limit/market order execution tactics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    run_p = sub.add_parser("run", help="run a scenario config file")
    run_p.add_argument("config", help="path to a YAML scenario, or a packaged scenario name")
    run_p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run_p.add_argument("--out", default=None, help="override the output directory")
    sub.add_parser("list-examples", help="list the packaged example scenarios")

    args = parser.parse_args(argv)
    try:
        if args.subcommand == "list-examples":
            for path in packaged_scenarios():
                cfg = load_config(path)
                title = cfg.get("title", "")
                print(f"{path.stem:32s} {cfg['command']:10s} {title}")
            return 0
        cfg = load_config(_resolve_config(args.config))
        for path in run_scenario(cfg, out_override=args.out, seed_override=args.seed):
            print(path)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleProblem as exc:
        print(f"infeasible problem: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
