"""Experiment drivers: sweeps, lifelong runs, mortal runs, CSV output.

Replications are embarrassingly parallel. Each one owns a counter-based
stream addressed by (seed, stream id), workers receive contiguous
replication ranges, and results are reassembled in replication order
before aggregation, so output bytes do not depend on the worker count.
"""

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .env import PriorSpec, sample_task
from .episodes import History, run_episode
from .meta import (DGreedyMeta, GammaGrid, GreedyMeta, OracleMeta,
                   RestartOracleMeta, SWGreedyMeta, TSMeta, oracle_gamma)
from .mortal import MortalAgentConfig, MortalScenario, run_mortal
from .policies import SubPolicyConfig
from .rng import EPISODE_STRIDE, replication_stream, sweep_stream

META_KINDS = ("greedy", "dgreedy", "swgreedy", "ts", "oracle",
              "restart-oracle")
CURVE_POINT_CAP = 500


def theorem1_bound(gamma, n_arms, horizon, delta):
    """Distribution-free regret ceiling 4KT^2 d^(4g^2) + 2g sqrt(2KT ln(1/d)).

    Only meaningful for a strictly positive exploration weight.
    """
    if gamma <= 0.0:
        raise ValueError("the bound needs gamma > 0")
    if n_arms < 1 or horizon < 1:
        raise ValueError("need n_arms >= 1 and horizon >= 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    k, t = n_arms, horizon
    return (4.0 * k * t * t * delta ** (4.0 * gamma * gamma)
            + 2.0 * gamma * math.sqrt(2.0 * k * t * math.log(1.0 / delta)))


def aggregate(values):
    """Mean and standard error (sd with ddof=1 over sqrt(n))."""
    arr = np.asarray(values, np.float64)
    n = arr.shape[0]
    if n < 1:
        raise ValueError("nothing to aggregate")
    mean = float(arr.mean())
    if n == 1:
        return mean, 0.0
    return mean, float(arr.std(ddof=1) / math.sqrt(n))


def resolve_workers(workers):
    if workers is None:
        return max(1, int(os.environ.get("BANDITLAB_THREADS", "1")))
    if workers < 1:
        raise ValueError("workers must be positive")
    return workers


def _run_jobs(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


def _chunks(n, size):
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]


@dataclass(frozen=True)
class SweepConfig:
    """Grid sweep of single-episode expected regret under a prior."""

    n_arms: int = 5
    horizon: int = 1000
    prior: PriorSpec = PriorSpec("uniform")
    algo: str = "ucb"
    m: int | None = None
    init: int = 0
    grid_size: int = 21
    iters: int = 1000
    seed: int = 0
    workers: int | None = None

    def __post_init__(self):
        if self.algo not in ("ucb", "moss", "subucb"):
            raise ValueError("sweep over ucb, moss or subucb")
        if not self.prior.stationary:
            raise ValueError("sweeps need a stationary prior")
        if self.iters < 1:
            raise ValueError("iters must be positive")


def _sweep_job(args):
    cfg, g, gamma, lo, hi = args
    out = np.empty(hi - lo, np.float64)
    sub = SubPolicyConfig(algo=cfg.algo, gamma=gamma, m=cfg.m, init=cfg.init)
    for i, rep in enumerate(range(lo, hi)):
        rng = sweep_stream(cfg.seed, g, rep)
        task = sample_task(cfg.prior, cfg.n_arms, rng)
        out[i] = run_episode(sub, task, cfg.horizon, None, rng).pseudo_regret
    return out


def bayes_regret_sweep(cfg):
    """Rows (gamma, algo, K, T, iters, mean_regret, stderr) per grid point."""
    grid = GammaGrid.explicit(cfg.grid_size)
    workers = resolve_workers(cfg.workers)
    jobs = [(cfg, g, gamma, lo, hi)
            for g, gamma in enumerate(grid.points)
            for lo, hi in _chunks(cfg.iters, 256)]
    parts = _run_jobs(_sweep_job, jobs, workers)
    rows = []
    pos = 0
    per_point = len(_chunks(cfg.iters, 256))
    for g, gamma in enumerate(grid.points):
        regrets = np.concatenate(parts[pos:pos + per_point])
        pos += per_point
        mean, se = aggregate(regrets)
        rows.append((gamma, cfg.algo, cfg.n_arms, cfg.horizon, cfg.iters,
                     mean, se))
    return rows


@dataclass(frozen=True)
class LifelongConfig:
    """A sequence of episodes sharing one tuned policy."""

    n_arms: int = 10
    horizon: int = 1000
    n_episodes: int = 2000
    prior: PriorSpec = PriorSpec("uniform")
    meta: str = "greedy"
    grid: str | int = "sqrt"
    omega: float = 0.9975
    tau: int = 200
    forced_init: float = 1.0
    init: int = 0
    oracle_iters: int = 1000
    iters: int = 20
    seed: int = 0
    workers: int | None = None
    reward_kind: str = "bernoulli"
    reward_sd: float = 1.0

    def __post_init__(self):
        if self.meta not in META_KINDS:
            raise ValueError(f"unknown meta policy {self.meta!r}")
        if self.n_episodes < 1:
            raise ValueError("need at least one episode")
        if self.iters < 1:
            raise ValueError("iters must be positive")
        if self.meta == "restart-oracle" and self.prior.kind != "abrupt":
            raise ValueError("restart points are only defined for the abrupt schedule")
        if self.meta == "oracle" and not self.prior.stationary:
            raise ValueError("oracle tuning needs a stationary prior")


def build_grid(grid, n_episodes):
    """Grid from a rule name ("sqrt", "cuberoot") or an explicit size."""
    if grid == "sqrt":
        return GammaGrid.sqrt_rule(n_episodes)
    if grid == "cuberoot":
        return GammaGrid.cube_root_rule(n_episodes)
    return GammaGrid.explicit(int(grid))


def restart_episodes(n_episodes):
    """Last episode of each abrupt-schedule segment except the final one."""
    return frozenset((math.floor(n_episodes / 3),
                      math.ceil(2 * n_episodes / 3) - 1))


def _make_meta(cfg, grid, oracle_idx):
    if cfg.meta == "greedy":
        return GreedyMeta(grid)
    if cfg.meta == "dgreedy":
        return DGreedyMeta(grid, cfg.omega, cfg.forced_init)
    if cfg.meta == "swgreedy":
        return SWGreedyMeta(grid, cfg.tau)
    if cfg.meta == "ts":
        return TSMeta(grid)
    if cfg.meta == "oracle":
        return OracleMeta(grid, oracle_idx)
    return RestartOracleMeta(grid, restart_episodes(cfg.n_episodes))


def lifelong_rep(cfg, grid, oracle_idx, rep):
    """One replication: the running cumulative pseudo-regret curve."""
    rng = replication_stream(cfg.seed, rep)
    meta = _make_meta(cfg, grid, oracle_idx)
    history = History(track_median=(cfg.init == 3)) if cfg.init in (2, 3) else None
    curve = np.empty(cfg.n_episodes, np.float64)
    total = 0.0
    for j in range(1, cfg.n_episodes + 1):
        rng.jump(j * EPISODE_STRIDE)
        idx = meta.select(rng)
        task = sample_task(cfg.prior, cfg.n_arms, rng, j, cfg.n_episodes)
        sub = SubPolicyConfig(algo="ucb", gamma=grid.points[idx], init=cfg.init,
                              reward_kind=cfg.reward_kind,
                              reward_sd=cfg.reward_sd)
        res = run_episode(sub, task, cfg.horizon, history, rng)
        raw = res.cum_reward / cfg.horizon
        clamped = min(1.0, max(0.0, raw))
        if clamped != raw:
            warnings.warn(f"episode reward {raw:g} clamped to [0, 1] "
                          "for the meta update")
        meta.update(idx, clamped, rng)
        if history is not None:
            history.extend(res.rewards)
        total += res.pseudo_regret
        curve[j - 1] = total
    return curve


def _lifelong_job(args):
    cfg, grid, oracle_idx, lo, hi = args
    return np.stack([lifelong_rep(cfg, grid, oracle_idx, rep)
                     for rep in range(lo, hi)])


@dataclass(frozen=True)
class CurveSummary:
    """Aggregated curve: x positions, mean, stderr, replication count."""

    x: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    n: int

    @property
    def final_mean(self):
        return float(self.mean[-1])

    @property
    def final_stderr(self):
        return float(self.stderr[-1])


def _summarize(curves, x):
    stack = np.concatenate(curves, axis=0)
    n = stack.shape[0]
    mean = stack.mean(axis=0)
    if n == 1:
        se = np.zeros_like(mean)
    else:
        se = stack.std(axis=0, ddof=1) / math.sqrt(n)
    return CurveSummary(x=x, mean=mean, stderr=se, n=n)


def run_lifelong(cfg):
    """Aggregated lifelong regret curve over episodes 1..n_episodes."""
    grid = build_grid(cfg.grid, cfg.n_episodes)
    oracle_idx = None
    if cfg.meta == "oracle":
        oracle_idx, _ = oracle_gamma(cfg.prior, cfg.n_arms, cfg.horizon,
                                     grid, cfg.oracle_iters, cfg.seed,
                                     init=cfg.init)
    workers = resolve_workers(cfg.workers)
    jobs = [(cfg, grid, oracle_idx, lo, hi) for lo, hi in _chunks(cfg.iters, 1)]
    curves = _run_jobs(_lifelong_job, jobs, workers)
    x = np.arange(1, cfg.n_episodes + 1, dtype=np.int64)
    return _summarize(curves, x)


@dataclass(frozen=True)
class MortalRunConfig:
    scenario: MortalScenario = MortalScenario()
    agent: MortalAgentConfig = MortalAgentConfig()
    iters: int = 20
    seed: int = 0
    workers: int | None = None

    def __post_init__(self):
        if self.iters < 1:
            raise ValueError("iters must be positive")


def _mortal_job(args):
    cfg, lo, hi = args
    return np.stack([run_mortal(cfg.agent, cfg.scenario, cfg.seed, rep)
                     for rep in range(lo, hi)])


def run_mortal_experiment(cfg):
    """Aggregated cumulative regret curve over steps 1..horizon."""
    workers = resolve_workers(cfg.workers)
    jobs = [(cfg, lo, hi) for lo, hi in _chunks(cfg.iters, 1)]
    curves = _run_jobs(_mortal_job, jobs, workers)
    x = np.arange(1, cfg.scenario.horizon + 1, dtype=np.int64)
    return _summarize(curves, x)


def _fmt(x):
    return format(float(x), ".6g")


def subsample_indices(n, cap=CURVE_POINT_CAP):
    """At most cap indices into range(n), always keeping 0 and n-1."""
    if n <= cap:
        return np.arange(n)
    return np.unique(np.round(np.linspace(0, n - 1, cap)).astype(np.int64))


def write_sweep_csv(path, rows):
    with open(path, "w", newline="\n") as f:
        f.write("gamma,algo,K,T,iters,mean_regret,stderr\n")
        for gamma, algo, k, t, iters, mean, se in rows:
            f.write(f"{_fmt(gamma)},{algo},{k},{t},{iters},"
                    f"{_fmt(mean)},{_fmt(se)}\n")


def write_curve_csv(path, summary):
    with open(path, "w", newline="\n") as f:
        f.write("episode,mean_lifelong_regret,stderr,n\n")
        for i in subsample_indices(len(summary.x)):
            f.write(f"{summary.x[i]},{_fmt(summary.mean[i])},"
                    f"{_fmt(summary.stderr[i])},{summary.n}\n")


def write_mortal_csv(path, summary, agent):
    with open(path, "w", newline="\n") as f:
        f.write("t,mean_regret,stderr,n,agent\n")
        for i in subsample_indices(len(summary.x)):
            f.write(f"{summary.x[i]},{_fmt(summary.mean[i])},"
                    f"{_fmt(summary.stderr[i])},{summary.n},{agent}\n")
