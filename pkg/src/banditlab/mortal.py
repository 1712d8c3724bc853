"""Bandits whose arms die and get replaced.

The world always holds n_arms live arms. An arm born at step s with
lifetime ell is alive for steps s..s+ell-1; when the run advances to a
step past its span the arm is instantly replaced by a fresh draw from
the scenario prior with a fresh geometric lifetime. Regret at each step
is measured against the best currently alive mean.
"""

import math
from dataclasses import dataclass

import numpy as np

from .kernels import mortal_span_kernel
from .meta import GammaGrid, GreedyMeta, round_half_up
from .rng import mortal_stream

AGENTS = ("plain", "oracle", "pu", "epu", "ag")


@dataclass(frozen=True)
class MortalArm:
    mean: float
    birth: int
    lifetime: int

    def alive_at(self, t):
        return self.birth <= t < self.birth + self.lifetime


@dataclass(frozen=True)
class MortalScenario:
    """World parameters: arm count, mean lifetime, horizon, mean prior."""

    n_arms: int = 5
    life_mean: float = 200.0
    horizon: int = 40000
    prior: str = "uniform"

    def __post_init__(self):
        if self.n_arms < 1:
            raise ValueError("need at least one arm")
        if self.life_mean < 1.0:
            raise ValueError("mean lifetime must be at least 1")
        if self.horizon < 1:
            raise ValueError("horizon must be positive")
        if self.prior not in ("uniform", "beta13"):
            raise ValueError(f"unknown scenario prior {self.prior!r}")


@dataclass(frozen=True)
class MortalAgentConfig:
    """Agent selection plus its knobs.

    plain and oracle are the age-aware index at a fixed gamma (1.0 and a
    tuned value). pu re-tunes gamma every known-lifetime steps; epu does
    the same on an estimated lifetime, bootstrapping at gamma nearest
    0.5 until the first observed death. ag is adaptive greedy with
    aggressiveness c.
    """

    agent: str = "plain"
    gamma: float | None = None
    c: float = 1.5
    grid_size: int = 32

    def __post_init__(self):
        if self.agent not in AGENTS:
            raise ValueError(f"unknown agent {self.agent!r}")
        if self.gamma is not None and not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")
        if self.c <= 0.0:
            raise ValueError("c must be positive")
        if self.grid_size < 2:
            raise ValueError("grid needs at least two points")

    def fixed_gamma(self):
        if self.gamma is not None:
            return self.gamma
        return 1.0 if self.agent == "plain" else 0.25


def mortal_index(stats, gamma, t, birth):
    """mu + gamma*sqrt(2*ln(t - birth + 1)/count); unpulled arms rank first.

    With t - birth + 1 equal to a horizon T this is the same bonus as
    the delta-based index at delta = 1/T.
    """
    if gamma < 0.0:
        raise ValueError("gamma must be nonnegative")
    if t < birth:
        raise ValueError("arm not born yet")
    if stats.count == 0:
        return math.inf
    return stats.mean + gamma * math.sqrt(
        2.0 * math.log(t - birth + 1.0) / stats.count)


def estimate_L(lifetimes):
    """Mean of observed lifetimes, None when nothing died yet."""
    xs = list(lifetimes)
    if not xs:
        return None
    return sum(xs) / len(xs)


def _init_world(scenario, rng):
    """Fresh world at t=1: per arm, one mean draw then one lifetime draw."""
    K = scenario.n_arms
    means = np.empty(K, np.float64)
    births = np.ones(K, np.int64)
    lifes = np.empty(K, np.int64)
    for k in range(K):
        if scenario.prior == "uniform":
            means[k] = rng.double()
        else:
            means[k] = rng.beta(1.0, 3.0)
        lifes[k] = rng.geometric(scenario.life_mean)
    return means, births, lifes


def _prior_kind(scenario):
    return 0 if scenario.prior == "uniform" else 1


def run_mortal(config, scenario, seed, rep):
    """One replication; returns the cumulative per-step regret curve.

    The stream id encodes the agent (position in AGENTS) and the
    replication; all draws are sequential from 0: world init first, then
    the per-step draws described in the kernel.
    """
    agent_id = AGENTS.index(config.agent)
    rng = mortal_stream(seed, agent_id, rep)
    means, births, lifes = _init_world(scenario, rng)
    K = scenario.n_arms
    T = scenario.horizon
    counts = np.zeros(K, np.int64)
    sums = np.zeros(K, np.float64)
    regret = np.zeros(T, np.float64)
    pk = _prior_kind(scenario)
    L = scenario.life_mean

    def span(t_start, t_stop, idx_kind, gamma, stop_on_death, dead_n, dead_sum):
        out = mortal_span_kernel(
            means, births, lifes, counts, sums, t_start, t_stop,
            stop_on_death, idx_kind, gamma, config.c, pk, 1.0, 3.0, L,
            regret, rng.key, rng.ctr, dead_n, dead_sum)
        t_next, ctr, reward_sum, steps, dead_n, dead_sum = out
        rng.ctr = int(ctr)
        return int(t_next), float(reward_sum), int(steps), int(dead_n), float(dead_sum)

    if config.agent in ("plain", "oracle"):
        span(1, T, 0, config.fixed_gamma(), False, 0, 0.0)
    elif config.agent == "ag":
        span(1, T, 1, 0.0, False, 0, 0.0)
    elif config.agent == "pu":
        grid = GammaGrid.explicit(config.grid_size)
        meta = GreedyMeta(grid)
        block = max(1, round_half_up(L))
        t = 1
        while t <= T:
            idx = meta.select(rng)
            stop = min(t + block - 1, T)
            t, reward_sum, steps, _, _ = span(t, stop, 0, grid.points[idx],
                                              False, 0, 0.0)
            meta.update(idx, min(1.0, max(0.0, reward_sum / steps)), rng)
    else:  # epu
        grid = GammaGrid.explicit(config.grid_size)
        meta = GreedyMeta(grid)
        boot = grid.points[grid.nearest(0.5)]
        t, _, _, dead_n, dead_sum = span(1, T, 0, boot, True, 0, 0.0)
        while t <= T:
            idx = meta.select(rng)
            width = max(1, round_half_up(dead_sum / dead_n))
            stop = min(t + width - 1, T)
            t, reward_sum, steps, dead_n, dead_sum = span(
                t, stop, 0, grid.points[idx], False, dead_n, dead_sum)
            meta.update(idx, min(1.0, max(0.0, reward_sum / steps)), rng)
    return np.cumsum(regret)
