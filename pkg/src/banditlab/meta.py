"""Tuning the exploration weight across episodes.

A meta policy treats each grid point gamma as an arm of its own bandit:
select one point per episode, play the whole episode with it, then feed
back the episode's normalized reward.
"""

import math
from dataclasses import dataclass

import numpy as np

from .env import sample_task
from .episodes import run_episode
from .policies import SubPolicyConfig
from .rng import oracle_stream


def round_half_up(x):
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class GammaGrid:
    """Equally spaced candidate gammas spanning [0, 1]."""

    points: tuple

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("grid needs at least two points")
        if list(self.points) != sorted(self.points):
            raise ValueError("grid points must be ascending")
        if not all(0.0 <= p <= 1.0 for p in self.points):
            raise ValueError("grid points must lie in [0, 1]")

    def __len__(self):
        return len(self.points)

    @classmethod
    def explicit(cls, n):
        if n < 2:
            raise ValueError("grid needs at least two points")
        return cls(tuple(i / (n - 1) for i in range(n)))

    @classmethod
    def sqrt_rule(cls, n_episodes):
        """round(sqrt(J)) points, at least 2."""
        n = max(2, round_half_up(math.sqrt(n_episodes)))
        return cls.explicit(n)

    @classmethod
    def cube_root_rule(cls, n_episodes):
        """round((J/ln J)^(1/3)) points, at least 2."""
        if n_episodes < 2:
            return cls.explicit(2)
        n = max(2, round_half_up((n_episodes / math.log(n_episodes)) ** (1.0 / 3.0)))
        return cls.explicit(n)

    def nearest(self, value):
        """Index of the closest point; ties go to the lower index."""
        best, dist = 0, abs(self.points[0] - value)
        for i in range(1, len(self.points)):
            d = abs(self.points[i] - value)
            if d < dist:
                best, dist = i, d
        return best


class GreedyMeta:
    """Play each point once (lowest index first), then the best mean.

    Argmax ties go to the lowest index, so behavior is deterministic
    given the reward sequence.
    """

    def __init__(self, grid):
        self.grid = grid
        self.plays = [0] * len(grid)
        self.totals = [0.0] * len(grid)

    def select(self, rng):
        for i, p in enumerate(self.plays):
            if p == 0:
                return i
        best, best_mean = 0, -math.inf
        for i in range(len(self.plays)):
            mean = self.totals[i] / self.plays[i]
            if mean > best_mean:
                best, best_mean = i, mean
        return best

    def update(self, index, reward, rng):
        self.plays[index] += 1
        self.totals[index] += reward


class DGreedyMeta:
    """Greedy on exponentially discounted stats.

    Every update decays all points by omega before crediting the played
    one, so an untouched point's effective play count drifts down and
    eventually re-triggers the forced initialization sweep. That churn
    is the cost of being able to forget.
    """

    def __init__(self, grid, omega, forced_init=1.0):
        if not 0.0 < omega <= 1.0:
            raise ValueError("omega must lie in (0, 1]")
        self.grid = grid
        self.omega = omega
        self.forced_init = forced_init
        self.plays = [0.0] * len(grid)
        self.totals = [0.0] * len(grid)

    def select(self, rng):
        for i, p in enumerate(self.plays):
            if p < self.forced_init:
                return i
        best, best_mean = 0, -math.inf
        for i in range(len(self.plays)):
            mean = self.totals[i] / self.plays[i]
            if mean > best_mean:
                best, best_mean = i, mean
        return best

    def update(self, index, reward, rng):
        for i in range(len(self.plays)):
            self.plays[i] *= self.omega
            self.totals[i] *= self.omega
        self.plays[index] += 1.0
        self.totals[index] += reward


class SWGreedyMeta:
    """Greedy over a sliding window of the last tau episodes."""

    def __init__(self, grid, tau):
        if tau < 1:
            raise ValueError("window must be positive")
        self.grid = grid
        self.tau = tau
        self._entries = []  # (episode, index, reward), episode ascending
        self._episode = 0  # completed episodes

    def select(self, rng):
        # keep the last tau completed episodes: evict e <= completed - tau
        cutoff = self._episode - self.tau
        while self._entries and self._entries[0][0] <= cutoff:
            self._entries.pop(0)
        n = len(self.grid)
        plays = [0] * n
        totals = [0.0] * n
        for _, i, r in self._entries:
            plays[i] += 1
            totals[i] += r
        for i in range(n):
            if plays[i] == 0:
                return i
        best, best_mean = 0, -math.inf
        for i in range(n):
            mean = totals[i] / plays[i]
            if mean > best_mean:
                best, best_mean = i, mean
        return best

    def update(self, index, reward, rng):
        self._episode += 1
        self._entries.append((self._episode, index, reward))


class TSMeta:
    """Thompson sampling on binarized episode rewards.

    Selection draws one Beta(1+s, 1+f) sample per point in index order;
    the update draws one Bernoulli with the normalized reward as its
    parameter and credits a success or failure.
    """

    def __init__(self, grid):
        self.grid = grid
        self.succ = [0] * len(grid)
        self.fail = [0] * len(grid)

    def select(self, rng):
        best, best_v = 0, -math.inf
        for i in range(len(self.grid)):
            v = rng.beta(1.0 + self.succ[i], 1.0 + self.fail[i])
            if v > best_v:
                best, best_v = i, v
        return best

    def update(self, index, reward, rng):
        if rng.bernoulli(reward):
            self.succ[index] += 1
        else:
            self.fail[index] += 1


class OracleMeta:
    """Always plays one fixed grid point."""

    def __init__(self, grid, index):
        if not 0 <= index < len(grid):
            raise ValueError("oracle index outside the grid")
        self.grid = grid
        self.index = index

    def select(self, rng):
        return self.index

    def update(self, index, reward, rng):
        pass


class RestartOracleMeta(GreedyMeta):
    """Greedy that is told when the world changes.

    Stats are wiped right after the update of each episode listed in
    restart_episodes, so the next selection starts from scratch.
    """

    def __init__(self, grid, restart_episodes):
        super().__init__(grid)
        self.restart_episodes = frozenset(int(j) for j in restart_episodes)
        self._episode = 0

    def update(self, index, reward, rng):
        super().update(index, reward, rng)
        self._episode += 1
        if self._episode in self.restart_episodes:
            self.plays = [0] * len(self.grid)
            self.totals = [0.0] * len(self.grid)


def oracle_gamma(prior, n_arms, horizon, grid, iters, seed, init=0):
    """Brute-force the best grid point for a stationary prior.

    Estimates the expected single-episode pseudo-regret of every point
    with `iters` fresh tasks each (own stream lane, independent of the
    experiment streams) and returns (best index, estimates). Ties go to
    the lower index.
    """
    if not prior.stationary:
        raise ValueError("oracle tuning needs a stationary prior")
    if iters < 1:
        raise ValueError("iters must be positive")
    estimates = np.empty(len(grid), np.float64)
    for g, gamma in enumerate(grid.points):
        cfg = SubPolicyConfig(algo="ucb", gamma=gamma, init=init)
        total = 0.0
        for rep in range(iters):
            rng = oracle_stream(seed, g, rep)
            task = sample_task(prior, n_arms, rng)
            res = run_episode(cfg, task, horizon, None, rng)
            total += res.pseudo_regret
        estimates[g] = total / iters
    return int(np.argmin(estimates)), estimates
