"""Index rules and per-episode policy configuration."""

import math
from dataclasses import dataclass


@dataclass
class ArmStats:
    count: int = 0
    total: float = 0.0

    @property
    def mean(self):
        return self.total / self.count if self.count > 0 else 0.0


def ucb_index(stats, gamma, delta):
    """Optimism index mu + gamma*sqrt(2*ln(1/delta)/count).

    gamma = 0 degenerates to the greedy rule. Unpulled arms rank above
    everything.
    """
    if gamma < 0.0:
        raise ValueError("gamma must be nonnegative")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if stats.count == 0:
        return math.inf
    return stats.mean + gamma * math.sqrt(2.0 * math.log(1.0 / delta) / stats.count)


def moss_index(stats, gamma, horizon, n_arms):
    """Horizon-normalized index mu + gamma*sqrt(max(0, ln(T/(K*count)))/count)."""
    if gamma < 0.0:
        raise ValueError("gamma must be nonnegative")
    if n_arms < 1 or horizon < n_arms:
        raise ValueError("need horizon >= n_arms >= 1")
    if stats.count == 0:
        return math.inf
    n = stats.count
    return stats.mean + gamma * math.sqrt(
        max(0.0, math.log(horizon / (n_arms * n))) / n)


def select_arm(indexes, rng):
    """Argmax with exact ties broken uniformly (one draw, only on ties)."""
    mx = max(indexes)
    ties = [k for k, v in enumerate(indexes) if v == mx]
    if len(ties) == 1:
        return ties[0]
    return ties[rng.below(len(ties))]


ALGOS = ("ucb", "greedy", "moss", "subucb")
INIT_MODES = (0, 1, 2, 3)


@dataclass
class SubPolicyConfig:
    """Arm-level policy for one episode.

    algo "greedy" is the zero-gamma special case of "ucb" and pins gamma.
    "subucb" plays ucb on a uniform m-subset drawn once per episode.
    delta None means 1/T at the episode's horizon. init picks the stat
    seeding: 0 empty, 1 one virtual zero-reward pull, 2 or 3 one virtual
    pull at the mean or median of all past rewards (empty history falls
    back to 0). Virtual pulls count as observations and are never
    removed.
    """

    algo: str = "ucb"
    gamma: float = 1.0
    m: int | None = None
    init: int = 0
    delta: float | None = None
    reward_kind: str = "bernoulli"
    reward_sd: float = 1.0

    def __post_init__(self):
        if self.algo not in ALGOS:
            raise ValueError(f"unknown algo {self.algo!r}")
        if self.algo == "greedy":
            self.gamma = 0.0
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")
        if self.algo == "subucb":
            if self.m is None or self.m < 1:
                raise ValueError("subucb needs a positive subset size m")
        elif self.m is not None:
            raise ValueError("m only applies to subucb")
        if self.init not in INIT_MODES:
            raise ValueError("init mode must be one of 0, 1, 2, 3")
        if self.delta is not None and not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if self.reward_kind not in ("bernoulli", "gaussian"):
            raise ValueError(f"unknown reward kind {self.reward_kind!r}")
