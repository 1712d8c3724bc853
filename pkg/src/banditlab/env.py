"""Task distributions and reward models."""

import math
from dataclasses import dataclass

import numpy as np

from .kernels import sample_means_kernel


@dataclass(frozen=True)
class RewardModel:
    """Per-arm observation model. Bernoulli ignores sd."""

    kind: str = "bernoulli"
    mean: float = 0.5
    sd: float = 1.0

    def __post_init__(self):
        if self.kind not in ("bernoulli", "gaussian"):
            raise ValueError(f"unknown reward kind {self.kind!r}")
        if self.kind == "bernoulli" and not 0.0 <= self.mean <= 1.0:
            raise ValueError("bernoulli mean must lie in [0, 1]")
        if self.sd < 0.0:
            raise ValueError("sd must be nonnegative")


@dataclass(frozen=True)
class PriorSpec:
    """Distribution the arm means of a fresh task are drawn from.

    kind "uniform" and "beta" are stationary. "abrupt" and "slow" are
    episode-indexed beta schedules over a horizon of episodes and need
    to be asked for their parameters at a concrete episode j.
    """

    kind: str
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if self.kind not in ("uniform", "beta", "abrupt", "slow"):
            raise ValueError(f"unknown prior kind {self.kind!r}")
        if self.kind == "beta" and (self.a <= 0.0 or self.b <= 0.0):
            raise ValueError("beta parameters must be positive")

    @property
    def stationary(self):
        return self.kind in ("uniform", "beta")


def schedule_params(spec, j, n_episodes):
    """Beta parameters in force at episode j (1-based) of n_episodes.

    Abrupt: (1, 3) on the first and last thirds, (3, 1) in between.
    Slow: (2 + cos(2*pi*j/J + pi), 2 + cos(2*pi*j/J)), a full period
    over the horizon with both parameters staying in [1, 3].
    """
    if not 1 <= j <= n_episodes:
        raise ValueError("episode index out of range")
    if spec.kind == "abrupt":
        lo = math.floor(n_episodes / 3)
        hi = math.ceil(2 * n_episodes / 3)
        if j <= lo or j >= hi:
            return 1.0, 3.0
        return 3.0, 1.0
    if spec.kind == "slow":
        ang = 2.0 * math.pi * j / n_episodes
        return 2.0 + math.cos(ang + math.pi), 2.0 + math.cos(ang)
    if spec.kind == "beta":
        return spec.a, spec.b
    raise ValueError("uniform prior has no beta parameters")


@dataclass(frozen=True)
class TaskInstance:
    """A sampled bandit task: fixed arm means for one episode."""

    means: np.ndarray
    best_mean: float

    def __post_init__(self):
        if self.means.ndim != 1 or self.means.shape[0] < 1:
            raise ValueError("means must be a nonempty 1-d array")


def sample_task(spec, n_arms, rng, j=1, n_episodes=1):
    """Draw one task from the prior in force at episode j.

    Consumes draws in arm order from the caller's stream. For a
    stationary prior j is irrelevant.
    """
    if n_arms < 1:
        raise ValueError("need at least one arm")
    means = np.empty(n_arms, np.float64)
    if spec.kind == "uniform":
        kind, a, b = 0, 0.0, 0.0
    else:
        a, b = schedule_params(spec, j, n_episodes)
        kind = 1
    rng.ctr = int(sample_means_kernel(kind, a, b, means, rng.key, rng.ctr))
    return TaskInstance(means=means, best_mean=float(means.max()))


def sample_reward(model, rng):
    """One observation from a reward model."""
    if model.kind == "bernoulli":
        return float(rng.bernoulli(model.mean))
    return model.mean + model.sd * rng.normal()


def parse_prior(text):
    """Prior from CLI text: uniform | beta:a,b | abrupt | slow."""
    if text == "uniform":
        return PriorSpec("uniform")
    if text == "abrupt":
        return PriorSpec("abrupt")
    if text == "slow":
        return PriorSpec("slow")
    if text.startswith("beta:"):
        parts = text[5:].split(",")
        if len(parts) != 2:
            raise ValueError("beta prior wants two parameters, beta:a,b")
        return PriorSpec("beta", a=float(parts[0]), b=float(parts[1]))
    raise ValueError(f"unknown prior {text!r}")
