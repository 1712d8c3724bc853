"""Single-episode execution on top of the compiled kernel."""

import heapq
from dataclasses import dataclass

import numpy as np

from .kernels import episode_kernel, subset_kernel


class History:
    """Running statistics over all rewards seen in past episodes.

    Mean is always available. The median tracker (a two-heap running
    median) is optional because it costs log time per reward and only
    one init mode wants it.
    """

    def __init__(self, track_median=False):
        self.count = 0
        self.total = 0.0
        self.track_median = track_median
        self._lo = []  # max-heap via negation, lower half
        self._hi = []  # min-heap, upper half

    def add(self, x):
        x = float(x)
        self.count += 1
        self.total += x
        if not self.track_median:
            return
        if self._lo and x > -self._lo[0]:
            heapq.heappush(self._hi, x)
        else:
            heapq.heappush(self._lo, -x)
        if len(self._lo) > len(self._hi) + 1:
            heapq.heappush(self._hi, -heapq.heappop(self._lo))
        elif len(self._hi) > len(self._lo):
            heapq.heappush(self._lo, -heapq.heappop(self._hi))

    def extend(self, xs):
        for x in xs:
            self.add(x)

    @property
    def mean(self):
        if self.count == 0:
            raise ValueError("mean of empty history")
        return self.total / self.count

    def median(self):
        if not self.track_median:
            raise ValueError("median tracking is off")
        if self.count == 0:
            raise ValueError("median of empty history")
        if len(self._lo) > len(self._hi):
            return -self._lo[0]
        return (-self._lo[0] + self._hi[0]) / 2.0


def init_episode(config, n_arms, history):
    """Seed per-arm stats for a fresh episode.

    Modes 2 and 3 place one virtual observation per arm at the mean or
    median of the history; with no history they degrade to mode 0.
    Returns (counts, sums) arrays the kernel mutates in place.
    """
    counts = np.zeros(n_arms, np.int64)
    sums = np.zeros(n_arms, np.float64)
    mode = config.init
    if mode in (2, 3) and (history is None or history.count == 0):
        mode = 0
    if mode == 1:
        counts[:] = 1
    elif mode == 2:
        counts[:] = 1
        sums[:] = history.mean
    elif mode == 3:
        counts[:] = 1
        sums[:] = history.median()
    return counts, sums


@dataclass
class EpisodeResult:
    """Outcome of one episode.

    pulls counts real pulls only; virtual seeds show up in means_hat
    (arms never pulled and never seeded report 0.0). rewards holds the
    realized per-step rewards in order.
    """

    cum_reward: float
    pseudo_regret: float
    pulls: np.ndarray
    means_hat: np.ndarray
    rewards: np.ndarray


def run_episode(config, task, horizon, history, rng):
    """Play one task for `horizon` steps and report the outcome.

    Consumes stream draws in a fixed order: subset draws first when the
    policy plays a subset, then per step an optional tie-break draw and
    one reward draw.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    n_arms = task.means.shape[0]
    if config.algo == "moss" and horizon < n_arms:
        raise ValueError("the horizon-normalized index needs horizon >= n_arms")
    counts, sums = init_episode(config, n_arms, history)
    init_counts = counts.copy()
    if config.algo == "subucb":
        m = config.m
        if m > n_arms:
            raise ValueError("subset size m exceeds the number of arms")
        perm = np.empty(n_arms, np.int64)
        rng.ctr = int(subset_kernel(m, n_arms, perm, rng.key, rng.ctr))
        eligible = perm[:m].copy()
    else:
        eligible = np.arange(n_arms, dtype=np.int64)
    if counts.sum() == 0 and horizon < eligible.shape[0]:
        raise ValueError("empty-start episodes need horizon >= playable arms")
    rule = 1 if config.algo == "moss" else 0
    delta = config.delta if config.delta is not None else 1.0 / horizon
    reward_kind = 0 if config.reward_kind == "bernoulli" else 1
    rewards = np.empty(horizon, np.float64)
    cum_reward, pseudo_regret, ctr = episode_kernel(
        task.means, counts, sums, eligible, rule, config.gamma, delta,
        horizon, n_arms, reward_kind, config.reward_sd, rewards,
        rng.key, rng.ctr)
    rng.ctr = int(ctr)
    pulls = counts - init_counts
    means_hat = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    return EpisodeResult(
        cum_reward=float(cum_reward),
        pseudo_regret=float(pseudo_regret),
        pulls=pulls,
        means_hat=means_hat,
        rewards=rewards,
    )
