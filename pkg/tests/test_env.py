import math

import numpy as np
import pytest

from banditlab import rng
from banditlab.env import (PriorSpec, RewardModel, TaskInstance, parse_prior,
                           sample_reward, sample_task, schedule_params)


def test_abrupt_schedule_boundaries():
    spec = PriorSpec("abrupt")
    # J=9: change after 3 and after 5
    want = {1: (1, 3), 3: (1, 3), 4: (3, 1), 5: (3, 1), 6: (1, 3), 9: (1, 3)}
    for j, ab in want.items():
        assert schedule_params(spec, j, 9) == ab
    # J=10: floor(10/3)=3, ceil(20/3)=7
    assert schedule_params(spec, 3, 10) == (1, 3)
    assert schedule_params(spec, 4, 10) == (3, 1)
    assert schedule_params(spec, 6, 10) == (3, 1)
    assert schedule_params(spec, 7, 10) == (1, 3)


def test_slow_schedule_values():
    spec = PriorSpec("slow")
    J = 2000
    a, b = schedule_params(spec, J, J)  # full period
    assert a == pytest.approx(1.0)
    assert b == pytest.approx(3.0)
    a, b = schedule_params(spec, J // 2, J)
    assert a == pytest.approx(3.0)
    assert b == pytest.approx(1.0)
    for j in range(1, J + 1, 37):
        a, b = schedule_params(spec, j, J)
        assert 1.0 <= a <= 3.0 and 1.0 <= b <= 3.0


def test_schedule_params_validation():
    with pytest.raises(ValueError):
        schedule_params(PriorSpec("abrupt"), 0, 10)
    with pytest.raises(ValueError):
        schedule_params(PriorSpec("abrupt"), 11, 10)
    with pytest.raises(ValueError):
        schedule_params(PriorSpec("uniform"), 1, 10)
    assert schedule_params(PriorSpec("beta", a=2.0, b=7.0), 1, 10) == (2.0, 7.0)


def test_prior_spec_validation():
    with pytest.raises(ValueError):
        PriorSpec("nosuch")
    with pytest.raises(ValueError):
        PriorSpec("beta", a=0.0, b=1.0)
    assert PriorSpec("uniform").stationary
    assert not PriorSpec("slow").stationary


def test_sample_task_uniform_range_and_reproducibility():
    spec = PriorSpec("uniform")
    s1 = rng.RngStream(5, 0)
    s2 = rng.RngStream(5, 0)
    t1 = sample_task(spec, 8, s1)
    t2 = sample_task(spec, 8, s2)
    assert np.array_equal(t1.means, t2.means)
    assert t1.best_mean == t1.means.max()
    assert np.all((t1.means > 0) & (t1.means < 1))
    assert s1.ctr == 8  # one draw per arm


def test_sample_task_beta_moments():
    spec = PriorSpec("beta", a=2.0, b=5.0)
    s = rng.RngStream(6, 0)
    means = np.concatenate([sample_task(spec, 10, s).means for _ in range(2000)])
    mu = 2 / 7
    var = 2 * 5 / (7 ** 2 * 8)
    assert abs(means.mean() - mu) < 4 * math.sqrt(var / means.size)


def test_sample_task_follows_schedule():
    spec = PriorSpec("abrupt")
    s = rng.RngStream(7, 0)
    lo = np.concatenate([sample_task(spec, 10, s, j=1, n_episodes=9).means
                         for _ in range(800)])
    hi = np.concatenate([sample_task(spec, 10, s, j=4, n_episodes=9).means
                         for _ in range(800)])
    assert abs(lo.mean() - 0.25) < 0.02  # beta(1,3)
    assert abs(hi.mean() - 0.75) < 0.02  # beta(3,1)


def test_sample_task_validation():
    with pytest.raises(ValueError):
        sample_task(PriorSpec("uniform"), 0, rng.RngStream(0, 0))


def test_task_instance_validation():
    with pytest.raises(ValueError):
        TaskInstance(means=np.empty(0), best_mean=0.0)


def test_reward_model_validation_and_sampling():
    with pytest.raises(ValueError):
        RewardModel(kind="nosuch")
    with pytest.raises(ValueError):
        RewardModel(kind="bernoulli", mean=1.5)
    with pytest.raises(ValueError):
        RewardModel(kind="gaussian", sd=-1.0)
    s = rng.RngStream(8, 0)
    xs = [sample_reward(RewardModel("bernoulli", 0.3), s) for _ in range(5000)]
    assert set(xs) <= {0.0, 1.0}
    assert abs(np.mean(xs) - 0.3) < 4 * math.sqrt(0.3 * 0.7 / 5000)
    ys = np.array([sample_reward(RewardModel("gaussian", 2.0, 0.5), s)
                   for _ in range(5000)])
    assert abs(ys.mean() - 2.0) < 4 * 0.5 / math.sqrt(5000)


def test_parse_prior_forms():
    assert parse_prior("uniform").kind == "uniform"
    assert parse_prior("abrupt").kind == "abrupt"
    assert parse_prior("slow").kind == "slow"
    p = parse_prior("beta:2,5")
    assert (p.kind, p.a, p.b) == ("beta", 2.0, 5.0)
    for bad in ("nosuch", "beta:1", "beta:1,2,3"):
        with pytest.raises(ValueError):
            parse_prior(bad)
