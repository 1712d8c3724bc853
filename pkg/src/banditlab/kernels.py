"""Compiled simulation loops.

Everything here is written for the dual backend: the same source runs
jitted or plain depending on the environment flag. Counters travel in
and out explicitly so callers can keep their stream position.
"""

import math

import numpy as np

from .backend import jit_kernel
from .rng import below_at, beta_at, double_at, geometric_at, normal_at


def _sample_means_src(kind, a, b, means, key, ctr):
    # kind 0: uniform(0,1), kind 1: beta(a,b); one slot per arm, arm order
    for k in range(means.shape[0]):
        if kind == 0:
            means[k] = double_at(key, ctr)
            ctr += 1
        else:
            v, ctr = beta_at(key, ctr, a, b)
            means[k] = v
    return ctr


sample_means_kernel = jit_kernel(_sample_means_src)


def _subset_src(m, n, perm, key, ctr):
    # partial Fisher-Yates; first m slots of perm end up a uniform
    # m-subset of range(n), one draw per slot
    for i in range(n):
        perm[i] = i
    for i in range(m):
        j = i + below_at(key, ctr, n - i)
        ctr += 1
        t = perm[i]
        perm[i] = perm[j]
        perm[j] = t
    return ctr


subset_kernel = jit_kernel(_subset_src)


def _episode_src(means, counts, sums, eligible, rule, gamma, delta, T,
                 k_index, reward_kind, sd, rewards_out, key, ctr):
    """One episode over the eligible arms.

    rule 0 is the confidence-radius index mu + gamma*sqrt(2*ln(1/delta)/n),
    rule 1 the horizon-normalized one mu + gamma*sqrt(max(0, ln(T/(k_index*n)))/n).
    Unpulled arms carry an infinite index. Exact index ties are broken
    uniformly with a single draw; each step then consumes one reward draw.
    Returns (cum_reward, pseudo_regret, next counter).
    """
    n_el = eligible.shape[0]
    best = means[0]
    for k in range(1, means.shape[0]):
        if means[k] > best:
            best = means[k]
    c_ucb = gamma * math.sqrt(2.0 * math.log(1.0 / delta))
    idx = np.empty(n_el, np.float64)
    for e in range(n_el):
        a = eligible[e]
        n = counts[a]
        if n == 0:
            idx[e] = math.inf
        else:
            mu = sums[a] / n
            if rule == 0:
                idx[e] = mu + c_ucb / math.sqrt(n)
            else:
                idx[e] = mu + gamma * math.sqrt(
                    max(0.0, math.log(T / (k_index * n))) / n)
    cum_reward = 0.0
    regret = 0.0
    for t in range(T):
        mx = idx[0]
        for e in range(1, n_el):
            if idx[e] > mx:
                mx = idx[e]
        ties = 0
        for e in range(n_el):
            if idx[e] == mx:
                ties += 1
        if ties > 1:
            r = below_at(key, ctr, ties)
            ctr += 1
        else:
            r = 0
        pick = 0
        seen = 0
        for e in range(n_el):
            if idx[e] == mx:
                if seen == r:
                    pick = e
                    break
                seen += 1
        a = eligible[pick]
        if reward_kind == 0:
            u = double_at(key, ctr)
            ctr += 1
            reward = 1.0 if u < means[a] else 0.0
        else:
            reward = means[a] + sd * normal_at(key, ctr)
            ctr += 1
        counts[a] += 1
        sums[a] += reward
        n = counts[a]
        mu = sums[a] / n
        if rule == 0:
            idx[pick] = mu + c_ucb / math.sqrt(n)
        else:
            idx[pick] = mu + gamma * math.sqrt(
                max(0.0, math.log(T / (k_index * n))) / n)
        rewards_out[t] = reward
        cum_reward += reward
        regret += best - means[a]
    return cum_reward, regret, ctr


episode_kernel = jit_kernel(_episode_src)


def _mortal_span_src(means, births, lifes, counts, sums, t_start, t_stop,
                     stop_on_death, idx_kind, gamma, c, prior_kind,
                     prior_a, prior_b, life_mean, regret_out, key, ctr,
                     dead_n, dead_sum):
    """Advance a mortal world over absolute steps t_start..t_stop.

    idx_kind 0 plays the age-aware index mu + gamma*sqrt(2*ln(t-s+1)/n)
    with unpulled arms at infinity; idx_kind 1 is the adaptive-greedy
    rule: with probability min(1, c*max_mu) exploit the empirical best
    (unpulled arms count as 0), otherwise one uniform arm draw.

    Per step: selection draws, one reward draw, then replacement draws
    (mean, lifetime) in arm order for every arm whose life ends before
    t+1. Instantaneous regret lands in regret_out[t-1]. With
    stop_on_death the span ends after the first step that killed an arm.
    Returns (next_t, ctr, reward_sum, steps_done, dead_n, dead_sum).
    """
    K = means.shape[0]
    reward_sum = 0.0
    steps = 0
    t = t_start
    while t <= t_stop:
        if idx_kind == 0:
            best_idx = -math.inf
            ties = 0
            for k in range(K):
                n = counts[k]
                if n == 0:
                    v = math.inf
                else:
                    v = sums[k] / n + gamma * math.sqrt(
                        2.0 * math.log(t - births[k] + 1.0) / n)
                if v > best_idx:
                    best_idx = v
                    ties = 1
                elif v == best_idx:
                    ties += 1
            if ties > 1:
                r = below_at(key, ctr, ties)
                ctr += 1
            else:
                r = 0
            pick = 0
            seen = 0
            for k in range(K):
                n = counts[k]
                if n == 0:
                    v = math.inf
                else:
                    v = sums[k] / n + gamma * math.sqrt(
                        2.0 * math.log(t - births[k] + 1.0) / n)
                if v == best_idx:
                    if seen == r:
                        pick = k
                        break
                    seen += 1
        else:
            mx_mu = 0.0
            for k in range(K):
                mu = sums[k] / counts[k] if counts[k] > 0 else 0.0
                if mu > mx_mu:
                    mx_mu = mu
            p_greedy = c * mx_mu
            if p_greedy > 1.0:
                p_greedy = 1.0
            u = double_at(key, ctr)
            ctr += 1
            if u < p_greedy:
                best_mu = -math.inf
                ties = 0
                for k in range(K):
                    mu = sums[k] / counts[k] if counts[k] > 0 else 0.0
                    if mu > best_mu:
                        best_mu = mu
                        ties = 1
                    elif mu == best_mu:
                        ties += 1
                if ties > 1:
                    r = below_at(key, ctr, ties)
                    ctr += 1
                else:
                    r = 0
                pick = 0
                seen = 0
                for k in range(K):
                    mu = sums[k] / counts[k] if counts[k] > 0 else 0.0
                    if mu == best_mu:
                        if seen == r:
                            pick = k
                            break
                        seen += 1
            else:
                pick = below_at(key, ctr, K)
                ctr += 1
        u = double_at(key, ctr)
        ctr += 1
        reward = 1.0 if u < means[pick] else 0.0
        counts[pick] += 1
        sums[pick] += reward
        reward_sum += reward
        best_mean = means[0]
        for k in range(1, K):
            if means[k] > best_mean:
                best_mean = means[k]
        regret_out[t - 1] = best_mean - means[pick]
        steps += 1
        died = False
        for k in range(K):
            if births[k] + lifes[k] <= t + 1:
                dead_n += 1
                dead_sum += lifes[k]
                died = True
                if prior_kind == 0:
                    means[k] = double_at(key, ctr)
                    ctr += 1
                else:
                    v, ctr = beta_at(key, ctr, prior_a, prior_b)
                    means[k] = v
                life, ctr = geometric_at(key, ctr, life_mean)
                lifes[k] = life
                births[k] = t + 1
                counts[k] = 0
                sums[k] = 0.0
        t += 1
        if stop_on_death and died:
            break
    return t, ctr, reward_sum, steps, dead_n, dead_sum


mortal_span_kernel = jit_kernel(_mortal_span_src)
