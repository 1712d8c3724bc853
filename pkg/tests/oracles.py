"""Independent reference computations used by the tests."""

from fractions import Fraction


def enumerate_greedy_regret(probs, horizon):
    """Exact expected pseudo-regret of the greedy rule with empty stats.

    Walks the full tree over uniform tie-breaks and reward outcomes in
    rational arithmetic. Unpulled arms rank above everything, ties are
    uniform, rewards are Bernoulli.
    """
    probs = [Fraction(p).limit_denominator(10 ** 9) for p in probs]
    best = max(probs)

    def step(counts, sums, t, prob, regret):
        if t == horizon:
            return prob * regret
        unpulled = [k for k in range(len(probs)) if counts[k] == 0]
        if unpulled:
            ties = unpulled
        else:
            means = [Fraction(sums[k], counts[k]) for k in range(len(probs))]
            mx = max(means)
            ties = [k for k in range(len(probs)) if means[k] == mx]
        total = Fraction(0)
        psel = Fraction(1, len(ties))
        for k in ties:
            for r, pr in ((1, probs[k]), (0, 1 - probs[k])):
                if pr == 0:
                    continue
                c2, s2 = list(counts), list(sums)
                c2[k] += 1
                s2[k] += r
                total += step(tuple(c2), tuple(s2), t + 1, prob * psel * pr,
                              regret + (best - probs[k]))
        return total

    n = len(probs)
    return step((0,) * n, (0,) * n, 0, Fraction(1), Fraction(0))
