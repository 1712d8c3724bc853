"""Counter-based random numbers.

Every variate is a pure function of (key, counter), so any draw can be
reproduced in isolation and parallel workers never share mutable state.
The generator is a splitmix-style mixer: u64_at(key, c) hashes
key + c * GOLDEN through two xor-multiply rounds.

Stream layout
-------------
A run derives one stream key per (master seed, stream id). Stream ids:

    lifelong replication r        r
    sweep, grid point g, rep r    (1 << 48) | (g << 32) | r
    oracle tuning, point g, rep r (2 << 48) | (g << 32) | r
    mortal, agent a, rep r        (3 << 48) | (a << 32) | r

Within a lifelong stream, episode j (1-based) owns the counter block
starting at j * EPISODE_STRIDE; block 0 is reserved for setup draws.
Inside an episode the draw order is fixed: meta selection draws, then
task sampling, then arm subsetting, then per step an optional tie-break
draw (only when two or more indexes tie exactly) followed by one reward
draw, then meta update draws. Sweep, oracle and mortal streams consume
counters sequentially from 0.
"""

import math

from .backend import MASK64, U64, as_key, jit_kernel

GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

EPISODE_STRIDE = 1 << 20

LANE_SWEEP = 1 << 48
LANE_ORACLE = 2 << 48
LANE_MORTAL = 3 << 48


def _mix64_src(z):
    z = (z ^ (z >> 30)) * MIX1 & MASK64
    z = (z ^ (z >> 27)) * MIX2 & MASK64
    return z ^ (z >> 31)


mix64 = jit_kernel(_mix64_src)


def _u64_at_src(key, ctr):
    return mix64((key + U64(ctr) * GOLDEN) & MASK64)


u64_at = jit_kernel(_u64_at_src)


def _double_at_src(key, ctr):
    # top 53 bits, offset half a ulp: strictly inside (0, 1)
    return ((u64_at(key, ctr) >> 11) + 0.5) * (2.0 ** -53)


double_at = jit_kernel(_double_at_src)


# Acklam's inverse normal CDF approximation, |rel err| < 1.2e-9.
# Evaluated the same way in both backends so gaussian streams stay
# bit-identical across platforms; no library ppf involved.
def _norm_ppf_src(p):
    if p <= 0.02425:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((-7.784894002430293e-03 * q - 3.223964580411365e-01) * q
                   - 2.400758277161838e+00) * q - 2.549732539343734e+00) * q
                 + 4.374664141464968e+00) * q + 2.938163982698783e+00) / \
            ((((7.784695709041462e-03 * q + 3.224671290700398e-01) * q
               + 2.445134137142996e+00) * q + 3.754408661907416e+00) * q + 1.0)
    if p >= 1.0 - 0.02425:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        return -(((((-7.784894002430293e-03 * q - 3.223964580411365e-01) * q
                    - 2.400758277161838e+00) * q - 2.549732539343734e+00) * q
                  + 4.374664141464968e+00) * q + 2.938163982698783e+00) / \
            ((((7.784695709041462e-03 * q + 3.224671290700398e-01) * q
               + 2.445134137142996e+00) * q + 3.754408661907416e+00) * q + 1.0)
    q = p - 0.5
    r = q * q
    return (((((-3.969683028665376e+01 * r + 2.209460984245205e+02) * r
               - 2.759285104469687e+02) * r + 1.383577518672690e+02) * r
             - 3.066479806614716e+01) * r + 2.506628277459239e+00) * q / \
        (((((-5.447609879822406e+01 * r + 1.615858368580409e+02) * r
            - 1.556989798598866e+02) * r + 6.680131188771972e+01) * r
          - 1.328068155288572e+01) * r + 1.0)


norm_ppf = jit_kernel(_norm_ppf_src)


def _normal_at_src(key, ctr):
    return norm_ppf(double_at(key, ctr))


normal_at = jit_kernel(_normal_at_src)


def _gamma_boosted_src(key, ctr, shape):
    # Marsaglia-Tsang squeeze, valid for shape >= 1, unit scale
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = normal_at(key, ctr)
        ctr += 1
        t = 1.0 + c * x
        if t <= 0.0:
            continue
        v = t * t * t
        u = double_at(key, ctr)
        ctr += 1
        if u < 1.0 - 0.0331 * x * x * x * x:
            return d * v, ctr
        if math.log(u) < 0.5 * x * x + d * (1.0 - v + math.log(v)):
            return d * v, ctr


_gamma_boosted = jit_kernel(_gamma_boosted_src)


def _gamma_at_src(key, ctr, shape):
    """Gamma(shape, 1) draw. Returns (value, next counter)."""
    if shape >= 1.0:
        return _gamma_boosted(key, ctr, shape)
    v, ctr = _gamma_boosted(key, ctr, shape + 1.0)
    u = double_at(key, ctr)
    ctr += 1
    return v * u ** (1.0 / shape), ctr


gamma_at = jit_kernel(_gamma_at_src)


def _beta_at_src(key, ctr, a, b):
    ga, ctr = gamma_at(key, ctr, a)
    gb, ctr = gamma_at(key, ctr, b)
    return ga / (ga + gb), ctr


beta_at = jit_kernel(_beta_at_src)


def _geometric_at_src(key, ctr, mean):
    """Support {1, 2, ...} with success probability 1/mean."""
    p = 1.0 / mean
    if p >= 1.0:
        return 1, ctr
    u = double_at(key, ctr)
    ctr += 1
    n = int(math.ceil(math.log(u) / math.log1p(-p)))
    if n < 1:
        n = 1
    return n, ctr


geometric_at = jit_kernel(_geometric_at_src)


def _below_at_src(key, ctr, n):
    # uniform integer in [0, n)
    i = int(double_at(key, ctr) * n)
    if i >= n:
        i = n - 1
    return i


below_at = jit_kernel(_below_at_src)


def derive_key(seed, stream_id):
    """Stream key for (seed, stream_id). Plain-int path, identical in
    both backends; kernels receive the key ready-made."""
    z = _mix64_src(seed & MASK64)
    z = (z + (stream_id & MASK64) * GOLDEN) & MASK64
    return _mix64_src(z)


class RngStream:
    """One addressable stream: a derived key plus a draw counter."""

    __slots__ = ("key", "ctr")

    def __init__(self, seed, stream_id):
        self.key = as_key(derive_key(seed, stream_id))
        self.ctr = 0

    def jump(self, offset):
        """Park the counter at an absolute offset (episode blocks)."""
        self.ctr = int(offset)

    def u64(self):
        v = int(u64_at(self.key, self.ctr))
        self.ctr += 1
        return v

    def double(self):
        v = float(double_at(self.key, self.ctr))
        self.ctr += 1
        return v

    def normal(self):
        v = float(normal_at(self.key, self.ctr))
        self.ctr += 1
        return v

    def bernoulli(self, p):
        return 1 if self.double() < p else 0

    def gamma(self, shape):
        v, ctr = gamma_at(self.key, self.ctr, float(shape))
        self.ctr = int(ctr)
        return float(v)

    def beta(self, a, b):
        v, ctr = beta_at(self.key, self.ctr, float(a), float(b))
        self.ctr = int(ctr)
        return float(v)

    def geometric(self, mean):
        v, ctr = geometric_at(self.key, self.ctr, float(mean))
        self.ctr = int(ctr)
        return int(v)

    def below(self, n):
        v = int(below_at(self.key, self.ctr, n))
        self.ctr += 1
        return v


def replication_stream(seed, rep):
    return RngStream(seed, rep)


def sweep_stream(seed, point, rep):
    return RngStream(seed, LANE_SWEEP | (point << 32) | rep)


def oracle_stream(seed, point, rep):
    return RngStream(seed, LANE_ORACLE | (point << 32) | rep)


def mortal_stream(seed, agent, rep):
    return RngStream(seed, LANE_MORTAL | (agent << 32) | rep)
