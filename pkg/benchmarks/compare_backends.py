"""Time the jitted kernels against the plain-Python fallback.

Runs the same canned workloads in two subprocesses, one per backend
(BANDITLAB_NUMBA=1 / 0), and prints a timing table. The first jitted
run includes compilation, so each child warms up once before timing.
Also cross-checks that both backends produce identical numbers.

Usage: python benchmarks/compare_backends.py [--quick]
"""

import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import banditlab as bl
from banditlab.env import PriorSpec

quick = sys.argv[1] == "quick"
scale = 0.2 if quick else 1.0

def sweep():
    rows = bl.bayes_regret_sweep(bl.SweepConfig(
        n_arms=20, horizon=500, grid_size=5, iters=int(200 * scale), seed=1))
    return [r[5] for r in rows]

def lifelong():
    cfg = bl.LifelongConfig(n_arms=5, horizon=500, n_episodes=int(400 * scale),
                            meta="greedy", grid="cuberoot", iters=4, seed=1,
                            workers=1)
    return [bl.run_lifelong(cfg).final_mean]

def mortal():
    cfg = bl.MortalRunConfig(scenario=bl.MortalScenario(horizon=int(20000 * scale)),
                             agent=bl.MortalAgentConfig(agent="epu"),
                             iters=4, seed=1, workers=1)
    return [bl.run_mortal_experiment(cfg).final_mean]

jobs = {"sweep": sweep, "lifelong": lifelong, "mortal": mortal}
out = {"backend": bl.backend_name(), "times": {}, "values": {}}
for name, fn in jobs.items():
    fn()  # warm-up: compilation and caches
    t0 = time.perf_counter()
    out["values"][name] = fn()
    out["times"][name] = time.perf_counter() - t0
print(json.dumps(out))
"""


def run_backend(flag, quick):
    env = dict(os.environ, BANDITLAB_NUMBA=flag)
    proc = subprocess.run(
        [sys.executable, "-c", CHILD, "quick" if quick else "full"],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    quick = "--quick" in sys.argv
    jitted = run_backend("1", quick)
    plain = run_backend("0", quick)
    print(f"backends: {jitted['backend']} vs {plain['backend']}")
    print(f"{'workload':<10} {'numba s':>9} {'python s':>9} {'speedup':>8}")
    for name, t in jitted["times"].items():
        tp = plain["times"][name]
        print(f"{name:<10} {t:>9.3f} {tp:>9.3f} {tp / t:>7.1f}x")
        if jitted["values"][name] != plain["values"][name]:
            print(f"  WARNING: {name} outputs differ between backends")
            return 1
    print("outputs identical across backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
