"""Command line front end.

Four subcommands map onto the runner: sweep, lifelong, nonstat, mortal.
Every flag can also come from a flat "key = value" config file passed
with --config; explicit flags win over file values. Configuration
problems exit with status 2.
"""

import argparse
import sys

from .env import parse_prior
from .mortal import AGENTS, MortalAgentConfig, MortalScenario
from .runner import (META_KINDS, LifelongConfig, MortalRunConfig, SweepConfig,
                     bayes_regret_sweep, run_lifelong, run_mortal_experiment,
                     write_curve_csv, write_mortal_csv, write_sweep_csv)

# dest -> (coercion, default) per subcommand; None defaults stay None
_SCHEMAS = {
    "sweep": {
        "arms": (int, 5), "horizon": (int, 1000), "prior": (str, "uniform"),
        "algo": (str, "ucb"), "m": (int, None), "init": (int, 0),
        "grid": (int, 21), "iters": (int, 1000), "seed": (int, 0),
        "workers": (int, None), "out": (str, None),
    },
    "lifelong": {
        "arms": (int, 10), "horizon": (int, 1000), "episodes": (int, 2000),
        "prior": (str, "uniform"), "meta": (str, "greedy"),
        "grid": (str, "sqrt"), "omega": (float, 0.9975), "tau": (int, 200),
        "forced_init": (float, 1.0), "init": (int, 0),
        "oracle_iters": (int, 1000), "iters": (int, 20), "seed": (int, 0),
        "workers": (int, None), "out": (str, None),
    },
    "nonstat": {
        "arms": (int, 10), "horizon": (int, 1000), "episodes": (int, 2000),
        "prior": (str, "abrupt"), "meta": (str, "greedy"),
        "grid": (str, "cuberoot"), "omega": (float, 0.9975), "tau": (int, 200),
        "forced_init": (float, 1.0), "init": (int, 0),
        "oracle_iters": (int, 1000), "iters": (int, 20), "seed": (int, 0),
        "workers": (int, None), "out": (str, None),
    },
    "mortal": {
        "arms": (int, 5), "lifetime": (float, 200.0), "horizon": (int, 40000),
        "scenario": (str, "uniform"), "agent": (str, "plain"),
        "gamma": (float, None), "c": (float, 1.5), "grid": (int, 32),
        "iters": (int, 20), "seed": (int, 0), "workers": (int, None),
        "out": (str, None),
    },
}

_HELP = {
    "arms": "number of arms",
    "horizon": "steps per episode (absolute steps for mortal)",
    "episodes": "episodes in the lifelong run",
    "prior": "task prior: uniform, beta:a,b, abrupt or slow",
    "algo": "sweep policy: ucb, moss or subucb",
    "m": "subset size for subucb",
    "init": "stat seeding mode 0..3",
    "grid": "gamma grid: point count, or sqrt/cuberoot rule for lifelong",
    "iters": "independent replications",
    "seed": "master seed",
    "workers": "parallel worker processes",
    "out": "output CSV path",
    "meta": "tuner: " + ", ".join(META_KINDS),
    "omega": "discount for dgreedy",
    "tau": "window for swgreedy",
    "forced_init": "dgreedy forced-initialization threshold",
    "oracle_iters": "replications for oracle tuning",
    "lifetime": "mean arm lifetime",
    "scenario": "mortal mean prior: uniform or beta13",
    "agent": "mortal agent: " + ", ".join(AGENTS),
    "gamma": "exploration weight in [0, 1] for plain/oracle",
    "c": "adaptive-greedy aggressiveness",
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="banditlab",
        description="Bandit experiment runner; results land in CSV files.")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, schema in _SCHEMAS.items():
        sp = subs.add_parser(name)
        sp.add_argument("--config", help="flat key = value settings file")
        for dest, (coerce, _) in schema.items():
            flag = "--" + dest.replace("_", "-")
            sp.add_argument(flag, dest=dest, type=coerce, default=None,
                            help=_HELP.get(dest, ""))
    return parser


def _read_config_file(path, schema):
    values = {}
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as e:
        raise ValueError(f"cannot read config file: {e}") from None
    for ln, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{ln}: expected key = value")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        val = val.strip()
        if len(val) >= 2 and val[0] == val[-1] and val[0] in "\"'":
            val = val[1:-1]
        if key not in schema:
            raise ValueError(f"{path}:{ln}: unknown setting {key!r}")
        coerce = schema[key][0]
        try:
            values[key] = coerce(val)
        except ValueError:
            raise ValueError(
                f"{path}:{ln}: bad value {val!r} for {key}") from None
    return values


def _settings(args, schema):
    """File values under explicit flags under defaults."""
    merged = {}
    file_vals = _read_config_file(args.config, schema) if args.config else {}
    for dest, (_, default) in schema.items():
        cli_val = getattr(args, dest)
        if cli_val is not None:
            merged[dest] = cli_val
        elif dest in file_vals:
            merged[dest] = file_vals[dest]
        else:
            merged[dest] = default
    if merged["out"] is None:
        raise ValueError("an output path is required (--out)")
    return merged


def _run_sweep(s):
    cfg = SweepConfig(n_arms=s["arms"], horizon=s["horizon"],
                      prior=parse_prior(s["prior"]), algo=s["algo"], m=s["m"],
                      init=s["init"], grid_size=s["grid"], iters=s["iters"],
                      seed=s["seed"], workers=s["workers"])
    write_sweep_csv(s["out"], bayes_regret_sweep(cfg))


def _run_lifelong(s, nonstat):
    prior = parse_prior(s["prior"])
    if nonstat and prior.stationary:
        raise ValueError("nonstat wants an abrupt or slow prior")
    if not nonstat and not prior.stationary:
        raise ValueError("use the nonstat command for scheduled priors")
    grid = s["grid"]
    if grid not in ("sqrt", "cuberoot"):
        grid = int(grid)
    cfg = LifelongConfig(n_arms=s["arms"], horizon=s["horizon"],
                         n_episodes=s["episodes"], prior=prior,
                         meta=s["meta"], grid=grid, omega=s["omega"],
                         tau=s["tau"], forced_init=s["forced_init"],
                         init=s["init"], oracle_iters=s["oracle_iters"],
                         iters=s["iters"], seed=s["seed"],
                         workers=s["workers"])
    write_curve_csv(s["out"], run_lifelong(cfg))


def _run_mortal(s):
    scenario = MortalScenario(n_arms=s["arms"], life_mean=s["lifetime"],
                              horizon=s["horizon"], prior=s["scenario"])
    agent = MortalAgentConfig(agent=s["agent"], gamma=s["gamma"], c=s["c"],
                              grid_size=s["grid"])
    cfg = MortalRunConfig(scenario=scenario, agent=agent, iters=s["iters"],
                          seed=s["seed"], workers=s["workers"])
    write_mortal_csv(s["out"], run_mortal_experiment(cfg), s["agent"])


def main(argv=None):
    args = _build_parser().parse_args(argv)
    schema = _SCHEMAS[args.command]
    try:
        s = _settings(args, schema)
        if args.command == "sweep":
            _run_sweep(s)
        elif args.command == "lifelong":
            _run_lifelong(s, nonstat=False)
        elif args.command == "nonstat":
            _run_lifelong(s, nonstat=True)
        else:
            _run_mortal(s)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
