"""Lifelong bandit simulations with a tunable exploration weight."""

from .backend import NUMBA_ENABLED, backend_name
from .env import PriorSpec, RewardModel, TaskInstance, parse_prior, sample_reward, sample_task
from .episodes import EpisodeResult, History, init_episode, run_episode
from .meta import (DGreedyMeta, GammaGrid, GreedyMeta, OracleMeta,
                   RestartOracleMeta, SWGreedyMeta, TSMeta, oracle_gamma,
                   round_half_up)
from .mortal import (MortalAgentConfig, MortalArm, MortalScenario,
                     estimate_L, mortal_index, run_mortal)
from .policies import ArmStats, SubPolicyConfig, moss_index, select_arm, ucb_index
from .runner import (CurveSummary, LifelongConfig, MortalRunConfig,
                     SweepConfig, aggregate, bayes_regret_sweep, build_grid,
                     lifelong_rep, restart_episodes, run_lifelong,
                     run_mortal_experiment, theorem1_bound)

__version__ = "0.1.0"
