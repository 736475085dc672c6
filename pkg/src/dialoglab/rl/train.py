"""REINFORCE training loop against a chosen user simulator.

The schedule is batched: collect a batch of episodes, take one gradient
step, and every `eval_every` episodes freeze the policy for an exploration-
free evaluation block. Training stops early once `patience` consecutive
evaluations clear the target success rate, or at the episode budget.
Everything is seeded, so a config reproduces its run bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from ..corpus.goals import sample_goal
from ..dialog_system.system import DialogSystem
from ..simulator.factory import SimulatorArtifacts, make_simulator
from .episode import run_episode
from .features import FeatureMap
from .policy import RlPolicy, RlSystemPolicy
from .reinforce import reinforce_update


@dataclass(frozen=True)
class TrainConfig:
    sim_id: str = "agen-t"
    episodes: int = 30_000
    batch_size: int = 16
    lr: float = 0.01
    gamma: float = 0.9
    epsilon: float = 0.1
    eval_every: int = 1000
    eval_episodes: int = 100
    target: float = 0.9
    patience: int = 3
    seed: int = 0


@dataclass(frozen=True)
class Checkpoint:
    episode: int
    success_rate: float
    mean_return: float


@dataclass
class TrainResult:
    policy: RlPolicy
    config: TrainConfig
    curve: list[Checkpoint] = field(default_factory=list)
    episodes_run: int = 0
    converged: bool = False

    @property
    def checkpoints_to_target(self) -> int | None:
        """1-based index of the first evaluation at or above the target."""
        for i, point in enumerate(self.curve, start=1):
            if point.success_rate >= self.config.target:
                return i
        return None


def evaluate_policy(
    policy: RlPolicy,
    artifacts: SimulatorArtifacts,
    sim_id: str,
    episodes: int,
    seed: int,
) -> Checkpoint:
    """Success rate of the frozen policy (no exploration) over fresh dialogs."""
    simulator = make_simulator(sim_id, artifacts, seed=seed)
    rl = RlSystemPolicy(policy, epsilon=0.0)
    system = DialogSystem(
        policy=rl,
        db=artifacts.db,
        spotter=artifacts.spotter,
        seed=seed,
        system_id="rl",
    )
    goal_rng = random.Random(seed + 17)
    wins = 0
    total = 0.0
    for _ in range(episodes):
        episode = run_episode(simulator, system, rl, sample_goal(artifacts.goal_db, goal_rng))
        wins += episode.success
        total += episode.total_reward
    return Checkpoint(episode=0, success_rate=wins / episodes, mean_return=total / episodes)


def rl_train(artifacts: SimulatorArtifacts, config: TrainConfig = TrainConfig()) -> TrainResult:
    feature_map = FeatureMap.build(artifacts.dialogs)
    policy = RlPolicy(feature_map)
    result = TrainResult(policy=policy, config=config)

    simulator = make_simulator(config.sim_id, artifacts, seed=config.seed)
    rl = RlSystemPolicy(policy, epsilon=config.epsilon)
    system = DialogSystem(
        policy=rl,
        db=artifacts.db,
        spotter=artifacts.spotter,
        seed=config.seed,
        system_id="rl",
    )
    goal_rng = random.Random(config.seed * 7919 + 1)

    streak = 0
    evals_done = 0
    while result.episodes_run < config.episodes:
        batch = [
            run_episode(simulator, system, rl, sample_goal(artifacts.goal_db, goal_rng))
            for _ in range(config.batch_size)
        ]
        reinforce_update(policy, batch, config.gamma, config.lr)
        result.episodes_run += config.batch_size

        if result.episodes_run // config.eval_every > evals_done:
            evals_done = result.episodes_run // config.eval_every
            point = evaluate_policy(
                policy,
                artifacts,
                config.sim_id,
                config.eval_episodes,
                seed=config.seed * 100_003 + evals_done,
            )
            point = replace(point, episode=result.episodes_run)
            result.curve.append(point)
            streak = streak + 1 if point.success_rate >= config.target else 0
            if streak >= config.patience:
                result.converged = True
                break
    return result
