"""Batch REINFORCE: discounted returns, baseline, and the weight gradient."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .policy import RlPolicy


@dataclass(frozen=True)
class Step:
    features: np.ndarray
    mask: tuple[bool, ...]
    action: int
    reward: float


@dataclass(frozen=True)
class Episode:
    steps: tuple[Step, ...]
    success: bool

    @property
    def total_reward(self) -> float:
        return sum(step.reward for step in self.steps)


def discounted_returns(rewards: Sequence[float], gamma: float) -> list[float]:
    """G_t = r_t + gamma * G_{t+1}, computed right to left."""
    returns = [0.0] * len(rewards)
    acc = 0.0
    for t in range(len(rewards) - 1, -1, -1):
        acc = rewards[t] + gamma * acc
        returns[t] = acc
    return returns


def batch_gradient(
    policy: RlPolicy,
    episodes: Sequence[Episode],
    gamma: float,
) -> np.ndarray:
    """Mean policy gradient over a batch, with the batch mean episode return
    as baseline. Returns the ascent direction (add it scaled by lr)."""
    if not episodes:
        raise ValueError("empty batch")
    all_returns = [discounted_returns([s.reward for s in e.steps], gamma) for e in episodes]
    baseline = float(np.mean([g[0] for g in all_returns if g])) if any(all_returns) else 0.0
    grad = np.zeros_like(policy.weights)
    for episode, returns in zip(episodes, all_returns):
        for step, g in zip(episode.steps, returns):
            advantage = g - baseline
            grad += advantage * policy.grad_log_prob(
                step.features, np.array(step.mask, dtype=bool), step.action
            )
    return grad / len(episodes)


def reinforce_update(
    policy: RlPolicy,
    episodes: Sequence[Episode],
    gamma: float,
    lr: float,
) -> None:
    policy.weights = policy.weights + lr * batch_gradient(policy, episodes, gamma)
