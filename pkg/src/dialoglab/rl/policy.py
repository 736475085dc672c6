"""Linear policy over the six system act kinds with action masking."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from ..corpus.restaurants import RestaurantDB
from ..dialog_system.policy_rule import ACTION_KINDS, action_mask, instantiate
from ..domain import DialogState, SystemAct
from .features import FLAG_NAMES, FeatureMap

N_ACTIONS = len(ACTION_KINDS)


def masked_softmax(scores: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Softmax over the allowed actions; masked entries are exactly zero."""
    if not mask.any():
        raise ValueError("mask allows no action")
    probs = np.zeros_like(scores, dtype=np.float64)
    idx = np.flatnonzero(mask)
    shifted = scores[idx] - scores[idx].max()
    exp = np.exp(shifted)
    probs[idx] = exp / exp.sum()
    return probs


@dataclass
class RlPolicy:
    feature_map: FeatureMap
    weights: np.ndarray = field(default=None)  # (n actions, n features)

    def __post_init__(self):
        if self.weights is None:
            self.weights = np.zeros((N_ACTIONS, self.feature_map.size))
        if self.weights.shape != (N_ACTIONS, self.feature_map.size):
            raise ValueError(
                f"weight shape {self.weights.shape} does not fit "
                f"{N_ACTIONS} actions x {self.feature_map.size} features"
            )

    def probs(self, x: np.ndarray, mask: np.ndarray) -> np.ndarray:
        return masked_softmax(self.weights @ x, mask)

    def sample(
        self,
        x: np.ndarray,
        mask: np.ndarray,
        rng: random.Random,
        epsilon: float = 0.0,
    ) -> int:
        """Sample an allowed action; with probability epsilon explore uniformly."""
        allowed = np.flatnonzero(mask)
        if epsilon > 0.0 and rng.random() < epsilon:
            return int(allowed[rng.randrange(len(allowed))])
        probs = self.probs(x, mask)
        r = rng.random()
        acc = 0.0
        for a in allowed:
            acc += probs[a]
            if r < acc:
                return int(a)
        return int(allowed[-1])

    def grad_log_prob(self, x: np.ndarray, mask: np.ndarray, action: int) -> np.ndarray:
        """d log pi(action | x) / d weights, zero on masked rows."""
        probs = self.probs(x, mask)
        coeff = -probs
        coeff[action] += 1.0
        coeff[~mask.astype(bool)] = 0.0
        return np.outer(coeff, x)

    def to_json(self) -> dict:
        return {
            "flag_names": list(FLAG_NAMES),
            "vocab": list(self.feature_map.vocab),
            "weights": self.weights.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RlPolicy":
        return cls(
            feature_map=FeatureMap(vocab=tuple(data["vocab"])),
            weights=np.asarray(data["weights"], dtype=np.float64),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), sort_keys=True))

    @classmethod
    def load(cls, path: str | Path) -> "RlPolicy":
        return cls.from_json(json.loads(Path(path).read_text()))


class RlSystemPolicy:
    """Adapter: lets a DialogSystem consult the learned policy, recording the
    (features, mask, action) trail so the trainer can assign credit."""

    policy_id = "rl"

    def __init__(self, policy: RlPolicy, epsilon: float = 0.0):
        self.policy = policy
        self.epsilon = epsilon
        self.trail: list[tuple[np.ndarray, tuple[bool, ...], int]] = []

    def begin_episode(self) -> None:
        self.trail = []

    def choose(
        self,
        state: DialogState,
        db: RestaurantDB,
        rng: random.Random,
        user_tokens: Sequence[str] = (),
    ) -> SystemAct:
        x = self.policy.feature_map.features(state, user_tokens)
        mask = np.array(action_mask(state), dtype=bool)
        action = self.policy.sample(x, mask, rng, self.epsilon)
        self.trail.append((x, tuple(bool(m) for m in mask), action))
        return instantiate(ACTION_KINDS[action], state, db)
