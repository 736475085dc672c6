from .episode import FAILURE_PENALTY, SUCCESS_BONUS, TURN_PENALTY, run_episode
from .features import FLAG_NAMES, FeatureMap
from .policy import N_ACTIONS, RlPolicy, RlSystemPolicy, masked_softmax
from .reinforce import (
    Episode,
    Step,
    batch_gradient,
    discounted_returns,
    reinforce_update,
)
from .train import Checkpoint, TrainConfig, TrainResult, evaluate_policy, rl_train

__all__ = [
    "Checkpoint",
    "Episode",
    "FAILURE_PENALTY",
    "FLAG_NAMES",
    "FeatureMap",
    "N_ACTIONS",
    "RlPolicy",
    "RlSystemPolicy",
    "SUCCESS_BONUS",
    "Step",
    "TURN_PENALTY",
    "TrainConfig",
    "TrainResult",
    "batch_gradient",
    "discounted_returns",
    "evaluate_policy",
    "masked_softmax",
    "reinforce_update",
    "rl_train",
    "run_episode",
]
