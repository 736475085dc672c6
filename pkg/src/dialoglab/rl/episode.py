"""One training episode: a simulated dialog scored for the policy trainer."""

from __future__ import annotations

from ..dialog_system.runner import run_dialog
from ..dialog_system.system import DialogSystem
from ..domain import Goal, Outcome
from ..simulator.base import UserSimulator
from .policy import RlSystemPolicy
from .reinforce import Episode, Step

TURN_PENALTY = -0.1
SUCCESS_BONUS = 1.0
FAILURE_PENALTY = -1.0


def run_episode(
    simulator: UserSimulator,
    system: DialogSystem,
    rl: RlSystemPolicy,
    goal: Goal,
) -> Episode:
    """Run one dialog and attach rewards to the recorded decisions.

    Every system turn costs a little; the last one carries the outcome bonus.
    A simulator or rendering crash aborts the episode as a plain failure, so
    a single bad sample cannot kill a long training run.
    """
    rl.begin_episode()
    try:
        dialog = run_dialog(simulator, system, goal)
        success = dialog.outcome is Outcome.SUCCESS
    except Exception:
        success = False
    if not rl.trail:
        return Episode(steps=(), success=success)
    rewards = [TURN_PENALTY] * len(rl.trail)
    rewards[-1] += SUCCESS_BONUS if success else FAILURE_PENALTY
    steps = tuple(
        Step(features=x, mask=mask, action=action, reward=reward)
        for (x, mask, action), reward in zip(rl.trail, rewards)
    )
    return Episode(steps=steps, success=success)
