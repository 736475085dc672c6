"""Run complete user-simulator vs dialog-system conversations."""

from __future__ import annotations

from ..domain import MAX_TURNS, Dialog, Goal, Outcome, Turn, goal_satisfied
from ..simulator.base import UserSimulator
from .system import DialogSystem


def run_dialog(simulator: UserSimulator, system: DialogSystem, goal: Goal) -> Dialog:
    """One full conversation; the user opens, the system answers each turn."""
    simulator.reset(goal)
    system.reset(dialog_id=goal.goal_id)
    turns: list[Turn] = []
    response = simulator.respond(None, None)
    for _ in range(MAX_TURNS):
        turns.append(Turn("user", tuple(response.utterance), response.act))
        reply = system.respond(response.utterance)
        turns.append(Turn("system", reply.utterance, reply.act, state=reply.state))
        if reply.done or response.done:
            break
        response = simulator.respond(reply.act, reply.utterance)
    outcome = goal_satisfied(goal, system.state)
    if outcome is Outcome.ONGOING:
        outcome = Outcome.FAILURE
    return Dialog(
        goal=goal,
        turns=tuple(turns),
        outcome=outcome,
        meta=(("sim_id", getattr(simulator, "sim_id", "?")), ("system_id", system.system_id)),
    )
