"""Supervised simulator: learned next-act model over a rule-kept belief span."""

from __future__ import annotations

import random
from typing import Sequence

from ..corpus.delex import ValueSpotter
from ..domain import (
    MAX_TURNS,
    BeliefSpan,
    Goal,
    SystemAct,
    UserAct,
    UserActKind,
)
from .base import ActRealizer, UserResponse
from .slmodel import ActModel, sl_next


class SlSimulator:
    def __init__(
        self,
        sim_id: str,
        model: ActModel,
        realizer: ActRealizer,
        spotter: ValueSpotter,
        rng: random.Random,
    ):
        self.sim_id = sim_id
        self.model = model
        self.realizer = realizer
        self.spotter = spotter
        self.rng = rng
        self.goal: Goal | None = None
        self.belief = BeliefSpan()
        self.user_turns = 0
        self.prev_user: tuple[str, ...] | None = None

    def reset(self, goal: Goal) -> None:
        self.goal = goal
        self.belief = BeliefSpan()
        self.user_turns = 0
        self.prev_user = None

    def respond(
        self,
        system_act: SystemAct | None,
        system_utterance: Sequence[str] | None,
    ) -> UserResponse:
        from .belief import belief_update

        if self.goal is None:
            raise RuntimeError("respond() before reset()")
        self.user_turns += 1
        self.belief = belief_update(self.belief, self.prev_user, system_act, self.spotter)
        if self.user_turns >= MAX_TURNS:
            act = UserAct.make(UserActKind.GOODBYE)
        else:
            act = sl_next(self.model, self.belief, self.goal, system_act, self.rng)
        context = list(self.prev_user or ()) + list(system_utterance or ())
        tokens = self.realizer.realize(act, context, self.rng)
        self.prev_user = tokens
        return UserResponse(tokens, act, act.kind is UserActKind.GOODBYE)
