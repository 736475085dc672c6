"""End-to-end simulator stand-in: context retrieval without an act layer.

Picks the corpus user utterance whose stored context best matches the live
context and lexicalizes it against the goal. No dialog act is produced or
consumed; the system only ever sees the text.
"""

from __future__ import annotations

import random
from typing import Sequence

from ..corpus.annotate import classify
from ..corpus.delex import ValueSpotter
from ..domain import MAX_TURNS, Goal, SystemAct, SystemActKind, UserActKind
from ..errors import NlgError
from ..nlg.lexicalize import lexicalize
from ..nlg.retrieval import RetrievalBank
from ..text import detokenize, tokenize
from .base import UserResponse

_CLOSING = tuple(tokenize("thank you , goodbye ."))


class SleSimulator:
    sim_id = "sl-e"

    def __init__(self, bank: RetrievalBank, spotter: ValueSpotter, rng: random.Random):
        self.bank = bank
        self.spotter = spotter
        self.rng = rng
        self.goal: Goal | None = None
        self.user_turns = 0
        self.prev_user: tuple[str, ...] = ()
        self.offered_name: str | None = None

    def reset(self, goal: Goal) -> None:
        self.goal = goal
        self.user_turns = 0
        self.prev_user = ()
        self.offered_name = None

    def _values(self) -> dict[str, str]:
        assert self.goal is not None
        values = dict(self.goal.constraint_dict)
        if self.goal.booking is not None:
            values.setdefault("people", str(self.goal.booking.people))
            values.setdefault("day", self.goal.booking.day)
            values.setdefault("time", self.goal.booking.time)
        if self.offered_name is not None:
            values["name"] = self.offered_name
        return values

    def respond(
        self,
        system_act: SystemAct | None,
        system_utterance: Sequence[str] | None,
    ) -> UserResponse:
        if self.goal is None:
            raise RuntimeError("respond() before reset()")
        self.user_turns += 1
        if system_utterance:
            name = self.spotter.values(tuple(system_utterance)).get("name")
            if name is not None:
                self.offered_name = name
        forced_goodbye = self.user_turns >= MAX_TURNS or (
            system_act is not None and system_act.kind is SystemActKind.GOODBYE
        )
        if forced_goodbye:
            self.prev_user = _CLOSING
            return UserResponse(_CLOSING, None, True)
        context = list(self.prev_user) + list(system_utterance or ())
        values = self._values()
        text = None
        for i in self.bank.ranked(context):
            candidate = self.bank.candidates[i]
            try:
                text = lexicalize(detokenize(candidate.utterance), values)
                break
            except NlgError:
                continue
        if text is None:
            text = detokenize(_CLOSING)
        tokens = tuple(tokenize(text))
        self.prev_user = tokens
        kind, _ = classify(text)
        return UserResponse(tokens, None, kind is UserActKind.GOODBYE)
