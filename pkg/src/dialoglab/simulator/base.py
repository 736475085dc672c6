"""Common simulator interface and shared act realization (NLG dispatch)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from ..corpus.goals import BOOKING_TIMES
from ..domain import DONTCARE, Goal, SystemAct, UserAct
from ..errors import NlgError
from ..nlg.ngram import CondNgramLM
from ..nlg.retrieval import RetrievalBank
from ..nlg.templates import TemplateBank, render_user
from ..text import detokenize, tokenize

SIM_IDS = ("agen-t", "agen-r", "agen-g", "sl-t", "sl-r", "sl-e")

#: attempts before generation NLG falls back to a template
GENERATION_RETRIES = 10


@dataclass(frozen=True)
class UserResponse:
    utterance: tuple[str, ...]
    act: UserAct | None
    done: bool


class UserSimulator(Protocol):
    sim_id: str

    def reset(self, goal: Goal) -> None: ...

    def respond(
        self,
        system_act: SystemAct | None,
        system_utterance: Sequence[str] | None,
    ) -> UserResponse: ...


def next_booking_time(current: str) -> str:
    """The next slot on the booking-time grid, cyclic; used when a booking
    attempt fails and the user moves the reservation."""
    if current in BOOKING_TIMES:
        i = (BOOKING_TIMES.index(current) + 1) % len(BOOKING_TIMES)
        return BOOKING_TIMES[i]
    hour = int(current.split(":")[0])
    return f"{(hour % 23) + 1}:00"


@dataclass
class ActRealizer:
    """Turns a user act into tokens via one of the three NLG strategies."""

    mode: str  # "template" | "retrieval" | "generation"
    bank: TemplateBank
    retrieval: RetrievalBank | None = None
    cond_lm: CondNgramLM | None = None
    temperature: float = 0.8
    fallbacks: int = field(default=0)

    def realize(
        self,
        act: UserAct,
        context: Sequence[str],
        rng: random.Random,
    ) -> tuple[str, ...]:
        if self.mode == "retrieval" and self.retrieval is not None:
            candidate = self.retrieval.retrieve(act, context)
            if candidate is not None:
                return tuple(tokenize(self._fill(candidate, act)))
            self.fallbacks += 1
        elif self.mode == "generation" and self.cond_lm is not None:
            tokens = self._generate(act, rng)
            if tokens is not None:
                return tokens
            self.fallbacks += 1
        return tuple(tokenize(render_user(self.bank, act, rng)))

    def _fill(self, delexicalized: Sequence[str], act: UserAct) -> str:
        from ..nlg.lexicalize import lexicalize

        return lexicalize(detokenize(delexicalized), act.slot_dict)

    def _generate(self, act: UserAct, rng: random.Random) -> tuple[str, ...] | None:
        assert self.cond_lm is not None
        kind = act.kind.value
        if not self.cond_lm.has_model(kind):
            return None
        available = {
            slot for slot, value in act.slot_dict.items() if value != DONTCARE
        }
        for _ in range(GENERATION_RETRIES):
            tokens = self.cond_lm.generate(kind, rng, temperature=self.temperature)
            needed = {t[1:-1] for t in tokens if t.startswith("<") and t.endswith(">")}
            if needed <= available:
                try:
                    return tuple(tokenize(self._fill(tokens, act)))
                except NlgError:
                    continue
        return None
