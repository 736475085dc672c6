"""The assembled dialog system: NLU -> tracker -> policy -> template NLG."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..corpus.annotate import DEFAULT_RULES, AnnotationRule
from ..corpus.delex import ValueSpotter
from ..corpus.restaurants import RestaurantDB, load_restaurant_db
from ..domain import DialogState, Restaurant, SystemAct, SystemActKind
from ..nlg.templates import TemplateBank, render_system_act
from ..text import tokenize
from .nlu import Nlu, NluResult
from .policy_rule import RulePolicy, SystemPolicy
from .tracker import apply_system_act, track


@dataclass(frozen=True)
class SystemResponse:
    act: SystemAct
    utterance: tuple[str, ...]
    state: DialogState
    done: bool


class DialogSystem:
    """One conversation endpoint; reset() starts a fresh dialog."""

    def __init__(
        self,
        policy: SystemPolicy | None = None,
        db: RestaurantDB | None = None,
        bank: TemplateBank | None = None,
        spotter: ValueSpotter | None = None,
        rules: Sequence[AnnotationRule] = DEFAULT_RULES,
        nlu_noise: float = 0.0,
        seed: int = 0,
        system_id: str = "rule",
    ):
        self.system_id = system_id
        self.db = db if db is not None else load_restaurant_db()
        self.bank = bank if bank is not None else TemplateBank.load_default("system")
        self.spotter = spotter if spotter is not None else ValueSpotter(self.db)
        self.nlu = Nlu(self.spotter, rules, noise=nlu_noise)
        self.policy = policy if policy is not None else RulePolicy()
        self.rng = random.Random(seed)
        self.state = DialogState()

    def reset(self, dialog_id: str = "") -> None:
        self.state = DialogState(dialog_id=dialog_id)

    def respond(self, user_utterance: str | Sequence[str]) -> SystemResponse:
        parsed: NluResult = self.nlu.parse(user_utterance, self.rng)
        self.state = track(self.state, parsed.act)
        tokens = (
            tokenize(user_utterance)
            if isinstance(user_utterance, str)
            else tuple(user_utterance)
        )
        act = self.policy.choose(self.state, self.db, self.rng, tokens)
        self.state = apply_system_act(self.state, act, self._offered(act))
        text = render_system_act(self.bank, act, self.rng, restaurant=self.state.presented)
        return SystemResponse(
            act, tuple(tokenize(text)), self.state, act.kind is SystemActKind.GOODBYE
        )

    def _offered(self, act: SystemAct) -> Restaurant | None:
        if act.kind is not SystemActKind.PRESENT_RESULT:
            return None
        name = act.slot_dict.get("name")
        return self.db.by_name(name) if name else None
