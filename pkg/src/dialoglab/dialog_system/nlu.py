"""Rule NLU for the system side: act classification plus slot spotting.

Reuses the corpus annotation rules, so the system understands exactly the
act inventory the corpus was labeled with. An optional noise knob drops the
parsed slots with some probability to mimic understanding errors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..corpus.annotate import DEFAULT_RULES, AnnotationRule, annotate_utterance
from ..corpus.delex import ValueSpotter
from ..domain import UserAct
from ..text import detokenize


@dataclass(frozen=True)
class NluResult:
    act: UserAct
    confidence: float
    matched: bool


class Nlu:
    def __init__(
        self,
        spotter: ValueSpotter,
        rules: Sequence[AnnotationRule] = DEFAULT_RULES,
        noise: float = 0.0,
    ):
        if not 0.0 <= noise < 1.0:
            raise ValueError(f"noise probability out of range: {noise}")
        self.spotter = spotter
        self.rules = tuple(rules)
        self.noise = noise

    def parse(
        self,
        utterance: str | Sequence[str],
        rng: random.Random | None = None,
    ) -> NluResult:
        text = utterance if isinstance(utterance, str) else detokenize(utterance)
        act, matched = annotate_utterance(text, self.rules, self.spotter)
        if self.noise > 0.0:
            if rng is None:
                raise ValueError("a noisy parser needs an rng")
            if act.slots and rng.random() < self.noise:
                act = UserAct.make(act.kind)
        return NluResult(act, 1.0 if matched else 0.5, matched)
