"""State featurization for the learned system policy.

A policy observation is a fixed vector: binary flags summarizing the tracked
dialog state, then a bag-of-words count vector of the last user utterance
over the corpus vocabulary, then a bias term. Everything is derived from
artifacts that are frozen before training, so feature vectors are stable
across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from ..domain import Dialog, DialogState, UserActKind


@lru_cache(maxsize=8)
def _vocab_index(vocab: tuple[str, ...]) -> dict[str, int]:
    return {word: i for i, word in enumerate(vocab)}

FLAG_NAMES = tuple(f"last_act_{kind.value}" for kind in UserActKind) + (
    "food_filled",
    "area_filled",
    "pricerange_filled",
    "name_filled",
    "presented",
    "request_pending",
    "booking_requested",
    "booking_complete",
    "reservation_confirmed",
)


@dataclass(frozen=True)
class FeatureMap:
    vocab: tuple[str, ...]

    @classmethod
    def build(cls, dialogs: Iterable[Dialog]) -> "FeatureMap":
        words = {
            token
            for dialog in dialogs
            for turn in dialog.user_turns()
            for token in turn.utterance
        }
        return cls(vocab=tuple(sorted(words)))

    @property
    def size(self) -> int:
        return len(FLAG_NAMES) + len(self.vocab) + 1  # +1 bias

    def features(
        self, state: DialogState, user_tokens: Sequence[str] = ()
    ) -> np.ndarray:
        filled = state.constraint_dict
        flags = [state.last_user_act is kind for kind in UserActKind]
        flags += [
            "food" in filled,
            "area" in filled,
            "pricerange" in filled,
            "name" in filled,
            state.presented is not None,
            bool(state.requested - state.provided_requestables),
            state.booking_requested,
            state.booking_complete,
            state.reservation_confirmed,
        ]
        x = np.zeros(self.size)
        x[: len(FLAG_NAMES)] = flags
        base = len(FLAG_NAMES)
        index = _vocab_index(self.vocab)
        for token in user_tokens:
            i = index.get(token)
            if i is not None:
                x[base + i] += 1.0
        x[-1] = 1.0
        return x
