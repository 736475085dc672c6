"""Corpus-turn retrieval: pick a real user utterance by dialog context.

Candidates are delexicalized corpus user turns keyed by act kind and a slot
signature (which slots are valued, dontcare, or requested), so a retrieved
utterance is always lexicalizable from the querying act. The context vector
is the raw text of the two preceding turns; similarity is TF-IDF cosine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..corpus.delex import ValueSpotter
from ..domain import DONTCARE, Dialog, UserAct
from .tfidf import TfIdfIndex

Signature = tuple[tuple[str, str], ...]


def slot_signature(slots: Mapping[str, str]) -> Signature:
    sig = []
    for slot, value in slots.items():
        if value == DONTCARE:
            tag = "dontcare"
        elif value == "?":
            tag = "?"
        else:
            tag = "value"
        sig.append((slot, tag))
    return tuple(sorted(sig))


@dataclass(frozen=True)
class RetrievalCandidate:
    kind: str
    signature: Signature
    utterance: tuple[str, ...]  # delexicalized
    context: tuple[str, ...]  # raw tokens of the two preceding turns


class RetrievalBank:
    def __init__(self, candidates: Sequence[RetrievalCandidate]):
        if not candidates:
            raise ValueError("cannot build a retrieval bank over zero candidates")
        self.candidates = tuple(candidates)
        self.index = TfIdfIndex.build([c.context for c in self.candidates])
        self._buckets: dict[tuple[str, Signature], list[int]] = {}
        for i, cand in enumerate(self.candidates):
            self._buckets.setdefault((cand.kind, cand.signature), []).append(i)

    @classmethod
    def build(cls, dialogs: Iterable[Dialog], spotter: ValueSpotter) -> "RetrievalBank":
        """Collect annotated user turns from the corpus as candidates."""
        candidates = []
        for dialog in dialogs:
            for i, turn in enumerate(dialog.turns):
                if turn.speaker != "user" or not isinstance(turn.act, UserAct):
                    continue
                context: list[str] = []
                if i >= 2:
                    context.extend(dialog.turns[i - 2].utterance)
                if i >= 1:
                    context.extend(dialog.turns[i - 1].utterance)
                candidates.append(
                    RetrievalCandidate(
                        kind=turn.act.kind.value,
                        signature=slot_signature(turn.act.slot_dict),
                        utterance=tuple(spotter.delexicalize(turn.utterance)),
                        context=tuple(context),
                    )
                )
        return cls(candidates)

    def retrieve(self, act: UserAct, context: Sequence[str]) -> tuple[str, ...] | None:
        """Best-matching delexicalized utterance, or None when the act shape
        has no corpus candidate (caller falls back to templates)."""
        bucket = self._buckets.get((act.kind.value, slot_signature(act.slot_dict)))
        if not bucket:
            return None
        scores = self.index.score(context)
        best = bucket[0]
        for i in bucket[1:]:
            if scores[i] > scores[best]:
                best = i
        return self.candidates[best].utterance

    def ranked(self, context: Sequence[str]) -> list[int]:
        """All candidate ids ordered by descending similarity, ties by id."""
        scores = self.index.score(context)
        return sorted(range(len(scores)), key=lambda i: (-scores[i], i))

    def coverage(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for cand in self.candidates:
            counts[cand.kind] = counts.get(cand.kind, 0) + 1
        return counts
