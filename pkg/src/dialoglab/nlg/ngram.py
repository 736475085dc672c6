"""Trigram language models for scoring and corpus-driven generation.

Scoring uses add-k smoothing over a closed vocabulary (OOV tokens map to an
unknown symbol, the end symbol is scored, start padding is not). Generation
ignores smoothing and walks observed successor counts only, so sampled
utterances stay on corpus trigrams.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Sequence

from ..errors import InsufficientDataError, NlgError

START = "<s>"
END = "</s>"
UNK = "<unk>"


class TrigramLM:
    def __init__(self, k: float = 0.1, vocab: Iterable[str] | None = None):
        if k <= 0:
            raise ValueError("smoothing constant must be positive")
        self.k = k
        self._explicit_vocab = set(vocab) if vocab is not None else None
        self.vocab: set[str] = set()
        self._trigrams: dict[tuple[str, str], dict[str, int]] = {}
        self._context_totals: dict[tuple[str, str], int] = {}
        if self._explicit_vocab is not None:
            self.vocab = self._explicit_vocab | {UNK, END}

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    def train(self, sentences: Sequence[Sequence[str]]) -> "TrigramLM":
        if self._explicit_vocab is None:
            for sent in sentences:
                self.vocab.update(sent)
            self.vocab |= {UNK, END}
        for sent in sentences:
            tokens = [self._map(t) for t in sent] + [END]
            context = (START, START)
            for token in tokens:
                bucket = self._trigrams.setdefault(context, {})
                bucket[token] = bucket.get(token, 0) + 1
                self._context_totals[context] = self._context_totals.get(context, 0) + 1
                context = (context[1], token)
        return self

    def _map(self, token: str) -> str:
        return token if token in self.vocab else UNK

    def prob(self, context: tuple[str, str], token: str) -> float:
        u, v = context
        ctx = (u if u == START else self._map(u), v if v == START else self._map(v))
        word = self._map(token)
        count = self._trigrams.get(ctx, {}).get(word, 0)
        total = self._context_totals.get(ctx, 0)
        return (count + self.k) / (total + self.k * self.vocab_size)

    def sentence_logprob(self, sentence: Sequence[str]) -> tuple[float, int]:
        """Sum of token log-probs and the number of scored tokens."""
        logp = 0.0
        context = (START, START)
        scored = list(sentence) + [END]
        for token in scored:
            logp += math.log(self.prob(context, token))
            context = (context[1], self._map(token))
        return logp, len(scored)

    def perplexity(self, sentences: Sequence[Sequence[str]]) -> float:
        total_logp = 0.0
        total_tokens = 0
        for sent in sentences:
            logp, n = self.sentence_logprob(sent)
            total_logp += logp
            total_tokens += n
        if total_tokens == 0:
            raise ValueError("cannot compute perplexity over zero tokens")
        return math.exp(-total_logp / total_tokens)

    def successors(self, context: tuple[str, str]) -> list[tuple[str, int]]:
        bucket = self._trigrams.get(context, {})
        return sorted(bucket.items())

    def generate(
        self,
        rng: random.Random,
        temperature: float = 0.8,
        greedy: bool = False,
        max_tokens: int = 30,
    ) -> list[str]:
        """Walk observed trigram successors from the start context."""
        context = (START, START)
        out: list[str] = []
        while len(out) < max_tokens:
            options = self.successors(context)
            if not options:
                raise NlgError("no observed successors for generation context")
            if greedy:
                token = self._argmax_lexicographic(options)
            else:
                token = self._sample(options, rng, temperature)
            if token == END:
                break
            out.append(token)
            context = (context[1], token)
        return out

    @staticmethod
    def _argmax_lexicographic(options: list[tuple[str, int]]) -> str:
        best_token, best_count = options[0]
        for token, count in options[1:]:
            if count > best_count:
                best_token, best_count = token, count
        return best_token

    @staticmethod
    def _sample(options: list[tuple[str, int]], rng: random.Random, temperature: float) -> str:
        weights = [count ** (1.0 / temperature) for _, count in options]
        total = sum(weights)
        r = rng.random() * total
        acc = 0.0
        for (token, _), weight in zip(options, weights):
            acc += weight
            if r < acc:
                return token
        return options[-1][0]


class CondNgramLM:
    """Per-act trigram models with a minimum training-size gate."""

    def __init__(self, min_count: int = 20, k: float = 0.1):
        self.min_count = min_count
        self.k = k
        self._models: dict[str, TrigramLM] = {}
        self.skipped: dict[str, int] = {}

    def train(self, grouped: dict[str, Sequence[Sequence[str]]]) -> "CondNgramLM":
        for kind, sentences in sorted(grouped.items()):
            if len(sentences) < self.min_count:
                self.skipped[kind] = len(sentences)
                continue
            self._models[kind] = TrigramLM(k=self.k).train(sentences)
        return self

    def has_model(self, kind: str) -> bool:
        return kind in self._models

    def model(self, kind: str) -> TrigramLM:
        if kind not in self._models:
            raise InsufficientDataError(
                f"no language model for act {kind!r}"
                f" ({self.skipped.get(kind, 0)} training utterances,"
                f" {self.min_count} required)"
            )
        return self._models[kind]

    def generate(
        self,
        kind: str,
        rng: random.Random,
        temperature: float = 0.8,
        greedy: bool = False,
        max_tokens: int = 30,
    ) -> list[str]:
        return self.model(kind).generate(
            rng, temperature=temperature, greedy=greedy, max_tokens=max_tokens
        )
