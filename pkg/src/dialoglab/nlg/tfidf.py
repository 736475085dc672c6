"""TF-IDF retrieval over tokenized candidate utterances.

idf uses the plain ln(N / df) convention; document and query vectors are
L2-normalized so the score is cosine similarity. Ties break toward the
lowest candidate id, and an all-zero query falls back to candidate 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class TfIdfIndex:
    candidates: tuple[tuple[str, ...], ...]
    idf: dict[str, float]
    vectors: tuple[dict[str, float], ...]
    terms: dict[str, int] = field(default_factory=dict)
    matrix: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))

    @classmethod
    def build(cls, candidates: Sequence[Sequence[str]]) -> "TfIdfIndex":
        docs = tuple(tuple(doc) for doc in candidates)
        if not docs:
            raise ValueError("cannot build an index over zero candidates")
        n = len(docs)
        df: dict[str, int] = {}
        for doc in docs:
            for term in set(doc):
                df[term] = df.get(term, 0) + 1
        idf = {term: math.log(n / count) for term, count in df.items()}
        vectors = tuple(cls._vectorize(doc, idf) for doc in docs)
        terms = {term: i for i, term in enumerate(sorted(idf))}
        matrix = np.zeros((n, len(terms)))
        for row, vec in enumerate(vectors):
            for term, weight in vec.items():
                matrix[row, terms[term]] = weight
        return cls(candidates=docs, idf=idf, vectors=vectors, terms=terms, matrix=matrix)

    @staticmethod
    def _vectorize(tokens: Sequence[str], idf: dict[str, float]) -> dict[str, float]:
        counts: dict[str, int] = {}
        for token in tokens:
            if token in idf:
                counts[token] = counts.get(token, 0) + 1
        vec = {term: count * idf[term] for term, count in counts.items()}
        norm = math.sqrt(sum(w * w for w in vec.values()))
        if norm > 0:
            vec = {term: w / norm for term, w in vec.items()}
        return vec

    def score(self, query: Sequence[str]) -> list[float]:
        qvec = self._vectorize(query, self.idf)
        if not qvec:
            return [0.0] * len(self.candidates)
        q = np.zeros(len(self.terms))
        for term, weight in qvec.items():
            q[self.terms[term]] = weight
        return (self.matrix @ q).tolist()

    def retrieve(self, query: Sequence[str]) -> int:
        """Return the id of the best-matching candidate."""
        scores = self.score(query)
        best = 0
        for i, s in enumerate(scores):
            if s > scores[best]:
                best = i
        return best
