"""Shared tokenizer and string normalization.

Every module that touches surface text (annotation, NLG, language models,
perplexity) goes through this tokenizer so that token counts and vocabularies
are comparable across the pipeline.
"""

from __future__ import annotations

import re

# Words keep internal apostrophes and colons so times ("12:15") and
# contractions ("don't") stay single tokens; all other punctuation is split
# into standalone tokens.
_TOKEN_RE = re.compile(r"<[a-z_]+>|[a-z0-9]+(?:[:'][a-z0-9]+)*|[^\sa-z0-9]")

_WS_RE = re.compile(r"\s+")


def normalize(text: str) -> str:
    """Lowercase and collapse whitespace."""
    return _WS_RE.sub(" ", text.lower()).strip()


def tokenize(text: str) -> list[str]:
    """Split normalized text into tokens (punctuation separate)."""
    return _TOKEN_RE.findall(normalize(text))


def detokenize(tokens: list[str]) -> str:
    """Join tokens with single spaces (the canonical surface form)."""
    return " ".join(tokens)
