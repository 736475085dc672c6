"""Natural language generation: templates, retrieval, and n-gram models."""

from .lexicalize import DONTCARE_SURFACE, lexicalize, placeholders
from .ngram import END, START, UNK, CondNgramLM, TrigramLM
from .templates import (
    Template,
    TemplateBank,
    render_system_act,
    render_user,
    system_template_keys,
    user_template_keys,
)
from .tfidf import TfIdfIndex

__all__ = [
    "DONTCARE_SURFACE",
    "lexicalize",
    "placeholders",
    "END",
    "START",
    "UNK",
    "CondNgramLM",
    "TrigramLM",
    "Template",
    "TemplateBank",
    "render_system_act",
    "render_user",
    "system_template_keys",
    "user_template_keys",
    "TfIdfIndex",
]
