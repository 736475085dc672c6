"""Placeholder filling: the inverse of delexicalization."""

from __future__ import annotations

import re
from typing import Mapping

from ..domain import DONTCARE, Restaurant
from ..errors import NlgError

_PLACEHOLDER_RE = re.compile(r"<([a-z_]+)>")

#: Surface phrases for a dontcare value, per slot.
DONTCARE_SURFACE = {
    "food": "any kind of food",
    "area": "any area",
    "pricerange": "any price range",
    "time": "any time",
    "day": "any day",
    "name": "any restaurant",
}


def _resolve(slot: str, slots: Mapping[str, object], restaurant: Restaurant | None) -> str:
    if slot in slots:
        value = str(slots[slot])
    elif restaurant is not None and hasattr(restaurant, slot):
        value = getattr(restaurant, slot)
    else:
        raise NlgError(f"cannot resolve placeholder <{slot}>")
    if value == DONTCARE:
        return DONTCARE_SURFACE.get(slot, "anything")
    return value


def lexicalize(
    text: str,
    slots: Mapping[str, object],
    restaurant: Restaurant | None = None,
) -> str:
    """Replace every `<slot>` placeholder from the slots or the restaurant."""
    out = _PLACEHOLDER_RE.sub(lambda m: _resolve(m.group(1), slots, restaurant), text)
    if "<" in out and _PLACEHOLDER_RE.search(out):
        raise NlgError(f"unresolved placeholder in {out!r}")
    return out


def placeholders(text: str) -> frozenset[str]:
    return frozenset(_PLACEHOLDER_RE.findall(text))
