"""Value spotting and delexicalization against a restaurant database.

One gazetteer serves both directions: spotting slot values inside token
sequences (for NLU and belief updates) and replacing them with `<slot>`
placeholders (for retrieval candidates and language-model training).
"""

from __future__ import annotations

import re

from ..domain import BOOKING_SLOTS, Restaurant
from ..text import tokenize
from .restaurants import RestaurantDB

DAYS = ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")

_TIME_RE = re.compile(r"^\d{1,2}:\d{2}$")
# Booking reference codes: 8 alphanumerics with at least one digit, so plain
# 8-letter words never match.
_REFERENCE_RE = re.compile(r"^(?=.*\d)[a-z0-9]{8}$")
_PEOPLE_RE = re.compile(r"^[1-9]$")

#: Slot classes recognized by single-token patterns, tried in this order.
_PATTERN_SLOTS = (
    ("time", _TIME_RE),
    ("reference", _REFERENCE_RE),
    ("people", _PEOPLE_RE),
)

_DB_SLOTS = ("name", "address", "phone", "postcode", "food", "area", "pricerange")

#: Surface variants mapped to canonical slot values.
_ALIASES: dict[tuple[str, ...], tuple[str, str]] = {
    ("moderately", "priced"): ("pricerange", "moderate"),
    ("inexpensive",): ("pricerange", "cheap"),
    ("cheaper",): ("pricerange", "cheap"),
    ("center",): ("area", "centre"),
    ("downtown",): ("area", "centre"),
}

#: db value spans that collide with everyday words and must not be spotted.
_SPAN_STOPLIST = {("ask",)}


class ValueSpotter:
    """Finds database values and pattern slots inside token sequences."""

    def __init__(self, db: RestaurantDB):
        self.db = db
        # token span -> (slot, canonical value); longest spans matched first
        self._spans: dict[tuple[str, ...], tuple[str, str]] = {}
        for restaurant in db.restaurants:
            for slot in _DB_SLOTS:
                value = getattr(restaurant, slot)
                span = tuple(tokenize(value))
                if span and span not in _SPAN_STOPLIST:
                    self._spans.setdefault(span, (slot, value))
        for day in DAYS:
            self._spans.setdefault((day,), ("day", day))
        for span, target in _ALIASES.items():
            self._spans.setdefault(span, target)
        self._max_len = max(len(s) for s in self._spans)

    def spot(self, tokens: list[str] | tuple[str, ...]) -> list[tuple[int, int, str, str]]:
        """Non-overlapping matches as (start, end, slot, value), left to right."""
        matches = []
        i = 0
        n = len(tokens)
        while i < n:
            hit = None
            for length in range(min(self._max_len, n - i), 0, -1):
                entry = self._spans.get(tuple(tokens[i : i + length]))
                if entry is not None:
                    hit = (i, i + length, entry[0], entry[1])
                    break
            if hit is None:
                for slot, pattern in _PATTERN_SLOTS:
                    if pattern.match(tokens[i]):
                        hit = (i, i + 1, slot, tokens[i])
                        break
            if hit is None:
                i += 1
            else:
                matches.append(hit)
                i = hit[1]
        return matches

    def values(self, tokens: list[str] | tuple[str, ...]) -> dict[str, str]:
        """Slot -> canonical value for each spotted slot; a later mention overrides."""
        out: dict[str, str] = {}
        for _, _, slot, value in self.spot(tokens):
            out[slot] = value
        return out

    def delexicalize(self, tokens: list[str] | tuple[str, ...]) -> list[str]:
        """Replace every spotted value span with a single `<slot>` token."""
        out: list[str] = []
        i = 0
        for start, end, slot, _ in self.spot(tokens):
            out.extend(tokens[i:start])
            out.append(f"<{slot}>")
            i = end
        out.extend(tokens[i:])
        return out


def booking_values(spotted: dict[str, str]) -> dict[str, str]:
    return {slot: spotted[slot] for slot in BOOKING_SLOTS if slot in spotted}


def restaurant_placeholder_values(restaurant: Restaurant) -> dict[str, str]:
    """Placeholder fillers contributed by one restaurant."""
    return {slot: getattr(restaurant, slot) for slot in _DB_SLOTS}
