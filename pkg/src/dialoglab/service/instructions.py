"""Render a sampled goal as task instructions for a human participant."""

from __future__ import annotations

from ..domain import DONTCARE, Goal

_REQUEST_NAMES = {
    "address": "address",
    "phone": "phone number",
    "postcode": "postcode",
    "reference": "booking reference number",
}


def _join(items: list[str]) -> str:
    if len(items) <= 1:
        return "".join(items)
    return ", ".join(items[:-1]) + " and " + items[-1]


def _search_sentence(goal: Goal) -> str:
    constraints = goal.constraint_dict
    if "name" in constraints:
        return f"You are looking for a restaurant called {constraints['name']}."
    described = []
    if constraints.get("pricerange") not in (None, DONTCARE):
        described.append(f"in the {constraints['pricerange']} price range")
    if constraints.get("food") not in (None, DONTCARE):
        described.append(f"serving {constraints['food']} food")
    if constraints.get("area") not in (None, DONTCARE):
        described.append(f"in the {constraints['area']} part of town")
    dontcares = sorted(s for s, v in constraints.items() if v == DONTCARE)
    sentence = "You are looking for a restaurant"
    if described:
        sentence += " " + _join(described)
    sentence += "."
    if dontcares:
        sentence += f" The {_join(dontcares)} does not matter."
    return sentence


def goal_instructions(goal: Goal) -> str:
    """Short imperative briefing covering search, requests, and booking."""
    parts = [_search_sentence(goal)]
    if goal.requestables:
        wanted = _join([_REQUEST_NAMES[s] for s in sorted(goal.requestables)])
        parts.append(f"Make sure you get its {wanted}.")
    if goal.booking is not None:
        book = goal.booking
        parts.append(
            "Once you find the restaurant, book a table for "
            f"{book.people} people at {book.time} on {book.day}."
        )
        parts.append("If the booking fails, ask for another time slot.")
    parts.append("Say goodbye once everything on this card is done.")
    return " ".join(parts)
