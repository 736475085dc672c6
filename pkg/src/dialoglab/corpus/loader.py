"""MultiWOZ-format corpus loading, filtered to the restaurant domain."""

from __future__ import annotations

import json
from pathlib import Path

from ..domain import (
    REQUESTABLE_SLOTS,
    BookingInfo,
    Dialog,
    Goal,
    Outcome,
    Turn,
)
from ..errors import CorpusError
from ..text import tokenize

#: Coarse system-act categories, from most to least specific.  A system turn
#: carrying several fine-grained acts gets the most specific category.
SYSTEM_CATEGORIES = ("book_inform", "select", "recommend", "request", "inform")

_ACT_CATEGORY = {
    "booking-inform": "book_inform",
    "booking-book": "book_inform",
    "booking-request": "book_inform",
    "booking-nobook": "book_inform",
    "restaurant-select": "select",
    "restaurant-recommend": "recommend",
    "restaurant-nooffer": "recommend",
    "restaurant-request": "request",
    "restaurant-inform": "inform",
}

_CATEGORY_RANK = {c: i for i, c in enumerate(SYSTEM_CATEGORIES)}


def system_category(act_names: list[str]) -> str:
    """Map native fine-grained act names onto one coarse category."""
    cats = [_ACT_CATEGORY.get(name.lower()) for name in act_names]
    cats = [c for c in cats if c is not None]
    if not cats:
        # greetings / generic turns carry no restaurant act
        return "inform"
    return min(cats, key=lambda c: _CATEGORY_RANK[c])


def _extract_goal(goal_rec: dict, dialog_id: str) -> Goal:
    info = goal_rec.get("info") or {}
    constraints = {
        slot: str(value)
        for slot, value in info.items()
        if slot in ("food", "area", "pricerange", "name") and str(value).strip()
    }
    requestables = {
        str(slot) for slot in goal_rec.get("reqt") or () if slot in REQUESTABLE_SLOTS
    }
    book_rec = goal_rec.get("book") or {}
    booking = None
    if all(k in book_rec for k in ("people", "day", "time")):
        booking = BookingInfo(
            people=int(book_rec["people"]),
            day=str(book_rec["day"]).lower(),
            time=str(book_rec["time"]),
        )
    return Goal.make(constraints, requestables, booking, goal_id=dialog_id)


def load_corpus(path: str | Path) -> list[Dialog]:
    """Load restaurant-domain dialogs from a MultiWOZ-format JSON file.

    User turns come back unannotated; system turns keep their native act
    annotations mapped onto the coarse categories.
    """
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(
            f"corpus file is not valid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise CorpusError("corpus file must map dialog ids to dialog records")

    dialogs: list[Dialog] = []
    for dialog_id in sorted(raw):
        record = raw[dialog_id]
        goal_rec = (record.get("goal") or {}).get("restaurant")
        if not goal_rec:
            continue
        goal = _extract_goal(goal_rec, dialog_id)
        if not goal.subtasks:
            continue
        turns: list[Turn] = []
        for i, entry in enumerate(record.get("log") or ()):
            speaker = "user" if i % 2 == 0 else "system"
            tokens = tuple(tokenize(str(entry.get("text", ""))))
            category = ""
            if speaker == "system":
                acts = entry.get("dialog_act") or {}
                category = system_category(list(acts))
            turns.append(Turn(speaker=speaker, utterance=tokens, category=category))
        dialogs.append(
            Dialog(goal=goal, turns=tuple(turns), outcome=Outcome.SUCCESS,
                   meta=(("dialog_id", dialog_id),))
        )
    if not dialogs:
        raise CorpusError(f"no restaurant-domain dialogs found in {path}")
    return dialogs
