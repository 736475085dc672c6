"""User-side belief span maintenance.

The belief span records what the user has said (constraints, open requests,
booking info) and what the system has offered. Offered values move into
`inform`; a request leaves `request` once the system fulfills it.
"""

from __future__ import annotations

from typing import Sequence

from ..corpus.annotate import annotate_utterance
from ..corpus.delex import ValueSpotter, booking_values
from ..domain import (
    BeliefSpan,
    SystemAct,
    SystemActKind,
    UserActKind,
)
from ..text import detokenize

_PROVIDED_SLOTS = ("name", "address", "phone", "postcode", "reference")

_FAIL_WORDS = frozenset(
    {"sorry", "unable", "unfortunately", "unavailable", "cannot", "failed"}
)


def belief_update(
    prev: BeliefSpan,
    prev_user_utterance: Sequence[str] | str | None,
    system_act: SystemAct | None,
    spotter: ValueSpotter | None = None,
) -> BeliefSpan:
    """Fold the user's own last utterance and the system's reply into the span."""
    inform = dict(prev.inform)
    request = set(prev.request)
    book = dict(prev.book)

    if prev_user_utterance:
        text = (
            prev_user_utterance
            if isinstance(prev_user_utterance, str)
            else detokenize(prev_user_utterance)
        )
        act, _ = annotate_utterance(text, spotter=spotter)
        if act.kind in (UserActKind.INFORM_TYPE, UserActKind.INFORM_TYPE_CHANGE):
            inform.update(act.slot_dict)
        elif act.kind is UserActKind.REQUEST_INFO:
            request.update(act.slot_dict)
        elif act.kind is UserActKind.MAKE_RESERVATION:
            book.update(act.slot_dict)
        elif act.kind is UserActKind.RESERVATION_CHANGE_TIME:
            book.update(act.slot_dict)

    if system_act is not None:
        kind = system_act.kind
        slots = system_act.slot_dict
        if kind is SystemActKind.PRESENT_RESULT:
            for slot in _PROVIDED_SLOTS:
                if slot in slots:
                    inform[slot] = slots[slot]
                    request.discard(slot)
        elif kind is SystemActKind.PROVIDE_INFO:
            for slot, value in slots.items():
                inform[slot] = value
                request.discard(slot)
        elif kind is SystemActKind.INFORM_RESERVATION_RESULT:
            if slots.get("result") == "fail":
                book["result"] = "fail"
            else:
                book["result"] = "success"
                if "reference" in slots:
                    inform["reference"] = slots["reference"]
                    request.discard("reference")
        # AskType / AskReservationInfo / Goodbye leave the span unchanged

    return BeliefSpan(
        inform=tuple(sorted(inform.items())),
        request=frozenset(request),
        book=tuple(sorted(book.items())),
    )


def infer_system_act(
    category: str,
    tokens: Sequence[str],
    spotter: ValueSpotter,
) -> SystemAct:
    """Reconstruct a coarse system act from a corpus system turn.

    Corpus system turns carry only a category label; the slot payload is
    recovered by value spotting. Used to replay corpus dialogs through
    belief_update when extracting supervised training features.
    """
    values = spotter.values(tokens)
    if category in ("recommend", "select"):
        if "name" in values:
            return SystemAct.make(SystemActKind.PRESENT_RESULT, {"name": values["name"]})
        return SystemAct.make(SystemActKind.PRESENT_RESULT)
    if category == "request":
        return SystemAct.make(SystemActKind.ASK_TYPE)
    if category == "book_inform":
        if "reference" in values:
            return SystemAct.make(
                SystemActKind.INFORM_RESERVATION_RESULT,
                {"reference": values["reference"]},
            )
        if _FAIL_WORDS.intersection(tokens):
            return SystemAct.make(
                SystemActKind.INFORM_RESERVATION_RESULT, {"result": "fail"}
            )
        return SystemAct.make(SystemActKind.ASK_RESERVATION_INFO)
    provided = {
        slot: values[slot]
        for slot in ("address", "phone", "postcode", "reference")
        if slot in values
    }
    return SystemAct.make(SystemActKind.PROVIDE_INFO, provided)
