"""Dialog state tracking: fold user and system acts into a DialogState.

Both update functions are pure; the system threads the returned state. A
repeated user act changes nothing but the turn counter, so a stuttering NLU
cannot corrupt the state.
"""

from __future__ import annotations

from dataclasses import replace

from ..domain import (
    DONTCARE,
    INFORMABLE_SLOTS,
    DialogState,
    Restaurant,
    SystemAct,
    SystemActKind,
    UserAct,
    UserActKind,
)
from ..text import normalize


def _merge(pairs: tuple[tuple[str, str], ...], update: dict[str, str]) -> tuple[tuple[str, str], ...]:
    merged = dict(pairs)
    merged.update(update)
    return tuple(sorted(merged.items()))


def _presented_still_valid(state: DialogState, changed: dict[str, str]) -> bool:
    if state.presented is None:
        return True
    for slot, value in changed.items():
        if value == DONTCARE or slot not in INFORMABLE_SLOTS:
            continue
        if normalize(state.presented.field_value(slot)) != normalize(value):
            return False
    return True


def track(state: DialogState, act: UserAct) -> DialogState:
    """State after one parsed user act."""
    kind = act.kind
    slots = act.slot_dict
    state = replace(state, turn=state.turn + 1, last_user_act=kind)
    if kind is UserActKind.INFORM_TYPE:
        return replace(state, filled_constraints=_merge(state.filled_constraints, slots))
    if kind is UserActKind.INFORM_TYPE_CHANGE:
        updated = replace(
            state, filled_constraints=_merge(state.filled_constraints, slots)
        )
        if not _presented_still_valid(state, slots):
            # the user moved to a constraint the current offer cannot satisfy
            updated = replace(updated, presented=None)
        return updated
    if kind is UserActKind.ANYTHING_ELSE:
        if state.presented is None:
            return state
        return replace(
            state,
            presented=None,
            rejected_names=state.rejected_names + (state.presented.name,),
        )
    if kind is UserActKind.REQUEST_INFO:
        return replace(state, requested=state.requested | set(slots))
    if kind is UserActKind.MAKE_RESERVATION:
        return replace(
            state,
            booking_filled=_merge(state.booking_filled, slots),
            booking_requested=True,
        )
    if kind is UserActKind.RESERVATION_CHANGE_TIME:
        update = dict(slots)
        update["time_changed"] = "true"
        return replace(
            state,
            booking_filled=_merge(state.booking_filled, update),
            booking_requested=True,
            reservation_confirmed=False,
        )
    return state  # goodbye: nothing to fold in


def apply_system_act(
    state: DialogState,
    act: SystemAct,
    restaurant: Restaurant | None = None,
) -> DialogState:
    """State after the system's own act (offers made, info handed out)."""
    kind = act.kind
    slots = act.slot_dict
    if kind is SystemActKind.PRESENT_RESULT and "name" in slots:
        if restaurant is None:
            raise ValueError("presenting a restaurant requires the db record")
        return replace(state, presented=restaurant)
    if kind is SystemActKind.PROVIDE_INFO:
        return replace(
            state,
            provided_requestables=state.provided_requestables | set(slots),
            requested=state.requested - set(slots),
        )
    if kind is SystemActKind.INFORM_RESERVATION_RESULT:
        if "reference" in slots:
            return replace(
                state,
                reservation_confirmed=True,
                provided_requestables=state.provided_requestables | {"reference"},
                requested=state.requested - {"reference"},
            )
        return replace(state, reservation_confirmed=False)
    return state
