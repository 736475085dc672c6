"""Hand-written system policy, the shared action space, and its state mask.

The action space is the six system act kinds; `instantiate` turns a chosen
kind into a concrete act (which slot to ask, which restaurant to offer),
so a learned policy only has to pick among six indices. Booking
availability is a deterministic hash of (restaurant, day, time), giving
reproducible failures at a fixed rate.
"""

from __future__ import annotations

import hashlib
import random
from typing import Protocol, Sequence

from ..corpus.restaurants import RestaurantDB, query_db
from ..domain import (
    BOOKING_SLOTS,
    INFORMABLE_SLOTS,
    DialogState,
    SystemAct,
    SystemActKind,
    UserActKind,
)

ACTION_KINDS: tuple[SystemActKind, ...] = tuple(SystemActKind)

BOOKING_FAILURE_PERCENT = 15


class SystemPolicy(Protocol):
    def choose(
        self,
        state: DialogState,
        db: RestaurantDB,
        rng: random.Random,
        user_tokens: Sequence[str] = (),
    ) -> SystemAct: ...


def available(name: str, day: str, time: str) -> bool:
    digest = hashlib.sha1(f"{name}|{day}|{time}".encode()).digest()
    return digest[0] % 100 >= BOOKING_FAILURE_PERCENT


def booking_reference(dialog_id: str, name: str) -> str:
    ref = hashlib.sha1(f"{dialog_id}|{name}".encode()).hexdigest()[:8]
    if not any(c.isdigit() for c in ref):
        ref = ref[:7] + "4"
    return ref


def action_mask(state: DialogState) -> list[bool]:
    """Which of the six act kinds are coherent in this state.

    Goodbye is always allowed, so the mask never zeroes out completely.
    """
    offered = state.presented is not None
    return [
        True,  # ask_type
        True,  # present_result
        offered,  # provide_info
        offered,  # ask_reservation_info
        offered and state.booking_complete,  # inform_reservation_result
        True,  # goodbye
    ]


def instantiate(kind: SystemActKind, state: DialogState, db: RestaurantDB) -> SystemAct:
    """Fill in the slots for a chosen act kind."""
    if kind is SystemActKind.ASK_TYPE:
        filled = state.constraint_dict
        for slot in ("food", "area", "pricerange"):
            if slot not in filled:
                return SystemAct.make(kind, {slot: "?"})
        return SystemAct.make(kind, {"area": "?"})
    if kind is SystemActKind.PRESENT_RESULT:
        constraints = {
            slot: value
            for slot, value in state.filled_constraints
            if slot in INFORMABLE_SLOTS
        }
        matches = query_db(db, constraints)
        pool = [r for r in matches if r.name not in state.rejected_names] or matches
        if not pool:
            return SystemAct.make(kind)
        return SystemAct.make(kind, {"name": pool[0].name})
    if kind is SystemActKind.PROVIDE_INFO:
        assert state.presented is not None
        wanted = sorted(state.requested - state.provided_requestables - {"reference"})
        if not wanted:
            # unprompted: hand out whatever has not been given yet
            wanted = [
                slot
                for slot in ("address", "phone", "postcode")
                if slot not in state.provided_requestables
            ] or ["address"]
        return SystemAct.make(
            kind, {slot: state.presented.field_value(slot) for slot in wanted[:2]}
        )
    if kind is SystemActKind.ASK_RESERVATION_INFO:
        booked = state.booking_dict
        missing = [slot for slot in BOOKING_SLOTS if slot not in booked] or ["time"]
        return SystemAct.make(kind, {slot: "?" for slot in missing})
    if kind is SystemActKind.INFORM_RESERVATION_RESULT:
        assert state.presented is not None and state.booking_complete
        booked = state.booking_dict
        name = state.presented.name
        if available(name, booked["day"], booked["time"]):
            return SystemAct.make(
                kind, {"reference": booking_reference(state.dialog_id, name)}
            )
        return SystemAct.make(kind, {"result": "fail"})
    return SystemAct.make(SystemActKind.GOODBYE)


def rule_decide(state: DialogState) -> SystemActKind:
    """Deterministic act-kind choice; always consistent with action_mask."""
    if state.last_user_act is UserActKind.GOODBYE:
        return SystemActKind.GOODBYE
    if state.booking_requested and not state.reservation_confirmed:
        if state.presented is None:
            return SystemActKind.PRESENT_RESULT
        if state.booking_complete:
            return SystemActKind.INFORM_RESERVATION_RESULT
        return SystemActKind.ASK_RESERVATION_INFO
    if state.presented is not None and (
        state.requested - state.provided_requestables - {"reference"}
    ):
        return SystemActKind.PROVIDE_INFO
    if state.presented is None:
        filled = state.constraint_dict
        if "name" in filled:
            return SystemActKind.PRESENT_RESULT
        if all(slot in filled for slot in ("food", "area", "pricerange")):
            return SystemActKind.PRESENT_RESULT
        return SystemActKind.ASK_TYPE
    return SystemActKind.PRESENT_RESULT  # nothing pending: restate the offer


class RulePolicy:
    policy_id = "rule"

    def choose(
        self,
        state: DialogState,
        db: RestaurantDB,
        rng: random.Random,
        user_tokens: Sequence[str] = (),
    ) -> SystemAct:
        return instantiate(rule_decide(state), state, db)
