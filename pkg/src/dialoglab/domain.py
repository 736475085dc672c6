"""Core domain types: slots, dialog acts, goals, states, and transcripts.

All types are immutable value objects with canonical JSON encodings, so they
can be shared freely between concurrent episodes and persisted as
one-object-per-line transcript files.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping

from .text import normalize

# --------------------------------------------------------------------------
# Slots

INFORMABLE_SLOTS = ("food", "area", "pricerange", "name")
REQUESTABLE_SLOTS = ("address", "phone", "postcode", "reference")
BOOKING_SLOTS = ("people", "day", "time")

ALL_SLOTS = INFORMABLE_SLOTS + REQUESTABLE_SLOTS + BOOKING_SLOTS

#: Sentinel value meaning "the user does not care about this slot".  A query
#: ignores dontcare constraints, and goal satisfaction treats a dontcare-filled
#: slot as a legitimately relaxed one.
DONTCARE = "dontcare"


def slot_category(slot: str) -> str:
    """Return the category (informable/requestable/booking) of a slot."""
    if slot in INFORMABLE_SLOTS:
        return "informable"
    if slot in REQUESTABLE_SLOTS:
        return "requestable"
    if slot in BOOKING_SLOTS:
        return "booking"
    raise ValueError(f"unknown slot: {slot!r}")


# --------------------------------------------------------------------------
# Dialog acts

class UserActKind(str, enum.Enum):
    """The seven user dialog acts, in their canonical order."""

    INFORM_TYPE = "inform_type"
    INFORM_TYPE_CHANGE = "inform_type_change"
    ANYTHING_ELSE = "anything_else"
    REQUEST_INFO = "request_info"
    MAKE_RESERVATION = "make_reservation"
    RESERVATION_CHANGE_TIME = "reservation_change_time"
    GOODBYE = "goodbye"


class SystemActKind(str, enum.Enum):
    """The six system dialog acts forming the RL action space."""

    ASK_TYPE = "ask_type"
    PRESENT_RESULT = "present_result"
    PROVIDE_INFO = "provide_info"
    ASK_RESERVATION_INFO = "ask_reservation_info"
    INFORM_RESERVATION_RESULT = "inform_reservation_result"
    GOODBYE = "goodbye"


SYSTEM_ACTS = tuple(SystemActKind)

# Which slot categories an act may carry.
_USER_ACT_SLOTS: dict[UserActKind, tuple[str, ...]] = {
    UserActKind.INFORM_TYPE: INFORMABLE_SLOTS,
    UserActKind.INFORM_TYPE_CHANGE: INFORMABLE_SLOTS,
    UserActKind.ANYTHING_ELSE: (),
    UserActKind.REQUEST_INFO: REQUESTABLE_SLOTS,
    UserActKind.MAKE_RESERVATION: BOOKING_SLOTS,
    UserActKind.RESERVATION_CHANGE_TIME: ("time",),
    UserActKind.GOODBYE: (),
}


def _frozen_slots(slots: Mapping[str, str] | None) -> tuple[tuple[str, str], ...]:
    if not slots:
        return ()
    return tuple(sorted((str(k), str(v)) for k, v in slots.items()))


@dataclass(frozen=True)
class UserAct:
    """A user dialog act with its slot-value payload."""

    kind: UserActKind
    slots: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        allowed = _USER_ACT_SLOTS[self.kind]
        for slot, _ in self.slots:
            if slot not in allowed:
                raise ValueError(f"slot {slot!r} not allowed on act {self.kind.value}")

    @classmethod
    def make(cls, kind: UserActKind | str, slots: Mapping[str, str] | None = None) -> "UserAct":
        return cls(UserActKind(kind), _frozen_slots(slots))

    @property
    def slot_dict(self) -> dict[str, str]:
        return dict(self.slots)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "slots": dict(self.slots)}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "UserAct":
        return cls.make(data["kind"], data.get("slots"))


@dataclass(frozen=True)
class SystemAct:
    """A system dialog act with its slot-value payload."""

    kind: SystemActKind
    slots: tuple[tuple[str, str], ...] = ()

    @classmethod
    def make(cls, kind: SystemActKind | str, slots: Mapping[str, str] | None = None) -> "SystemAct":
        return cls(SystemActKind(kind), _frozen_slots(slots))

    @property
    def slot_dict(self) -> dict[str, str]:
        return dict(self.slots)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "slots": dict(self.slots)}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SystemAct":
        return cls.make(data["kind"], data.get("slots"))


# --------------------------------------------------------------------------
# Goals

ASK_INFO = "ask_info"
MAKE_RESERVATION_TASK = "make_reservation"


@dataclass(frozen=True)
class BookingInfo:
    """A reservation request: party size, weekday, and clock time.

    ``time_changed`` records that the user moved the time after a failed
    booking attempt, which makes a confirmed non-goal time count as success.
    """

    people: int
    day: str
    time: str
    time_changed: bool = False

    def to_json(self) -> dict[str, Any]:
        return {
            "people": self.people,
            "day": self.day,
            "time": self.time,
            "time_changed": self.time_changed,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "BookingInfo":
        return cls(
            people=int(data["people"]),
            day=str(data["day"]),
            time=str(data["time"]),
            time_changed=bool(data.get("time_changed", False)),
        )


@dataclass(frozen=True)
class Goal:
    """The user's agenda: search constraints, requests, and an optional booking."""

    constraints: tuple[tuple[str, str], ...] = ()
    requestables: frozenset[str] = frozenset()
    booking: BookingInfo | None = None
    goal_id: str = ""

    @classmethod
    def make(
        cls,
        constraints: Mapping[str, str] | None = None,
        requestables: Iterable[str] = (),
        booking: BookingInfo | None = None,
        goal_id: str = "",
    ) -> "Goal":
        return cls(
            constraints=_frozen_slots(constraints),
            requestables=frozenset(requestables),
            booking=booking,
            goal_id=goal_id,
        )

    @property
    def constraint_dict(self) -> dict[str, str]:
        return dict(self.constraints)

    @property
    def subtasks(self) -> tuple[str, ...]:
        """Sub-tasks implied by the goal: ask_info iff requests, make_reservation iff booking."""
        tasks = []
        if self.requestables:
            tasks.append(ASK_INFO)
        if self.booking is not None:
            tasks.append(MAKE_RESERVATION_TASK)
        return tuple(tasks)

    def validate(self) -> None:
        """Check the structural invariants of a usable goal."""
        if not self.subtasks:
            raise ValueError("goal has no sub-tasks (no requestables and no booking)")
        for slot, _ in self.constraints:
            if slot not in INFORMABLE_SLOTS:
                raise ValueError(f"goal constraint on non-informable slot {slot!r}")
        for slot in self.requestables:
            if slot not in REQUESTABLE_SLOTS:
                raise ValueError(f"goal requestable {slot!r} is not a requestable slot")

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.goal_id,
            "constraints": dict(self.constraints),
            "requestables": sorted(self.requestables),
            "booking": self.booking.to_json() if self.booking else None,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Goal":
        booking = data.get("booking")
        return cls.make(
            constraints=data.get("constraints"),
            requestables=data.get("requestables", ()),
            booking=BookingInfo.from_json(booking) if booking else None,
            goal_id=data.get("id", ""),
        )


# --------------------------------------------------------------------------
# Restaurants

@dataclass(frozen=True)
class Restaurant:
    name: str
    food: str
    area: str
    pricerange: str
    address: str
    phone: str
    postcode: str

    def field_value(self, slot: str) -> str:
        return getattr(self, slot)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "food": self.food,
            "area": self.area,
            "pricerange": self.pricerange,
            "address": self.address,
            "phone": self.phone,
            "postcode": self.postcode,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Restaurant":
        return cls(**{k: str(data[k]) for k in (
            "name", "food", "area", "pricerange", "address", "phone", "postcode")})


# --------------------------------------------------------------------------
# Dialog state (system side)

@dataclass(frozen=True)
class DialogState:
    """System-side tracked state, threaded through one dialog.

    Beyond the core fields, the tracker keeps the bookkeeping the rule policy
    needs: which requestables the user asked for, whether a reservation was
    requested, the last user act, and restaurants already rejected via
    "anything else".
    """

    filled_constraints: tuple[tuple[str, str], ...] = ()
    presented: Restaurant | None = None
    provided_requestables: frozenset[str] = frozenset()
    booking_filled: tuple[tuple[str, str], ...] = ()
    reservation_confirmed: bool = False
    turn: int = 0
    # tracker bookkeeping
    requested: frozenset[str] = frozenset()
    booking_requested: bool = False
    last_user_act: UserActKind | None = None
    rejected_names: tuple[str, ...] = ()
    dialog_id: str = ""

    @property
    def constraint_dict(self) -> dict[str, str]:
        return dict(self.filled_constraints)

    @property
    def booking_dict(self) -> dict[str, str]:
        return dict(self.booking_filled)

    @property
    def booking_complete(self) -> bool:
        filled = self.booking_dict
        return all(slot in filled for slot in BOOKING_SLOTS)

    def to_json(self) -> dict[str, Any]:
        return {
            "filled_constraints": dict(self.filled_constraints),
            "presented": self.presented.to_json() if self.presented else None,
            "provided_requestables": sorted(self.provided_requestables),
            "booking_filled": dict(self.booking_filled),
            "reservation_confirmed": self.reservation_confirmed,
            "turn": self.turn,
            "requested": sorted(self.requested),
            "booking_requested": self.booking_requested,
            "last_user_act": self.last_user_act.value if self.last_user_act else None,
            "rejected_names": list(self.rejected_names),
            "dialog_id": self.dialog_id,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "DialogState":
        presented = data.get("presented")
        last_act = data.get("last_user_act")
        return cls(
            filled_constraints=_frozen_slots(data.get("filled_constraints")),
            presented=Restaurant.from_json(presented) if presented else None,
            provided_requestables=frozenset(data.get("provided_requestables", ())),
            booking_filled=_frozen_slots(data.get("booking_filled")),
            reservation_confirmed=bool(data.get("reservation_confirmed", False)),
            turn=int(data.get("turn", 0)),
            requested=frozenset(data.get("requested", ())),
            booking_requested=bool(data.get("booking_requested", False)),
            last_user_act=UserActKind(last_act) if last_act else None,
            rejected_names=tuple(data.get("rejected_names", ())),
            dialog_id=str(data.get("dialog_id", "")),
        )


# --------------------------------------------------------------------------
# Belief span (user side)

@dataclass(frozen=True)
class BeliefSpan:
    """User-side memory of offered values, open requests, and booking state."""

    inform: tuple[tuple[str, str], ...] = ()
    request: frozenset[str] = frozenset()
    book: tuple[tuple[str, str], ...] = ()

    @property
    def inform_dict(self) -> dict[str, str]:
        return dict(self.inform)

    @property
    def book_dict(self) -> dict[str, str]:
        return dict(self.book)

    def to_json(self) -> dict[str, Any]:
        return {
            "inform": dict(self.inform),
            "request": sorted(self.request),
            "book": dict(self.book),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "BeliefSpan":
        return cls(
            inform=_frozen_slots(data.get("inform")),
            request=frozenset(data.get("request", ())),
            book=_frozen_slots(data.get("book")),
        )


# --------------------------------------------------------------------------
# Transcripts

MAX_TURNS = 10


class Outcome(str, enum.Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    ONGOING = "ongoing"


@dataclass(frozen=True)
class Turn:
    speaker: str  # "user" | "system"
    utterance: tuple[str, ...]
    act: UserAct | SystemAct | None = None
    state: DialogState | None = None  # snapshot after the exchange, on system turns
    category: str = ""  # coarse system-act category on system turns

    def to_json(self) -> dict[str, Any]:
        return {
            "speaker": self.speaker,
            "utterance": list(self.utterance),
            "act": self.act.to_json() if self.act else None,
            "state": self.state.to_json() if self.state else None,
            "category": self.category,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Turn":
        act_data = data.get("act")
        act: UserAct | SystemAct | None = None
        if act_data:
            if data["speaker"] == "user":
                act = UserAct.from_json(act_data)
            else:
                act = SystemAct.from_json(act_data)
        state_data = data.get("state")
        return cls(
            speaker=str(data["speaker"]),
            utterance=tuple(data["utterance"]),
            act=act,
            state=DialogState.from_json(state_data) if state_data else None,
            category=str(data.get("category", "")),
        )


@dataclass(frozen=True)
class Dialog:
    goal: Goal
    turns: tuple[Turn, ...] = ()
    outcome: Outcome = Outcome.ONGOING
    meta: tuple[tuple[str, str], ...] = ()

    def user_turns(self) -> list[Turn]:
        return [t for t in self.turns if t.speaker == "user"]

    def system_turns(self) -> list[Turn]:
        return [t for t in self.turns if t.speaker == "system"]

    def to_json(self) -> dict[str, Any]:
        return {
            "goal": self.goal.to_json(),
            "turns": [t.to_json() for t in self.turns],
            "outcome": self.outcome.value,
            "meta": dict(self.meta),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Dialog":
        return cls(
            goal=Goal.from_json(data["goal"]),
            turns=tuple(Turn.from_json(t) for t in data["turns"]),
            outcome=Outcome(data.get("outcome", "ongoing")),
            meta=tuple(sorted((str(k), str(v)) for k, v in data.get("meta", {}).items())),
        )


def dump_dialogs(dialogs: Iterable[Dialog]) -> str:
    """Serialize dialogs as one JSON object per line."""
    return "".join(json.dumps(d.to_json(), sort_keys=True) + "\n" for d in dialogs)


def load_dialogs(text: str) -> list[Dialog]:
    return [Dialog.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


# --------------------------------------------------------------------------
# Goal satisfaction

def _values_match(a: str, b: str) -> bool:
    return normalize(a) == normalize(b)


def _constraints_satisfied(goal: Goal, state: DialogState) -> bool:
    if state.presented is None:
        return not goal.constraints
    constraints = goal.constraint_dict
    filled = state.constraint_dict
    # A user asking for a restaurant by name does not need food/area/price to
    # match: the name constraint short-circuits the rest.
    if "name" in constraints:
        return _values_match(state.presented.name, constraints["name"])
    for slot, value in constraints.items():
        if filled.get(slot) == DONTCARE:
            # Legitimately relaxed after a failed search; any value is fine.
            continue
        if not _values_match(state.presented.field_value(slot), value):
            return False
    return True


def _booking_satisfied(goal: Goal, state: DialogState) -> bool:
    if goal.booking is None:
        return True
    if not (state.reservation_confirmed and state.booking_complete):
        return False
    booked = state.booking_dict
    if not _values_match(booked["day"], goal.booking.day):
        return False
    if str(booked["people"]) != str(goal.booking.people):
        return False
    if booked.get("time_changed") == "true":
        # The user moved the time after a failed booking; the confirmed time
        # is whatever they last asked for.
        return True
    return _values_match(booked["time"], goal.booking.time)


def goal_satisfied(goal: Goal, state: DialogState) -> Outcome:
    """Decide Success/Failure/Ongoing for a goal against a tracked state.

    Success requires a presented restaurant satisfying the constraints (modulo
    legitimate relaxation), every requested slot provided, and a confirmed
    matching reservation when the goal has one.  Failure means the turn cap
    was reached without success.
    """
    success = (
        _constraints_satisfied(goal, state)
        and goal.requestables <= state.provided_requestables
        and _booking_satisfied(goal, state)
    )
    if success:
        return Outcome.SUCCESS
    if state.turn >= MAX_TURNS:
        return Outcome.FAILURE
    return Outcome.ONGOING


__all__ = [
    "ALL_SLOTS",
    "ASK_INFO",
    "BOOKING_SLOTS",
    "BeliefSpan",
    "BookingInfo",
    "DONTCARE",
    "Dialog",
    "DialogState",
    "Goal",
    "INFORMABLE_SLOTS",
    "MAKE_RESERVATION_TASK",
    "MAX_TURNS",
    "Outcome",
    "REQUESTABLE_SLOTS",
    "Restaurant",
    "SYSTEM_ACTS",
    "SystemAct",
    "SystemActKind",
    "Turn",
    "UserAct",
    "UserActKind",
    "dump_dialogs",
    "goal_satisfied",
    "load_dialogs",
    "replace",
    "slot_category",
]
