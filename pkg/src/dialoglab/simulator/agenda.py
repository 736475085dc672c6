"""Stack-based agenda dialog manager and the agenda-family simulators.

The agenda is a stack of pending user intents built from the goal: inform
the search constraints, then request information, then book, then leave.
System acts pop, answer, or (on trouble: no match, failed booking) push
corrective intents.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..domain import (
    DONTCARE,
    INFORMABLE_SLOTS,
    MAX_TURNS,
    Goal,
    SystemAct,
    SystemActKind,
    UserAct,
    UserActKind,
)
from .base import ActRealizer, UserResponse, next_booking_time


@dataclass(frozen=True)
class AgendaConfig:
    p_else: float = 0.2
    min_inform_slots: int = 1
    max_inform_slots: int = 3


@dataclass
class AgendaItem:
    kind: UserActKind
    pending: dict[str, str] = field(default_factory=dict)


class Agenda:
    """One dialog's worth of stacked user intents (top = end of list)."""

    def __init__(self, goal: Goal, config: AgendaConfig = AgendaConfig()):
        self.goal = goal
        self.config = config
        self.constraint_memory: dict[str, str] = {}
        self.informed_order: list[str] = []
        self.used_anything_else = False
        self.booking_confirmed = False
        self.attempted_time = goal.booking.time if goal.booking else None
        self.time_changed = False

        self.stack: list[AgendaItem] = [AgendaItem(UserActKind.GOODBYE)]
        requestables = set(goal.requestables)
        if goal.booking is not None:
            # the reference only exists after booking, so it is requested last
            if "reference" in requestables:
                requestables.discard("reference")
                self.stack.append(
                    AgendaItem(UserActKind.REQUEST_INFO, {"reference": "?"})
                )
            self.stack.append(
                AgendaItem(
                    UserActKind.MAKE_RESERVATION,
                    {
                        "people": str(goal.booking.people),
                        "day": goal.booking.day,
                        "time": goal.booking.time,
                    },
                )
            )
        for slot in sorted(requestables, reverse=True):
            self.stack.append(AgendaItem(UserActKind.REQUEST_INFO, {slot: "?"}))
        constraints = goal.constraint_dict
        if "name" in constraints:
            pending = {"name": constraints["name"]}
        else:
            pending = dict(sorted(constraints.items()))
        self.stack.append(AgendaItem(UserActKind.INFORM_TYPE, pending))

    @property
    def top(self) -> AgendaItem:
        return self.stack[-1]

    def size(self) -> int:
        return len(self.stack)

    # -- transitions --------------------------------------------------------

    def next_act(self, system_act: SystemAct | None, rng: random.Random) -> UserAct:
        if system_act is None:
            return self._proceed(rng)
        kind = system_act.kind
        if not isinstance(kind, SystemActKind):
            raise ValueError(f"system act outside the act set: {kind!r}")
        if kind is SystemActKind.GOODBYE:
            del self.stack[1:]
            return UserAct.make(UserActKind.GOODBYE)
        if kind is SystemActKind.ASK_TYPE:
            return self._answer_ask_type(system_act, rng)
        if kind is SystemActKind.PRESENT_RESULT:
            if "name" in system_act.slot_dict:
                return self._on_match(rng)
            return self._on_no_match(rng)
        if kind is SystemActKind.PROVIDE_INFO:
            self._drop_provided(system_act.slot_dict)
            return self._proceed(rng)
        if kind is SystemActKind.ASK_RESERVATION_INFO:
            return self._answer_booking(system_act, rng)
        if kind is SystemActKind.INFORM_RESERVATION_RESULT:
            if self.goal.booking is None:
                return self._proceed(rng)
            if system_act.slot_dict.get("result") == "fail":
                return self._change_time()
            self.booking_confirmed = True
            self._remove_booking_item()
            self._drop_provided(system_act.slot_dict)
            return self._proceed(rng)
        raise ValueError(f"system act outside the act set: {kind!r}")

    def _proceed(self, rng: random.Random) -> UserAct:
        item = self.top
        if item.kind is UserActKind.INFORM_TYPE:
            return self._emit_inform(rng)
        if item.kind is UserActKind.GOODBYE:
            return UserAct.make(UserActKind.GOODBYE)
        self.stack.pop()
        if item.kind is UserActKind.MAKE_RESERVATION:
            return UserAct.make(UserActKind.MAKE_RESERVATION, self._booking_slots())
        return UserAct.make(item.kind, dict(item.pending))

    def _emit_inform(self, rng: random.Random, first: str | None = None) -> UserAct:
        item = self.top
        k = rng.randint(self.config.min_inform_slots, self.config.max_inform_slots)
        order = list(item.pending)
        if first is not None and first in order:
            order.remove(first)
            order.insert(0, first)
        chosen = order[:k]
        slots = {slot: item.pending.pop(slot) for slot in chosen}
        for slot, value in slots.items():
            self.constraint_memory[slot] = value
            self.informed_order.append(slot)
        if not item.pending:
            self.stack.pop()
        return UserAct.make(UserActKind.INFORM_TYPE, slots)

    def _answer_ask_type(self, system_act: SystemAct, rng: random.Random) -> UserAct:
        asked = sorted(system_act.slot_dict)
        if not asked:
            return self._proceed(rng)
        slot = asked[0]
        if self.top.kind is UserActKind.INFORM_TYPE and slot in self.top.pending:
            return self._emit_inform(rng, first=slot)
        if slot in self.constraint_memory:
            return UserAct.make(
                UserActKind.INFORM_TYPE, {slot: self.constraint_memory[slot]}
            )
        goal_value = self.goal.constraint_dict.get(slot)
        value = goal_value if goal_value is not None else DONTCARE
        if slot not in INFORMABLE_SLOTS:
            value = DONTCARE
        self.constraint_memory[slot] = value
        self.informed_order.append(slot)
        return UserAct.make(UserActKind.INFORM_TYPE, {slot: value})

    def _on_match(self, rng: random.Random) -> UserAct:
        if self.top.kind is UserActKind.INFORM_TYPE and self.top.pending:
            return self._emit_inform(rng)
        if not self.used_anything_else and rng.random() < self.config.p_else:
            self.used_anything_else = True
            return UserAct.make(UserActKind.ANYTHING_ELSE)
        return self._proceed(rng)

    def _on_no_match(self, rng: random.Random) -> UserAct:
        for slot in reversed(self.informed_order):
            if self.constraint_memory.get(slot) != DONTCARE:
                self.constraint_memory[slot] = DONTCARE
                self.informed_order.append(slot)
                return UserAct.make(UserActKind.INFORM_TYPE_CHANGE, {slot: DONTCARE})
        return self._proceed(rng)

    def _answer_booking(self, system_act: SystemAct, rng: random.Random) -> UserAct:
        if self.goal.booking is None:
            return self._proceed(rng)
        booking = self._booking_slots()
        asked = [slot for slot in sorted(system_act.slot_dict) if slot in booking]
        if asked:
            booking = {slot: booking[slot] for slot in asked}
        return UserAct.make(UserActKind.MAKE_RESERVATION, booking)

    def _change_time(self) -> UserAct:
        assert self.attempted_time is not None
        self.attempted_time = next_booking_time(self.attempted_time)
        self.time_changed = True
        return UserAct.make(
            UserActKind.RESERVATION_CHANGE_TIME, {"time": self.attempted_time}
        )

    def _booking_slots(self) -> dict[str, str]:
        booking = self.goal.booking
        assert booking is not None
        return {
            "people": str(booking.people),
            "day": booking.day,
            "time": self.attempted_time or booking.time,
        }

    def _remove_booking_item(self) -> None:
        self.stack = [
            item for item in self.stack
            if item.kind is not UserActKind.MAKE_RESERVATION
        ]

    def _drop_provided(self, slots: dict[str, str]) -> None:
        provided = set(slots)
        kept = []
        for item in self.stack:
            if item.kind is UserActKind.REQUEST_INFO:
                item.pending = {
                    s: v for s, v in item.pending.items() if s not in provided
                }
                if not item.pending:
                    continue
            kept.append(item)
        self.stack = kept


class AgendaSimulator:
    """Agenda DM wired to one of the three NLG strategies."""

    def __init__(
        self,
        sim_id: str,
        realizer: ActRealizer,
        rng: random.Random,
        config: AgendaConfig = AgendaConfig(),
    ):
        self.sim_id = sim_id
        self.realizer = realizer
        self.rng = rng
        self.config = config
        self.agenda: Agenda | None = None
        self.user_turns = 0
        self.prev_user: tuple[str, ...] = ()

    def reset(self, goal: Goal) -> None:
        self.agenda = Agenda(goal, self.config)
        self.user_turns = 0
        self.prev_user = ()

    def respond(
        self,
        system_act: SystemAct | None,
        system_utterance: Sequence[str] | None,
    ) -> UserResponse:
        if self.agenda is None:
            raise RuntimeError("respond() before reset()")
        self.user_turns += 1
        if self.user_turns >= MAX_TURNS:
            act = UserAct.make(UserActKind.GOODBYE)
        else:
            act = self.agenda.next_act(system_act, self.rng)
        context = list(self.prev_user) + list(system_utterance or ())
        tokens = self.realizer.realize(act, context, self.rng)
        self.prev_user = tokens
        return UserResponse(tokens, act, act.kind is UserActKind.GOODBYE)
