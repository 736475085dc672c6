"""Supervised next-act prediction for the SL simulator family.

A multinomial logistic regression over hand-built context features stands in
for a full seq2seq act decoder. Features come from the previous system
turn, the goal, and the belief span; training data is the annotated corpus.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..corpus.delex import ValueSpotter
from ..domain import (
    DONTCARE,
    INFORMABLE_SLOTS,
    BeliefSpan,
    Dialog,
    Goal,
    SystemAct,
    SystemActKind,
    UserAct,
    UserActKind,
)
from ..errors import InsufficientDataError
from .base import next_booking_time
from .belief import belief_update, infer_system_act

USER_ACT_ORDER = tuple(kind.value for kind in UserActKind)

SYSTEM_CONTEXTS = ("none", "request", "recommend", "select", "inform", "book_inform")

_KIND_TO_CONTEXT = {
    SystemActKind.ASK_TYPE: "request",
    SystemActKind.PRESENT_RESULT: "recommend",
    SystemActKind.PROVIDE_INFO: "inform",
    SystemActKind.ASK_RESERVATION_INFO: "book_inform",
    SystemActKind.INFORM_RESERVATION_RESULT: "book_inform",
    SystemActKind.GOODBYE: "inform",
}

FEATURE_NAMES = SYSTEM_CONTEXTS + (
    "goal_has_booking",
    "goal_has_requests",
    "any_informed",
    "requests_pending",
    "booking_failed",
    "booking_confirmed",
    "restaurant_offered",
    "reference_known",
    "requests_fulfilled",
    "open_goal_requests",
    "booking_pending",
    "bias",
)


def system_context(system_act: SystemAct | None) -> str:
    if system_act is None:
        return "none"
    return _KIND_TO_CONTEXT[system_act.kind]


def sl_features(goal: Goal, belief: BeliefSpan, context: str) -> np.ndarray:
    informed = belief.inform_dict
    book = belief.book_dict
    provided = goal.requestables & set(informed)
    flags = [
        goal.booking is not None,
        bool(goal.requestables),
        any(slot in informed for slot in INFORMABLE_SLOTS),
        bool(belief.request),
        book.get("result") == "fail",
        book.get("result") == "success",
        "name" in informed,
        "reference" in informed,
        provided == goal.requestables,
        bool(goal.requestables) and provided != goal.requestables,
        goal.booking is not None and book.get("result") != "success",
        True,
    ]
    x = np.zeros(len(FEATURE_NAMES))
    x[SYSTEM_CONTEXTS.index(context)] = 1.0
    x[len(SYSTEM_CONTEXTS):] = flags
    return x


def extract_training(
    dialogs: Iterable[Dialog],
    spotter: ValueSpotter,
) -> tuple[np.ndarray, np.ndarray]:
    """(features, class index) pairs for every annotated user turn."""
    xs: list[np.ndarray] = []
    ys: list[int] = []
    for dialog in dialogs:
        belief = BeliefSpan()
        prev_user: tuple[str, ...] | None = None
        prev_system: SystemAct | None = None
        context = "none"
        for turn in dialog.turns:
            if turn.speaker == "user":
                if not isinstance(turn.act, UserAct):
                    continue
                belief = belief_update(belief, prev_user, prev_system, spotter)
                xs.append(sl_features(dialog.goal, belief, context))
                ys.append(USER_ACT_ORDER.index(turn.act.kind.value))
                prev_user = turn.utterance
            else:
                context = turn.category if turn.category in SYSTEM_CONTEXTS else "inform"
                prev_system = infer_system_act(context, turn.utterance, spotter)
    if not xs:
        raise InsufficientDataError("no annotated user turns to train on")
    return np.vstack(xs), np.asarray(ys, dtype=np.int64)


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


@dataclass(frozen=True)
class ActModel:
    weights: np.ndarray  # (n classes, n features)
    classes: tuple[str, ...] = USER_ACT_ORDER
    feature_names: tuple[str, ...] = FEATURE_NAMES
    losses: tuple[float, ...] = ()

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        return _softmax(self.weights @ x)

    def predict(self, x: np.ndarray) -> str:
        return self.classes[int(np.argmax(self.predict_proba(x)))]

    def accuracy(self, xs: np.ndarray, ys: np.ndarray) -> float:
        probs = _softmax(xs @ self.weights.T)
        return float((probs.argmax(axis=1) == ys).mean())

    def to_json(self) -> dict:
        return {
            "classes": list(self.classes),
            "feature_names": list(self.feature_names),
            "weights": [[round(w, 12) for w in row] for row in self.weights.tolist()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ActModel":
        return cls(
            weights=np.asarray(data["weights"], dtype=np.float64),
            classes=tuple(data["classes"]),
            feature_names=tuple(data["feature_names"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1, sort_keys=True))

    @classmethod
    def load(cls, path: str | Path) -> "ActModel":
        return cls.from_json(json.loads(Path(path).read_text()))


def sl_train(
    dialogs: Sequence[Dialog],
    spotter: ValueSpotter,
    lr: float = 0.2,
    epochs: int = 400,
    l2: float = 1e-4,
) -> ActModel:
    xs, ys = extract_training(dialogs, spotter)
    if len(xs) < 100:
        raise InsufficientDataError(
            f"need at least 100 annotated user turns, got {len(xs)}"
        )
    if len(set(ys.tolist())) < 2:
        raise InsufficientDataError("degenerate corpus: a single act class")
    n, d = xs.shape
    c = len(USER_ACT_ORDER)
    onehot = np.zeros((n, c))
    onehot[np.arange(n), ys] = 1.0
    weights = np.zeros((c, d))
    losses = []
    for _ in range(epochs):
        probs = _softmax(xs @ weights.T)
        loss = float(
            -np.log(probs[np.arange(n), ys] + 1e-300).mean()
            + 0.5 * l2 * float((weights**2).sum())
        )
        losses.append(loss)
        grad = (probs - onehot).T @ xs / n + l2 * weights
        weights = weights - lr * grad
    return ActModel(weights=weights, losses=tuple(losses))


def sl_mask(goal: Goal, belief: BeliefSpan) -> dict[str, bool]:
    informed = belief.inform_dict
    book = belief.book_dict
    offered = "name" in informed
    failed = book.get("result") == "fail"
    confirmed = book.get("result") == "success"
    open_requests = _open_requests(goal, belief)
    return {
        UserActKind.INFORM_TYPE.value: True,
        UserActKind.INFORM_TYPE_CHANGE.value: any(
            slot in informed for slot in INFORMABLE_SLOTS
        ),
        UserActKind.ANYTHING_ELSE.value: offered and not confirmed,
        UserActKind.REQUEST_INFO.value: offered and bool(open_requests),
        UserActKind.MAKE_RESERVATION.value: (
            goal.booking is not None and offered and not confirmed and not failed
        ),
        UserActKind.RESERVATION_CHANGE_TIME.value: goal.booking is not None and failed,
        UserActKind.GOODBYE.value: True,
    }


def _open_requests(goal: Goal, belief: BeliefSpan) -> list[str]:
    informed = set(belief.inform_dict)
    confirmed = belief.book_dict.get("result") == "success"
    remaining = []
    for slot in sorted(goal.requestables):
        if slot in informed:
            continue
        if slot == "reference" and not confirmed:
            continue  # nothing to ask for before a booking exists
        remaining.append(slot)
    return remaining


def sl_next(
    model: ActModel,
    belief: BeliefSpan,
    goal: Goal,
    system_act: SystemAct | None,
    rng: random.Random,
) -> UserAct:
    """Sample the next user act from the model, masked to goal consistency."""
    if system_act is not None and system_act.kind is SystemActKind.GOODBYE:
        return UserAct.make(UserActKind.GOODBYE)
    probs = model.predict_proba(sl_features(goal, belief, system_context(system_act)))
    mask = sl_mask(goal, belief)
    masked = np.array(
        [p if mask[cls] else 0.0 for p, cls in zip(probs, model.classes)]
    )
    total = masked.sum()
    if total <= 0:
        return UserAct.make(UserActKind.GOODBYE)
    masked /= total
    r = rng.random()
    acc = 0.0
    kind_value = model.classes[-1]
    for p, cls in zip(masked, model.classes):
        acc += p
        if r < acc:
            kind_value = cls
            break
    return _attach_slots(UserActKind(kind_value), goal, belief, system_act, rng)


def _attach_slots(
    kind: UserActKind,
    goal: Goal,
    belief: BeliefSpan,
    system_act: SystemAct | None,
    rng: random.Random,
) -> UserAct:
    informed = belief.inform_dict
    constraints = goal.constraint_dict
    if kind is UserActKind.INFORM_TYPE:
        # an asked slot gets a direct answer: the goal value, or dontcare
        if system_act is not None and system_act.kind is SystemActKind.ASK_TYPE:
            asked = [
                s for s in sorted(system_act.slot_dict) if s in INFORMABLE_SLOTS
            ]
            if asked:
                slot = asked[0]
                return UserAct.make(kind, {slot: constraints.get(slot, DONTCARE)})
        fresh = [slot for slot in sorted(constraints) if slot not in informed]
        if fresh:
            return UserAct.make(kind, {s: constraints[s] for s in fresh[:3]})
        if constraints:
            slot = rng.choice(sorted(constraints))
            return UserAct.make(kind, {slot: constraints[slot]})
        return UserAct.make(kind, {"area": DONTCARE})
    if kind is UserActKind.INFORM_TYPE_CHANGE:
        candidates = sorted(
            slot for slot in informed if slot in INFORMABLE_SLOTS and slot != "name"
        )
        if not candidates:
            return UserAct.make(UserActKind.INFORM_TYPE, dict(constraints) or {"area": DONTCARE})
        slot = rng.choice(candidates)
        return UserAct.make(kind, {slot: constraints.get(slot, DONTCARE)})
    if kind is UserActKind.REQUEST_INFO:
        remaining = _open_requests(goal, belief)
        count = rng.randint(1, min(2, len(remaining)))
        return UserAct.make(kind, {slot: "?" for slot in remaining[:count]})
    if kind is UserActKind.MAKE_RESERVATION:
        booking = goal.booking
        assert booking is not None
        return UserAct.make(
            kind,
            {"people": str(booking.people), "day": booking.day, "time": booking.time},
        )
    if kind is UserActKind.RESERVATION_CHANGE_TIME:
        assert goal.booking is not None
        current = belief.book_dict.get("time", goal.booking.time)
        return UserAct.make(kind, {"time": next_booking_time(current)})
    return UserAct.make(kind)
