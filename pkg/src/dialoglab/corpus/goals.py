"""Goal database: extraction from corpus dialogs, balancing, and sampling."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace

from ..domain import ASK_INFO, MAKE_RESERVATION_TASK, BookingInfo, Dialog, Goal
from ..errors import InsufficientDataError
from .delex import DAYS

#: Booking value pools used when duplicated goals get fresh booking details.
BOOKING_TIMES = tuple(
    f"{h}:{m:02d}" for h in range(11, 21) for m in (0, 15, 30, 45)
)
BOOKING_PEOPLE = tuple(range(1, 9))


@dataclass(frozen=True)
class GoalDB:
    goals: tuple[Goal, ...]

    @property
    def subtask_counts(self) -> dict[str, int]:
        counts = {ASK_INFO: 0, MAKE_RESERVATION_TASK: 0}
        for goal in self.goals:
            for task in goal.subtasks:
                counts[task] += 1
        return counts

    def subtask_share(self, task: str) -> float:
        if not self.goals:
            return 0.0
        return self.subtask_counts[task] / len(self.goals)

    def to_json(self) -> dict:
        return {
            "goals": [g.to_json() for g in self.goals],
            "subtask_counts": self.subtask_counts,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GoalDB":
        return cls(tuple(Goal.from_json(g) for g in data["goals"]))


def _resampled_booking(booking: BookingInfo, rng: random.Random) -> BookingInfo:
    return BookingInfo(
        people=rng.choice(BOOKING_PEOPLE),
        day=rng.choice(DAYS),
        time=rng.choice(BOOKING_TIMES),
    )


def balance_goals(goals: list[Goal], rng: random.Random) -> list[Goal]:
    """Augment the rarer sub-task by duplicating goals with fresh booking values.

    Duplication stops once the two sub-task counts are within one of each
    other, which puts both shares well inside the 10% balance tolerance.
    """
    out = list(goals)

    def count(task: str) -> int:
        return sum(task in g.subtasks for g in out)

    donors_mr = [g for g in goals if g.subtasks == (MAKE_RESERVATION_TASK,)]
    donors_ai = [g for g in goals if g.subtasks == (ASK_INFO,)]
    i = 0
    while abs(count(MAKE_RESERVATION_TASK) - count(ASK_INFO)) > 1:
        if count(MAKE_RESERVATION_TASK) < count(ASK_INFO):
            if not donors_mr:
                break
            donor = donors_mr[i % len(donors_mr)]
            assert donor.booking is not None
            copy = replace(
                donor,
                booking=_resampled_booking(donor.booking, rng),
                goal_id=f"{donor.goal_id or 'goal'}-aug{i}",
            )
        else:
            if not donors_ai:
                break
            donor = donors_ai[i % len(donors_ai)]
            copy = replace(donor, goal_id=f"{donor.goal_id or 'goal'}-aug{i}")
        out.append(copy)
        i += 1
    return out


def build_goal_db(dialogs: list[Dialog], seed: int = 0) -> tuple[GoalDB, dict]:
    """Extract goals from dialogs and balance the two sub-tasks.

    Returns the balanced db plus a report with pre- and post-balance shares.
    """
    goals = [d.goal for d in dialogs if d.goal.subtasks]
    distinct = {
        json.dumps(replace(g, goal_id="").to_json(), sort_keys=True) for g in goals
    }
    if len(distinct) < 10:
        raise InsufficientDataError(
            f"need at least 10 distinct goals to build a goal db, got {len(distinct)}"
        )
    pre = GoalDB(tuple(goals))
    rng = random.Random(seed)
    balanced = balance_goals(goals, rng)
    db = GoalDB(tuple(balanced))
    report = {
        "pre_balance": {
            "goals": len(pre.goals),
            ASK_INFO: round(pre.subtask_share(ASK_INFO), 4),
            MAKE_RESERVATION_TASK: round(pre.subtask_share(MAKE_RESERVATION_TASK), 4),
        },
        "post_balance": {
            "goals": len(db.goals),
            ASK_INFO: round(db.subtask_share(ASK_INFO), 4),
            MAKE_RESERVATION_TASK: round(db.subtask_share(MAKE_RESERVATION_TASK), 4),
        },
    }
    return db, report


def sample_goal(db: GoalDB, rng: random.Random) -> Goal:
    """Uniform draw from the goal database."""
    if not db.goals:
        raise InsufficientDataError("cannot sample from an empty goal db")
    return rng.choice(db.goals)
