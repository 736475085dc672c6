"""Live chat sessions: one seeded dialog system per human participant.

Each session gets its own goal, its own DialogSystem, and its own seed, so a
stored transcript can be replayed offline against a freshly built system and
must reproduce the system side byte for byte. Sessions close on the system's
goodbye, at the user-turn cap, or after sitting idle past the timeout (the
idle case is marked abandoned and never enters survey statistics).
"""

from __future__ import annotations

import random
import time
import uuid
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..corpus.goals import sample_goal
from ..dialog_system.system import DialogSystem
from ..domain import MAX_TURNS, Goal
from ..errors import (
    DuplicateSurveyError,
    SessionClosedError,
    UnknownSessionError,
    UnknownSystemError,
)
from ..rl.policy import RlPolicy, RlSystemPolicy
from ..simulator.factory import SimulatorArtifacts, build_artifacts
from ..text import detokenize
from .store import SURVEY_SCALES, EventStore

IDLE_TIMEOUT_SECONDS = 30 * 60.0


@dataclass(frozen=True)
class SurveyResult:
    solved: float
    satisfaction: int
    efficiency: int
    naturalness: int
    rule_likeness: int

    def __post_init__(self):
        if self.solved not in (0.0, 0.5, 1.0):
            raise ValueError("solved must be one of 1, 0.5 or 0")
        for scale in SURVEY_SCALES:
            value = getattr(self, scale)
            if isinstance(value, bool) or not isinstance(value, int) or not 1 <= value <= 5:
                raise ValueError(f"{scale} must be an integer from 1 to 5")

    def to_json(self) -> dict:
        payload = {"solved": float(self.solved)}
        payload.update({scale: getattr(self, scale) for scale in SURVEY_SCALES})
        return payload


@dataclass
class Session:
    session_id: str
    system_id: str
    goal: Goal
    system: DialogSystem
    seed: int
    created: float
    last_active: float
    transcript: list[dict] = field(default_factory=list)
    closed: bool = False
    abandoned: bool = False
    survey: SurveyResult | None = None

    @property
    def user_message_count(self) -> int:
        return sum(1 for turn in self.transcript if turn["speaker"] == "user")


def build_system(
    system_id: str,
    seed: int,
    artifacts: SimulatorArtifacts,
    policies: Mapping[str, RlPolicy],
) -> DialogSystem:
    if system_id == "rule":
        policy = None
    elif system_id in policies:
        policy = RlSystemPolicy(policies[system_id], epsilon=0.0)
    else:
        known = ", ".join(["rule", *sorted(policies)])
        raise UnknownSystemError(f"unknown system {system_id!r}; available: {known}")
    return DialogSystem(
        policy=policy,
        db=artifacts.db,
        spotter=artifacts.spotter,
        seed=seed,
        system_id=system_id,
    )


class SessionManager:
    def __init__(
        self,
        artifacts: SimulatorArtifacts | None = None,
        policies: Mapping[str, RlPolicy] | None = None,
        store: EventStore | None = None,
        seed: int = 0,
        idle_timeout: float = IDLE_TIMEOUT_SECONDS,
        clock=time.time,
    ):
        self.artifacts = artifacts if artifacts is not None else build_artifacts()
        self.policies = dict(policies or {})
        self.store = store
        self.seed = seed
        self.idle_timeout = idle_timeout
        self.clock = clock
        self.sessions: dict[str, Session] = {}
        self._counter = 0
        self._goal_rng = random.Random(seed * 9176 + 11)

    def system_ids(self) -> list[str]:
        return ["rule", *sorted(self.policies)]

    def _log(self, record: dict) -> None:
        if self.store is not None:
            self.store.append(record)

    def create(self, system_id: str) -> Session:
        session_seed = self.seed * 50_021 + self._counter
        system = build_system(system_id, session_seed, self.artifacts, self.policies)
        self._counter += 1
        session_id = uuid.uuid4().hex[:16]
        system.reset(dialog_id=session_id)
        now = self.clock()
        session = Session(
            session_id=session_id,
            system_id=system_id,
            goal=sample_goal(self.artifacts.goal_db, self._goal_rng),
            system=system,
            seed=session_seed,
            created=now,
            last_active=now,
        )
        self.sessions[session_id] = session
        self._log(
            {
                "kind": "session",
                "session_id": session_id,
                "system_id": system_id,
                "seed": session_seed,
                "goal": session.goal.to_json(),
                "ts": now,
            }
        )
        return session

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        self._sweep(session)
        return session

    def _sweep(self, session: Session) -> None:
        if not session.closed and self.clock() - session.last_active > self.idle_timeout:
            session.closed = True
            session.abandoned = True
            self._log(
                {
                    "kind": "abandoned",
                    "session_id": session.session_id,
                    "ts": self.clock(),
                }
            )

    def sweep_idle(self) -> int:
        before = sum(s.abandoned for s in self.sessions.values())
        for session in self.sessions.values():
            self._sweep(session)
        return sum(s.abandoned for s in self.sessions.values()) - before

    def message(self, session_id: str, text: str) -> tuple[str, bool]:
        session = self.get(session_id)
        if session.closed:
            raise SessionClosedError("session no longer accepts messages")
        text = text.strip()
        if not text:
            raise ValueError("message text must not be empty")
        response = session.system.respond(text)
        reply = detokenize(list(response.utterance))
        now = self.clock()
        session.last_active = now
        session.transcript.append({"speaker": "user", "text": text})
        session.transcript.append({"speaker": "system", "text": reply})
        done = response.done or session.user_message_count >= MAX_TURNS
        if done:
            session.closed = True
        self._log(
            {
                "kind": "message",
                "session_id": session_id,
                "user": text,
                "reply": reply,
                "done": done,
                "ts": now,
            }
        )
        return reply, done

    def survey(self, session_id: str, survey: SurveyResult) -> None:
        session = self.get(session_id)
        if session.abandoned:
            raise SessionClosedError("abandoned sessions are excluded from surveys")
        if not session.closed:
            raise SessionClosedError("finish the conversation before the survey")
        if session.survey is not None:
            raise DuplicateSurveyError("session already surveyed")
        session.survey = survey
        self._log(
            {
                "kind": "survey",
                "session_id": session_id,
                "system_id": session.system_id,
                "ts": self.clock(),
                **survey.to_json(),
            }
        )

    def survey_rows(self) -> list[dict]:
        if self.store is not None:
            return [r for r in self.store.records() if r.get("kind") == "survey"]
        return [
            {"system_id": s.system_id, **s.survey.to_json()}
            for s in self.sessions.values()
            if s.survey is not None
        ]


def replay_transcript(
    session_record: dict,
    user_messages: Sequence[str],
    artifacts: SimulatorArtifacts,
    policies: Mapping[str, RlPolicy] | None = None,
) -> list[str]:
    """Rebuild the session's system and feed it the stored user side."""
    system = build_system(
        session_record["system_id"],
        session_record["seed"],
        artifacts,
        dict(policies or {}),
    )
    system.reset(dialog_id=session_record["session_id"])
    replies = []
    for text in user_messages:
        response = system.respond(text)
        replies.append(detokenize(list(response.utterance)))
    return replies
