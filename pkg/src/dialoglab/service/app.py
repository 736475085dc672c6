"""HTTP JSON API over the session manager."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..errors import (
    DuplicateSurveyError,
    SessionClosedError,
    UnknownSessionError,
    UnknownSystemError,
)
from .instructions import goal_instructions
from .sessions import SessionManager, SurveyResult
from .store import survey_report


class CreateSessionBody(BaseModel):
    system_id: str


class MessageBody(BaseModel):
    text: str


class SurveyBody(BaseModel):
    solved: float
    satisfaction: int
    efficiency: int
    naturalness: int
    rule_likeness: int


def create_app(manager: SessionManager) -> FastAPI:
    app = FastAPI(title="dialoglab chat service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _handler(status: int):
        def handle(request, exc):
            return JSONResponse(status_code=status, content={"detail": str(exc)})

        return handle

    app.add_exception_handler(UnknownSystemError, _handler(404))
    app.add_exception_handler(UnknownSessionError, _handler(404))
    app.add_exception_handler(SessionClosedError, _handler(409))
    app.add_exception_handler(DuplicateSurveyError, _handler(409))
    app.add_exception_handler(ValueError, _handler(422))

    @app.get("/systems")
    def systems():
        return {"systems": manager.system_ids()}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        session = manager.create(body.system_id)
        return {
            "session_id": session.session_id,
            "system_id": session.system_id,
            "goal_text": goal_instructions(session.goal),
        }

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = manager.get(session_id)
        return {
            "session_id": session.session_id,
            "system_id": session.system_id,
            "goal_text": goal_instructions(session.goal),
            "transcript": session.transcript,
            "closed": session.closed,
            "surveyed": session.survey is not None,
        }

    @app.post("/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageBody):
        reply, done = manager.message(session_id, body.text)
        return {"reply": reply, "done": done}

    @app.post("/sessions/{session_id}/survey")
    def post_survey(session_id: str, body: SurveyBody):
        manager.survey(session_id, SurveyResult(**body.model_dump()))
        return {"stored": True}

    @app.get("/reports/surveys")
    def surveys():
        return survey_report(manager.survey_rows())

    return app
