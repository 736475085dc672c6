from .app import create_app
from .instructions import goal_instructions
from .sessions import Session, SessionManager, SurveyResult, replay_transcript
from .store import EventStore, survey_report

__all__ = [
    "EventStore",
    "Session",
    "SessionManager",
    "SurveyResult",
    "create_app",
    "goal_instructions",
    "replay_transcript",
    "survey_report",
]
