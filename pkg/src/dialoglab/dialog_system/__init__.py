from .nlu import Nlu, NluResult
from .policy_rule import (
    ACTION_KINDS,
    BOOKING_FAILURE_PERCENT,
    RulePolicy,
    SystemPolicy,
    action_mask,
    available,
    booking_reference,
    instantiate,
    rule_decide,
)
from .runner import run_dialog
from .system import DialogSystem, SystemResponse
from .tracker import apply_system_act, track

__all__ = [
    "ACTION_KINDS",
    "BOOKING_FAILURE_PERCENT",
    "DialogSystem",
    "Nlu",
    "NluResult",
    "RulePolicy",
    "SystemPolicy",
    "SystemResponse",
    "action_mask",
    "apply_system_act",
    "available",
    "booking_reference",
    "instantiate",
    "rule_decide",
    "run_dialog",
    "track",
]
