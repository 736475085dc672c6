"""User simulators: agenda, supervised, and end-to-end variants."""

from .agenda import Agenda, AgendaConfig, AgendaItem, AgendaSimulator
from .base import SIM_IDS, ActRealizer, UserResponse, UserSimulator, next_booking_time
from .belief import belief_update, infer_system_act
from .factory import (
    SimulatorArtifacts,
    build_artifacts,
    default_corpus_path,
    grouped_user_utterances,
    make_simulator,
)
from .sl import SlSimulator
from .sle import SleSimulator
from .slmodel import (
    FEATURE_NAMES,
    USER_ACT_ORDER,
    ActModel,
    extract_training,
    sl_features,
    sl_mask,
    sl_next,
    sl_train,
    system_context,
)

__all__ = [
    "Agenda",
    "AgendaConfig",
    "AgendaItem",
    "AgendaSimulator",
    "SIM_IDS",
    "ActRealizer",
    "UserResponse",
    "UserSimulator",
    "next_booking_time",
    "belief_update",
    "infer_system_act",
    "SimulatorArtifacts",
    "build_artifacts",
    "default_corpus_path",
    "grouped_user_utterances",
    "make_simulator",
    "SlSimulator",
    "SleSimulator",
    "FEATURE_NAMES",
    "USER_ACT_ORDER",
    "ActModel",
    "extract_training",
    "sl_features",
    "sl_mask",
    "sl_next",
    "sl_train",
    "system_context",
]
