"""One-stop construction of the six simulators from a corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..corpus.annotate import AnnotationReport, annotate_user_acts
from ..corpus.delex import ValueSpotter
from ..corpus.goals import GoalDB, build_goal_db
from ..corpus.loader import load_corpus
from ..corpus.restaurants import RestaurantDB, load_restaurant_db
from ..domain import Dialog, UserAct
from ..nlg.ngram import CondNgramLM
from ..nlg.retrieval import RetrievalBank
from ..nlg.templates import TemplateBank
from .agenda import AgendaConfig, AgendaSimulator
from .base import SIM_IDS, ActRealizer, UserSimulator
from .sl import SlSimulator
from .sle import SleSimulator
from .slmodel import ActModel, sl_train


def default_corpus_path() -> Path:
    return Path(str(resources.files("dialoglab.data").joinpath("sample_corpus.json")))


def grouped_user_utterances(
    dialogs: list[Dialog], spotter: ValueSpotter
) -> dict[str, list[list[str]]]:
    """Delexicalized user turns per annotated act kind."""
    grouped: dict[str, list[list[str]]] = {}
    for dialog in dialogs:
        for turn in dialog.turns:
            if turn.speaker == "user" and isinstance(turn.act, UserAct):
                grouped.setdefault(turn.act.kind.value, []).append(
                    spotter.delexicalize(turn.utterance)
                )
    return grouped


@dataclass(frozen=True)
class SimulatorArtifacts:
    db: RestaurantDB
    spotter: ValueSpotter
    dialogs: tuple[Dialog, ...]  # annotated corpus
    goal_db: GoalDB
    user_bank: TemplateBank
    retrieval_bank: RetrievalBank
    cond_lm: CondNgramLM
    act_model: ActModel
    annotation_report: AnnotationReport
    balance_report: dict


def build_artifacts(
    corpus_path: str | Path | None = None,
    db: RestaurantDB | None = None,
    seed: int = 0,
) -> SimulatorArtifacts:
    db = db if db is not None else load_restaurant_db()
    spotter = ValueSpotter(db)
    dialogs = load_corpus(corpus_path or default_corpus_path())
    annotated, report = annotate_user_acts(dialogs, spotter=spotter)
    goal_db, balance_report = build_goal_db(annotated, seed=seed)
    return SimulatorArtifacts(
        db=db,
        spotter=spotter,
        dialogs=tuple(annotated),
        goal_db=goal_db,
        user_bank=TemplateBank.load_default("user"),
        retrieval_bank=RetrievalBank.build(annotated, spotter),
        cond_lm=CondNgramLM().train(grouped_user_utterances(annotated, spotter)),
        act_model=sl_train(annotated, spotter),
        annotation_report=report,
        balance_report=balance_report,
    )


def _realizer(mode: str, artifacts: SimulatorArtifacts) -> ActRealizer:
    return ActRealizer(
        mode=mode,
        bank=artifacts.user_bank,
        retrieval=artifacts.retrieval_bank,
        cond_lm=artifacts.cond_lm,
    )


def make_simulator(
    sim_id: str,
    artifacts: SimulatorArtifacts,
    seed: int = 0,
    agenda_config: AgendaConfig = AgendaConfig(),
) -> UserSimulator:
    if sim_id not in SIM_IDS:
        raise ValueError(f"unknown simulator {sim_id!r}; expected one of {SIM_IDS}")
    rng = random.Random(seed)
    if sim_id.startswith("agen-"):
        mode = {"t": "template", "r": "retrieval", "g": "generation"}[sim_id[-1]]
        return AgendaSimulator(sim_id, _realizer(mode, artifacts), rng, agenda_config)
    if sim_id == "sl-e":
        return SleSimulator(artifacts.retrieval_bank, artifacts.spotter, rng)
    mode = {"t": "template", "r": "retrieval"}[sim_id[-1]]
    return SlSimulator(
        sim_id,
        artifacts.act_model,
        _realizer(mode, artifacts),
        artifacts.spotter,
        rng,
    )
