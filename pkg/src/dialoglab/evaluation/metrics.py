"""Automatic metrics for generated dialog corpora.

The reporting protocol fixes everything that could drift: each simulator
talks to the rule-based system for a seeded batch of dialogs, and language
metrics are computed over the user side of that batch. Perplexity scores a
held-out second batch under a trigram model trained on the first, so it
tracks the diversity of the simulator's own language. Every function here
is deterministic given its inputs and seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from ..corpus.annotate import classify
from ..errors import EvalError
from ..corpus.goals import sample_goal
from ..dialog_system.runner import run_dialog
from ..dialog_system.system import DialogSystem
from ..domain import Dialog, Outcome, UserAct, UserActKind
from ..nlg.ngram import TrigramLM
from ..simulator.base import UserSimulator
from ..simulator.factory import SimulatorArtifacts, make_simulator
from ..text import detokenize

PPL_TEST_CAP = 5000
HELDOUT_SEED_OFFSET = 104_729


@dataclass(frozen=True)
class MetricReport:
    sim_id: str
    ppl: float
    vocab: int
    avg_utt_len: float
    dialogs: int

    def __post_init__(self):
        if self.ppl <= 0 or self.vocab <= 0 or self.avg_utt_len <= 0:
            raise ValueError("metric values must be positive")

    def to_json(self) -> dict:
        return {
            "sim_id": self.sim_id,
            "ppl": round(self.ppl, 4),
            "vocab": self.vocab,
            "avg_utt_len": round(self.avg_utt_len, 4),
            "dialogs": self.dialogs,
        }


def simulate_corpus(
    simulator: UserSimulator,
    artifacts: SimulatorArtifacts,
    n: int = 200,
    seed: int = 0,
    system: DialogSystem | None = None,
) -> list[Dialog]:
    """n seeded conversations against the rule-based system.

    A simulator crash propagates; no partial batch is returned.
    """
    if system is None:
        system = DialogSystem(db=artifacts.db, spotter=artifacts.spotter, seed=seed)
    goal_rng = random.Random(seed + 29)
    return [
        run_dialog(simulator, system, sample_goal(artifacts.goal_db, goal_rng))
        for _ in range(n)
    ]


def user_utterances(dialogs: Iterable[Dialog]) -> list[tuple[str, ...]]:
    return [turn.utterance for dialog in dialogs for turn in dialog.user_turns()]


def trigram_ppl(
    train_dialogs: Iterable[Dialog],
    test_utterances: Sequence[Sequence[str]],
    k: float = 0.1,
) -> float:
    """Per-word perplexity of an add-k trigram model over user turns.

    The model's closed vocabulary comes from the training side; test tokens
    outside it score as the unknown symbol. End markers are scored, start
    padding is not.
    """
    train = user_utterances(train_dialogs)
    if not train:
        raise ValueError("no user turns to train the language model on")
    if not test_utterances:
        raise ValueError("no test utterances to score")
    return TrigramLM(k=k).train(train).perplexity(list(test_utterances))


def vocab_and_len(dialogs: Iterable[Dialog]) -> tuple[int, float]:
    """Distinct user-turn token count and mean user-turn length."""
    utterances = user_utterances(dialogs)
    if not utterances:
        raise ValueError("no user turns to measure")
    vocab = {token for utterance in utterances for token in utterance}
    return len(vocab), sum(len(u) for u in utterances) / len(utterances)


def metric_report(
    sim_id: str,
    artifacts: SimulatorArtifacts,
    n: int = 200,
    seed: int = 0,
) -> MetricReport:
    """Language metrics for one simulator over a seeded rule-system batch.

    Perplexity is measured on a disjoint held-out batch from the same
    simulator (seed offset by a fixed prime), under a model trained on the
    first batch: repetitive language scores low, diverse language high.
    """
    simulator = make_simulator(sim_id, artifacts, seed=seed)
    generated = simulate_corpus(simulator, artifacts, n=n, seed=seed)
    heldout_seed = seed + HELDOUT_SEED_OFFSET
    heldout = simulate_corpus(
        make_simulator(sim_id, artifacts, seed=heldout_seed),
        artifacts,
        n=n,
        seed=heldout_seed,
    )
    vocab, avg_len = vocab_and_len(generated)
    return MetricReport(
        sim_id=sim_id,
        ppl=trigram_ppl(generated, user_utterances(heldout)[:PPL_TEST_CAP]),
        vocab=vocab,
        avg_utt_len=avg_len,
        dialogs=n,
    )


def success_rate(
    sim_id: str,
    policy,
    artifacts: SimulatorArtifacts,
    episodes: int = 100,
    seed: int = 0,
) -> float:
    """Fraction of Success outcomes for a frozen system policy.

    Mirrors the freeze-and-test evaluation block used during training, so the
    same (policy, seed) pair reproduces a training checkpoint value exactly.
    """
    simulator = make_simulator(sim_id, artifacts, seed=seed)
    system = DialogSystem(
        policy=policy,
        db=artifacts.db,
        spotter=artifacts.spotter,
        seed=seed,
        system_id=getattr(policy, "policy_id", "rule"),
    )
    goal_rng = random.Random(seed + 17)
    wins = 0
    for _ in range(episodes):
        dialog = run_dialog(simulator, system, sample_goal(artifacts.goal_db, goal_rng))
        wins += dialog.outcome is Outcome.SUCCESS
    return wins / episodes


def act_histogram(dialogs: Iterable[Dialog]) -> dict[UserActKind, float]:
    """Normalized user-act frequencies; unannotated turns are regex-recovered."""
    counts = {kind: 0 for kind in UserActKind}
    total = 0
    for dialog in dialogs:
        for turn in dialog.user_turns():
            if isinstance(turn.act, UserAct):
                kind = turn.act.kind
            else:
                kind, _ = classify(detokenize(list(turn.utterance)))
            counts[kind] += 1
            total += 1
    if total == 0:
        raise ValueError("no user turns to build a histogram from")
    return {kind: count / total for kind, count in counts.items()}


def pearson(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Sample correlation with a two-sided t-test p-value (n-2 df)."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("inputs must be equal-length vectors")
    n = len(x)
    if n < 3:
        raise ValueError("need at least 3 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise EvalError("correlation undefined for zero-variance input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    if 1.0 - r * r <= 0.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return r, 2.0 * float(stats.t.sf(abs(t), n - 2))
