"""Regular-expression annotation of user dialog acts.

Rules fire on the normalized utterance string; the highest-priority rule with
any matching pattern wins, and utterances nothing matches fall back to a bare
InformType (counted in the report).  Slot payloads are filled separately from
spotted values, requestable keywords, and dontcare phrases, so an act keeps
its slots even when classification is driven by a single keyword.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace as dc_replace
from functools import lru_cache
from typing import Iterable, Sequence

from ..domain import DONTCARE, Dialog, Turn, UserAct, UserActKind
from ..text import normalize, tokenize
from .delex import ValueSpotter, booking_values


# corpus ingestion tokenizes the same normalized string several times; a tiny
# cache keeps that linear
@lru_cache(maxsize=4096)
def _tokenize_cached(text: str) -> tuple[str, ...]:
    return tuple(tokenize(text))


def tokenize_cached(text: str) -> tuple[str, ...]:
    return _tokenize_cached(text)


@dataclass(frozen=True)
class AnnotationRule:
    act: UserActKind
    patterns: tuple[re.Pattern[str], ...]
    priority: int

    def matches(self, text: str) -> bool:
        return any(p.search(text) for p in self.patterns)


def _rule(act: UserActKind, priority: int, *patterns: str) -> AnnotationRule:
    return AnnotationRule(act, tuple(re.compile(p) for p in patterns), priority)


_TIME = r"\d{1,2}:\d{2}"

DEFAULT_RULES: tuple[AnnotationRule, ...] = (
    _rule(
        UserActKind.GOODBYE,
        70,
        r"\bgood\s?bye\b",
        r"\bbye\b",
        r"\bthat(?:'?s| is| will be)? (?:all|everything)\b",
        r"^\W*(?:ok(?:ay)?\W+)?thank(?:s| you)?(?:\s+(?:so much|very much|a lot))?\W*$",
        r"\bthank(?:s| you)? for (?:all )?(?:your|the) help\b",
        r"\bi'?m (?:all )?(?:set|done)\b",
        r"\bhave a (?:good|nice|great) (?:day|one)\b",
    ),
    _rule(
        UserActKind.RESERVATION_CHANGE_TIME,
        60,
        r"\b(?:change|move|push|switch)\b.*\b(?:time|booking|reservation)\b",
        r"\b(?:how|what) about\b.*\b" + _TIME + r"\b",
        r"\btry\b.*\b" + _TIME + r"\b",
        r"\b" + _TIME + r"\b.*\binstead\b",
        r"\binstead\b.*\b" + _TIME + r"\b",
        r"\b" + _TIME + r"\s+then\b",
    ),
    _rule(
        UserActKind.MAKE_RESERVATION,
        50,
        r"\bbook(?:ing|ed)?\b",
        r"\breserve\b",
        r"\breservation\b",
        r"\btable for\b",
    ),
    _rule(
        UserActKind.INFORM_TYPE_CHANGE,
        40,
        r"\b(?:how|what) about\b",
        r"\binstead\b",
        r"\blets try\b.*\b(?:food|cuisine|restaurant|place)\b",
        r"\b(?:is )?(?:fine|ok(?:ay)?|matter|works?) then\b",
        r"\bforget (?:the|about)\b",
        r"\bswitch to\b",
    ),
    _rule(
        UserActKind.ANYTHING_ELSE,
        30,
        r"\banything else\b",
        r"\bany other\b",
        r"\bsomething else\b",
        r"\banother (?:one|place|restaurant|option|choice|suggestion)\b",
        r"\bother (?:options|choices|restaurants|suggestions|places)\b",
        r"\ba different (?:one|place|restaurant|option)\b",
    ),
    _rule(
        UserActKind.REQUEST_INFO,
        20,
        r"\baddress\b|\blocated\b|\blocation\b|\bwhere (?:is|are)\b",
        r"\bphone\b|\btelephone\b|\bcontact\b",
        r"\bpostcode\b|\bpost code\b|\bzip\b",
        r"\breference\b|\bconfirmation number\b|\bbooking number\b",
    ),
    # fallback: matches anything
    _rule(UserActKind.INFORM_TYPE, 10, r""),
)

_REQUESTABLE_PATTERNS: tuple[tuple[str, re.Pattern[str]], ...] = (
    ("address", re.compile(r"\baddress\b|\blocated\b|\blocation\b|\bwhere (?:is|are)\b")),
    ("phone", re.compile(r"\bphone\b|\btelephone\b|\bcontact\b")),
    ("postcode", re.compile(r"\bpostcode\b|\bpost code\b|\bzip\b")),
    ("reference", re.compile(r"\breference\b|\bconfirmation number\b|\bbooking number\b")),
)

_DONTCARE_PATTERNS: tuple[tuple[str, re.Pattern[str]], ...] = (
    ("food", re.compile(
        r"\bany (?:kind|type|sort) of food\b|\bany (?:food|cuisine)\b"
        r"|\bfood (?:does not|doesn'?t) matter\b")),
    ("area", re.compile(
        r"\bany (?:area|part of town)\b|\banywhere\b"
        r"|\barea (?:does not|doesn'?t) matter\b")),
    ("pricerange", re.compile(
        r"\bany price(?: range)?\b|\bprice (?:range )?(?:does not|doesn'?t) matter\b"
        r"|\bdon'?t care about the price\b|\bdo not care about the price\b")),
)


def _validate_rules(rules: Sequence[AnnotationRule]) -> None:
    priorities = [r.priority for r in rules]
    if len(set(priorities)) != len(priorities):
        raise ValueError("annotation rule priorities must be unique")
    covered = {r.act for r in rules}
    missing = set(UserActKind) - covered
    if missing:
        raise ValueError(f"no annotation rule for acts: {sorted(a.value for a in missing)}")


def classify(text: str, rules: Sequence[AnnotationRule] = DEFAULT_RULES) -> tuple[UserActKind, bool]:
    """Classify one utterance; returns (act kind, whether a non-fallback rule fired)."""
    norm = normalize(text)
    best: AnnotationRule | None = None
    for rule in rules:
        if (best is None or rule.priority > best.priority) and rule.matches(norm):
            best = rule
    if best is None:  # only possible with a custom rule set lacking a fallback
        return UserActKind.INFORM_TYPE, False
    fallback = not any(p.pattern for p in best.patterns)
    return best.act, not fallback


def extract_slots(kind: UserActKind, text: str, spotter: ValueSpotter | None) -> dict[str, str]:
    """Slot payload for a classified utterance."""
    norm = normalize(text)
    slots: dict[str, str] = {}
    if kind in (UserActKind.INFORM_TYPE, UserActKind.INFORM_TYPE_CHANGE):
        if spotter is not None:
            spotted = spotter.values(tokenize_cached(norm))
            for slot in ("food", "area", "pricerange", "name"):
                if slot in spotted:
                    slots[slot] = spotted[slot]
        for slot, pattern in _DONTCARE_PATTERNS:
            if pattern.search(norm):
                slots[slot] = DONTCARE
    elif kind is UserActKind.REQUEST_INFO:
        for slot, pattern in _REQUESTABLE_PATTERNS:
            if pattern.search(norm):
                slots[slot] = "?"
    elif kind is UserActKind.MAKE_RESERVATION:
        if spotter is not None:
            slots.update(booking_values(spotter.values(tokenize_cached(norm))))
    elif kind is UserActKind.RESERVATION_CHANGE_TIME:
        match = re.search(r"\b(\d{1,2}:\d{2})\b", norm)
        if match:
            slots["time"] = match.group(1)
    return slots


def annotate_utterance(
    text: str,
    rules: Sequence[AnnotationRule] = DEFAULT_RULES,
    spotter: ValueSpotter | None = None,
) -> tuple[UserAct, bool]:
    kind, matched = classify(text, rules)
    return UserAct.make(kind, extract_slots(kind, text, spotter)), matched


@dataclass
class AnnotationReport:
    total_turns: int = 0
    matched_turns: int = 0
    act_counts: dict[str, int] = field(default_factory=dict)

    @property
    def match_rate(self) -> float:
        return self.matched_turns / self.total_turns if self.total_turns else 0.0

    def to_json(self) -> dict:
        return {
            "total_turns": self.total_turns,
            "matched_turns": self.matched_turns,
            "match_rate": round(self.match_rate, 4),
            "act_counts": dict(sorted(self.act_counts.items())),
        }


def annotate_user_acts(
    dialogs: Iterable[Dialog],
    rules: Sequence[AnnotationRule] = DEFAULT_RULES,
    spotter: ValueSpotter | None = None,
) -> tuple[list[Dialog], AnnotationReport]:
    """Attach exactly one UserAct to every user turn of every dialog."""
    _validate_rules(rules)
    report = AnnotationReport()
    out: list[Dialog] = []
    for dialog in dialogs:
        turns: list[Turn] = []
        for turn in dialog.turns:
            if turn.speaker != "user":
                turns.append(turn)
                continue
            act, matched = annotate_utterance(" ".join(turn.utterance), rules, spotter)
            report.total_turns += 1
            report.matched_turns += int(matched)
            report.act_counts[act.kind.value] = report.act_counts.get(act.kind.value, 0) + 1
            turns.append(dc_replace(turn, act=act))
        out.append(dc_replace(dialog, turns=tuple(turns)))
    return out, report
