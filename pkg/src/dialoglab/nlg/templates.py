"""Template banks mapping delexicalized templates to surface utterances.

Bank keys are act kinds, optionally refined by a slot signature after `@`
(request combinations, dontcare answers, no-match and booking-failure
variants), so one file format covers both the user and the system side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from ..domain import DONTCARE, Restaurant, SystemAct, SystemActKind, UserAct, UserActKind
from ..errors import NlgError
from .lexicalize import lexicalize, placeholders


@dataclass(frozen=True)
class Template:
    key: str
    text: str
    placeholders: frozenset[str]


class TemplateBank:
    def __init__(self, entries: list[tuple[str, str]]):
        self._templates: dict[str, list[Template]] = {}
        for key, text in entries:
            self._templates.setdefault(key, []).append(
                Template(key, text, placeholders(text))
            )
        if not self._templates:
            raise NlgError("empty template bank")

    @classmethod
    def parse(cls, text: str) -> "TemplateBank":
        entries = []
        for line in text.splitlines():
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            key, _, template = line.partition("\t")
            if not template:
                raise NlgError(f"malformed template line: {line!r}")
            entries.append((key.strip(), template.strip()))
        return cls(entries)

    @classmethod
    def load(cls, path: str | Path) -> "TemplateBank":
        return cls.parse(Path(path).read_text())

    @classmethod
    def load_default(cls, side: str) -> "TemplateBank":
        name = {"user": "user_templates.tsv", "system": "system_templates.tsv"}[side]
        return cls.parse(resources.files("dialoglab.data").joinpath(name).read_text())

    def kinds(self) -> set[str]:
        return {key.split("@", 1)[0] for key in self._templates}

    def count(self, kind: str) -> int:
        return sum(
            len(ts) for key, ts in self._templates.items()
            if key.split("@", 1)[0] == kind
        )

    def render(self, keys: list[str], slots: Mapping[str, object], rng: random.Random) -> str:
        """Render the first key with a fillable template.

        Fillable means the template's placeholders are a subset of the
        non-dontcare slots; among fillable templates those covering the most
        slots are preferred, so no provided value is silently dropped.
        """
        fillable_slots = {
            name for name, value in slots.items() if str(value) != DONTCARE
        }
        for key in keys:
            candidates = self._templates.get(key, ())
            fillable = [t for t in candidates if t.placeholders <= fillable_slots]
            if not fillable:
                continue
            best = max(len(t.placeholders) for t in fillable)
            pool = [t for t in fillable if len(t.placeholders) == best]
            template = pool[rng.randrange(len(pool))]
            return lexicalize(template.text, slots)
        raise NlgError(f"no fillable template for keys {keys} with slots {dict(slots)}")


def user_template_keys(act: UserAct) -> list[str]:
    kind = act.kind.value
    slots = act.slot_dict
    keys = []
    if act.kind in (UserActKind.INFORM_TYPE, UserActKind.INFORM_TYPE_CHANGE):
        if len(slots) == 1:
            slot, value = next(iter(slots.items()))
            if value == DONTCARE:
                keys.append(f"{kind}@dontcare:{slot}")
    elif act.kind is UserActKind.REQUEST_INFO and slots:
        names = sorted(slots)
        keys.append(f"{kind}@{','.join(names)}")
        if len(names) > 1:
            keys.extend(f"{kind}@{name}" for name in names)
    elif act.kind is UserActKind.MAKE_RESERVATION and len(slots) in (1, 2):
        keys.append(f"{kind}@{','.join(sorted(slots))}")
    keys.append(kind)
    return keys


def render_user(bank: TemplateBank, act: UserAct, rng: random.Random) -> str:
    """Template NLG for a user act."""
    return bank.render(user_template_keys(act), act.slot_dict, rng)


def system_template_keys(act: SystemAct) -> list[str]:
    kind = act.kind.value
    slots = act.slot_dict
    keys = []
    if act.kind is SystemActKind.ASK_TYPE and slots:
        keys.append(f"{kind}@{','.join(sorted(slots))}")
    elif act.kind is SystemActKind.PRESENT_RESULT and "name" not in slots:
        keys.append(f"{kind}@nomatch")
    elif act.kind in (SystemActKind.PROVIDE_INFO, SystemActKind.ASK_RESERVATION_INFO) and slots:
        names = sorted(slots)
        keys.append(f"{kind}@{','.join(names)}")
        if len(names) > 1:
            keys.extend(f"{kind}@{name}" for name in names)
    elif act.kind is SystemActKind.INFORM_RESERVATION_RESULT:
        if slots.get("result") == "fail":
            keys.append(f"{kind}@fail")
    keys.append(kind)
    return keys


def render_system_act(
    bank: TemplateBank,
    act: SystemAct,
    rng: random.Random,
    restaurant: Restaurant | None = None,
) -> str:
    """Template NLG for a system act, with the presented restaurant as backup
    source of placeholder values."""
    slots = dict(act.slot_dict)
    if restaurant is not None:
        for field in ("name", "food", "area", "pricerange", "address", "phone", "postcode"):
            slots.setdefault(field, getattr(restaurant, field))
    slots.pop("result", None)
    return bank.render(system_template_keys(act), slots, rng)
