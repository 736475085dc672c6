"""Restaurant database: bundled fixture, MultiWOZ loading, and queries."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from ..domain import DONTCARE, INFORMABLE_SLOTS, Restaurant
from ..errors import CorpusError
from ..text import normalize


@dataclass(frozen=True)
class RestaurantDB:
    """An immutable list of restaurants with constraint queries."""

    restaurants: tuple[Restaurant, ...]

    def __len__(self) -> int:
        return len(self.restaurants)

    def by_name(self, name: str) -> Restaurant | None:
        wanted = normalize(name)
        for r in self.restaurants:
            if normalize(r.name) == wanted:
                return r
        return None

    def values(self, slot: str) -> list[str]:
        """Distinct values for one slot, sorted."""
        return sorted({getattr(r, slot) for r in self.restaurants})


def query_db(db: RestaurantDB, constraints: Mapping[str, str]) -> list[Restaurant]:
    """All restaurants satisfying every non-dontcare constraint, sorted by name.

    Unknown values simply match nothing; dontcare constraints are ignored.
    """
    for slot in constraints:
        if slot not in INFORMABLE_SLOTS:
            raise ValueError(f"query constraint on non-informable slot {slot!r}")
    wanted = {
        slot: normalize(value)
        for slot, value in constraints.items()
        if normalize(value) != DONTCARE
    }
    hits = [
        r
        for r in db.restaurants
        if all(normalize(getattr(r, slot)) == value for slot, value in wanted.items())
    ]
    return sorted(hits, key=lambda r: r.name)


def load_restaurant_db(path: str | Path | None = None) -> RestaurantDB:
    """Load a restaurant db from a MultiWOZ-style JSON file, or the bundled fixture."""
    if path is None:
        text = resources.files("dialoglab.data").joinpath("restaurants.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"restaurant db is not valid JSON: {exc}") from exc
    if not isinstance(records, list) or not records:
        raise CorpusError("restaurant db must be a non-empty JSON array")
    restaurants = []
    for rec in records:
        # MultiWOZ db rows carry extra keys (id, location, ...); some rows
        # miss a phone or postcode, which we skip rather than invent.
        try:
            restaurants.append(
                Restaurant(
                    name=normalize(str(rec["name"])),
                    food=normalize(str(rec["food"])),
                    area=normalize(str(rec["area"])),
                    pricerange=normalize(str(rec["pricerange"])),
                    address=normalize(str(rec["address"])),
                    phone=str(rec["phone"]).replace(" ", ""),
                    postcode=normalize(str(rec["postcode"])).replace(" ", ""),
                )
            )
        except KeyError:
            continue
    if not restaurants:
        raise CorpusError("restaurant db contained no usable records")
    return RestaurantDB(tuple(restaurants))
