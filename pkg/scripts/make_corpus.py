#!/usr/bin/env python3
"""Generate the bundled sample corpus of restaurant dialogs.

Writes a MultiWOZ-style JSON file: dialog ids mapping to a goal record and a
log of alternating user/system turns, with dialog-act annotations on system
turns.  Deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import random
import string
from collections import Counter
from pathlib import Path

from dialoglab.corpus.restaurants import load_restaurant_db, query_db
from dialoglab.text import tokenize

SEED = 20240824

DAYS = ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")
TIMES = tuple(f"{h}:{m:02d}" for h in range(11, 21) for m in (0, 15, 30, 45))
MISSING_FOODS = ("persian", "vegetarian", "russian", "swedish", "caribbean")

PRICE_WORDS = {
    "cheap": ("cheap", "cheap", "inexpensive", "cheap", "budget friendly"),
    "moderate": ("moderately priced", "moderate", "moderately priced", "mid priced"),
    "expensive": ("expensive", "expensive", "upscale", "expensive", "high end"),
}

OPENERS = (
    "", "", "", "hello , ", "hi , ", "hi there , ", "good afternoon , ",
    "hello , i wonder if you can help me . ", "hi , i hope you can help . ",
)

NEED_TEMPLATES = (
    "i am looking for {desc}",
    "i am trying to find {desc}",
    "i would like to find {desc}",
    "can you help me find {desc} ?",
    "are there any good options for {desc} ?",
    "i need {desc} please",
    "im hoping you can find me {desc}",
    "do you know of {desc} ?",
    "my friends and i want to eat at {desc}",
    "we are after {desc} for tonight",
    "could you look up {desc} for me ?",
    "i am visiting cambridge soon and want to try {desc}",
    "we are celebrating an anniversary and would love {desc}",
    "i am getting hungry , can you track down {desc} ?",
    "some colleagues are in town so i am searching for {desc}",
    "would you be able to recommend {desc} ?",
)

AREA_PHRASES = (
    "in the {area} part of town",
    "in the {area}",
    "somewhere in the {area} of the city",
    "on the {area} side of town",
)

NAME_OPENINGS = (
    "i am looking for a restaurant called {name}",
    "can you tell me about a place called {name} ?",
    "i heard about {name} , can you look it up for me ?",
    "my friend recommended {name} , i would like to go there",
)

SECOND_INFORMS = (
    "{value} please",
    "we would prefer {value} if that is possible",
    "{value} sounds good to me",
    "lets go with {value}",
    "i think {value} would be nice for this evening",
    "{value} , thanks",
    "how does {value} sound ? lets do that",
    "probably {value} if possible",
    "my first choice would definitely be {value}",
    "everyone in the group agreed on {value}",
)

DONTCARE_ANSWERS = {
    "food": (
        "any kind of food is fine with me",
        "i am not picky , any cuisine works",
        "any food is fine really",
    ),
    "area": (
        "the area does not matter to me",
        "anywhere in town is fine",
        "any part of town works for us",
    ),
    "pricerange": (
        "i do not care about the price range",
        "any price range is fine",
        "the price does not matter",
    ),
}

REQUEST_TEMPLATES_ONE = (
    "can i get the {r1} ?",
    "could you give me the {r1} please ?",
    "what is the {r1} ?",
    "may i have the {r1} ?",
    "i also need the {r1} if you do not mind",
    "what is their {r1} ?",
    "would you mind telling me the {r1} ?",
    "and the {r1} too please",
    "could you give me the {r1} so i can find it later ?",
    "that sounds lovely , what is the {r1} ?",
)

REQUEST_TEMPLATES_TWO = (
    "can i get the {r1} and {r2} ?",
    "could you send me the {r1} and the {r2} ?",
    "what is the {r1} and the {r2} ?",
    "may i have the {r1} along with the {r2} ?",
    "i will need both the {r1} and the {r2} before i head over",
    "great choice , please give me the {r1} and the {r2}",
)

REQUESTABLE_SURFACE = {
    "address": ("address", "address", "street address"),
    "phone": ("phone number", "phone number", "telephone number"),
    "postcode": ("postcode", "post code"),
    "reference": ("reference number", "booking reference"),
}

BOOK_FULL = (
    "i would like to book a table for {p} people at {t} on {d}",
    "can you book it for {p} on {d} at {t} ?",
    "please reserve a table for {p} people on {d} at {t}",
    "book a table for {p} at {t} on {d} please",
    "could you get us a reservation for {d} at {t} ? there will be {p} of us",
    "we need a table for {p} on {d} at {t} , can you book that ?",
    "that sounds perfect , please book it for {p} people on {d} at {t}",
    "yes , go ahead and reserve a table for {p} at {t} this coming {d}",
)

BOOK_PARTIAL = (
    "i want to make a reservation for {p} people on {d}",
    "can you book a table for {p} on {d} ?",
    "please reserve a table on {d} at {t}",
    "i would like to book it for {d}",
)

BOOK_FOLLOWUP = {
    "time": ("at {t} please", "{t} would be ideal", "lets say {t}"),
    "people": ("there will be {p} of us", "{p} people", "just {p} please"),
    "day": ("on {d} please", "{d} works best", "lets do {d}"),
}

CHANGE_TIME = (
    "how about {t2} instead ?",
    "could you try {t2} ?",
    "can we change the time to {t2} ?",
    "does {t2} work instead ?",
    "alright , try {t2} then",
    "lets move the booking to {t2}",
    "no problem , would {t2} be available instead ?",
    "in that case please try {t2} for me",
)

ANYTHING_ELSE = (
    "hmm , is there anything else ?",
    "are there any other options you could offer ?",
    "could you suggest another one ?",
    "i am not a fan of that one , do you have something else ?",
    "what other places do you have on your list ?",
)

CHANGE_CONSTRAINT = (
    "ok , how about {value} instead ?",
    "what about {value} then ?",
    "could you try {value} food instead ?",
    "fine , lets try {value} instead",
)

GOODBYES = (
    "thank you , goodbye",
    "thanks , that is all i need today",
    "great , thank you for your help !",
    "goodbye , and thanks for all the help",
    "that is everything , goodbye",
    "perfect , thanks so much . bye !",
    "thank you , that will be all for now",
    "bye bye",
    "im all set , thank you",
    "thanks !",
    "have a great day , goodbye",
    "wonderful , you have been very helpful . goodbye !",
    "brilliant , that covers everything i wanted . bye !",
    "thanks a million , i really appreciate the assistance . goodbye",
)

SYS_ASK = {
    "food": (
        "what type of food would you like ?",
        "do you have a cuisine preference ?",
        "is there a particular kind of food you want ?",
    ),
    "area": (
        "which part of town do you prefer ?",
        "is there an area of the city you would like ?",
        "what area should it be in ?",
    ),
    "pricerange": (
        "what price range are you looking for ?",
        "do you have a price range in mind ?",
        "would you like something cheap , moderate , or expensive ?",
    ),
}

SYS_PRESENT = (
    "{name} is a {price} {food} restaurant in the {area} . would you like more information ?",
    "i would recommend {name} , a {food} place in the {area} part of town .",
    "how about {name} ? it serves {food} food and the prices are {price} .",
    "{name} matches your request . it is in the {area} and serves {food} cuisine .",
)

SYS_NOOFFER = (
    "i am sorry , there are no {food} restaurants matching that request .",
    "unfortunately i could not find any {food} places . would you like to try something else ?",
)

SYS_ONLY_ONE = (
    "i am afraid that is the only match i have .",
    "sorry , there are no other restaurants matching your request .",
)

SYS_PROVIDE = {
    ("address",): (
        "the address is {address} .",
        "{name} is located at {address} .",
    ),
    ("phone",): (
        "their phone number is {phone} .",
        "you can call them on {phone} .",
    ),
    ("postcode",): (
        "the postcode is {postcode} .",
        "their postcode is {postcode} .",
    ),
    ("address", "phone"): (
        "the address is {address} and the phone number is {phone} .",
        "{name} is at {address} and you can reach them on {phone} .",
    ),
    ("address", "postcode"): (
        "{name} is located at {address} , postcode {postcode} .",
        "the address is {address} and the postcode is {postcode} .",
    ),
    ("phone", "postcode"): (
        "the phone number is {phone} and the postcode is {postcode} .",
        "you can call {phone} ; the postcode is {postcode} .",
    ),
}

SYS_ASK_BOOKING = {
    "people": ("for how many people ?", "how many people will be dining ?"),
    "day": ("what day would you like ?", "which day should i book ?"),
    "time": ("what time should i book ?", "and for what time ?"),
}

SYS_BOOK_OK = (
    "booking was successful . the table will be reserved for 15 minutes . your reference number is {ref} .",
    "all booked ! your reference number is {ref} .",
    "your table is reserved . the reference number is {ref} .",
)

SYS_BOOK_FAIL = (
    "i am sorry , that time is not available . would another time work ?",
    "unfortunately the booking failed for {time} . could you try a different slot ?",
)

SYS_BYE = (
    "you are welcome , goodbye .",
    "thank you for using our service . goodbye !",
    "glad i could help . have a nice day !",
    "enjoy your meal , goodbye .",
)


def _desc(rng: random.Random, constraints: dict[str, str]) -> str:
    """Render a constraint subset as a noun phrase like 'a cheap italian restaurant in the north'."""
    bits = []
    if "pricerange" in constraints:
        bits.append(rng.choice(PRICE_WORDS[constraints["pricerange"]]))
    if "food" in constraints:
        bits.append(constraints["food"])
    noun = rng.choice(("restaurant", "restaurant", "place to eat"))
    phrase = "a " + " ".join(bits + [noun]) if bits else "a " + noun
    if "area" in constraints:
        phrase += " " + rng.choice(AREA_PHRASES).format(area=constraints["area"])
    return phrase


def _ref(rng: random.Random) -> str:
    # 8 chars, at least one digit
    chars = [rng.choice(string.ascii_lowercase + string.digits) for _ in range(7)]
    chars.append(rng.choice(string.digits))
    rng.shuffle(chars)
    return "".join(chars)


class DialogBuilder:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.log: list[dict] = []

    def user(self, text: str) -> None:
        self.log.append({"text": text, "dialog_act": {}})

    def system(self, text: str, acts: dict[str, list]) -> None:
        self.log.append({"text": text, "dialog_act": acts})


def _present_acts(r) -> dict:
    return {"Restaurant-Recommend": [["Name", r.name]],
            "Restaurant-Inform": [["Food", r.food], ["Area", r.area]]}


def build_dialog(rng: random.Random, db, spec: dict) -> tuple[dict, list[dict]]:
    """Assemble one dialog from a flow spec; returns (goal record, log)."""
    b = DialogBuilder(rng)
    r = spec["restaurant"]
    constraints: dict[str, str] = spec["constraints"]
    goal_info = dict(constraints)
    goal = {"info": goal_info, "reqt": sorted(spec.get("reqt", ())), "book": {}}

    # --- search phase
    if "name" in constraints:
        b.user(rng.choice(NAME_OPENINGS).format(name=r.name))
        b.system(rng.choice(SYS_PRESENT).format(
            name=r.name, price=r.pricerange, food=r.food, area=r.area),
            _present_acts(r))
    elif spec.get("nomatch"):
        bad_food = spec["nomatch"]
        opened = dict(constraints)
        opened["food"] = bad_food
        b.user(rng.choice(OPENERS) + rng.choice(NEED_TEMPLATES).format(
            desc=_desc(rng, opened)))
        b.system(rng.choice(SYS_NOOFFER).format(food=bad_food),
                 {"Restaurant-NoOffer": [["Food", bad_food]]})
        b.user(rng.choice(CHANGE_CONSTRAINT).format(value=constraints["food"]))
        b.system(rng.choice(SYS_PRESENT).format(
            name=r.name, price=r.pricerange, food=r.food, area=r.area),
            _present_acts(r))
        goal["fail_info"] = {**goal_info, "food": bad_food}
    else:
        slots = list(constraints)
        rng.shuffle(slots)
        n_open = rng.randint(1, len(slots))
        opened = {s: constraints[s] for s in slots[:n_open]}
        pending = [s for s in slots[n_open:]]
        b.user(rng.choice(OPENERS) + rng.choice(NEED_TEMPLATES).format(
            desc=_desc(rng, opened)))
        # occasionally the system asks about a slot outside the goal
        if not pending and rng.random() < 0.25:
            extra = rng.choice([s for s in ("food", "area", "pricerange")
                                if s not in constraints] or ["food"])
            if extra not in constraints:
                b.system(rng.choice(SYS_ASK[extra]),
                         {"Restaurant-Request": [[extra.capitalize(), "?"]]})
                b.user(rng.choice(DONTCARE_ANSWERS[extra]))
        for slot in pending:
            b.system(rng.choice(SYS_ASK[slot]),
                     {"Restaurant-Request": [[slot.capitalize(), "?"]]})
            value = constraints[slot]
            if slot == "pricerange":
                value = rng.choice(PRICE_WORDS[value][:2])
            elif slot == "food":
                value = rng.choice((value, value, value + " food"))
            b.user(rng.choice(SECOND_INFORMS).format(value=value))
        b.system(rng.choice(SYS_PRESENT).format(
            name=r.name, price=r.pricerange, food=r.food, area=r.area),
            _present_acts(r))

    # --- anything else branch
    if spec.get("anything_else"):
        b.user(rng.choice(ANYTHING_ELSE))
        others = [x for x in query_db(db, constraints) if x.name != r.name]
        if others:
            alt = others[0]
            b.system(rng.choice(SYS_PRESENT).format(
                name=alt.name, price=alt.pricerange, food=alt.food, area=alt.area),
                _present_acts(alt))
            r = alt
        else:
            b.system(rng.choice(SYS_ONLY_ONE), {"Restaurant-NoOffer": [["none", "none"]]})

    # --- info requests
    reqt = [s for s in spec.get("reqt", ()) if s != "reference"]
    rng.shuffle(reqt)
    while reqt:
        take = min(len(reqt), rng.choice((1, 2, 2)))
        batch, reqt = sorted(reqt[:take]), reqt[take:]
        surfaces = [rng.choice(REQUESTABLE_SURFACE[s]) for s in batch]
        if len(batch) == 1:
            b.user(rng.choice(REQUEST_TEMPLATES_ONE).format(r1=surfaces[0]))
        else:
            b.user(rng.choice(REQUEST_TEMPLATES_TWO).format(r1=surfaces[0], r2=surfaces[1]))
        key = tuple(batch)
        b.system(rng.choice(SYS_PROVIDE[key]).format(
            name=r.name, address=r.address, phone=r.phone, postcode=r.postcode),
            {"Restaurant-Inform": [[s.capitalize(), getattr(r, s)] for s in batch]})

    # --- booking
    if spec.get("book"):
        people = rng.choice(range(1, 9))
        day = rng.choice(DAYS)
        time = rng.choice(TIMES)
        partial = rng.random() < 0.18
        if partial:
            tmpl = rng.choice(BOOK_PARTIAL)
            b.user(tmpl.format(p=people, d=day, t=time))
            given = {s for s in ("people", "day", "time")
                     if ("{" + {"people": "p", "day": "d", "time": "t"}[s] + "}") in tmpl}
            for slot in ("people", "day", "time"):
                if slot not in given:
                    b.system(rng.choice(SYS_ASK_BOOKING[slot]),
                             {"Booking-Request": [[slot.capitalize(), "?"]]})
                    b.user(rng.choice(BOOK_FOLLOWUP[slot]).format(p=people, d=day, t=time))
        else:
            b.user(rng.choice(BOOK_FULL).format(p=people, d=day, t=time))
        final_time = time
        if spec.get("change_time"):
            b.system(rng.choice(SYS_BOOK_FAIL).format(time=time),
                     {"Booking-NoBook": [["Time", time]]})
            final_time = rng.choice([t for t in TIMES if t != time])
            b.user(rng.choice(CHANGE_TIME).format(t2=final_time))
            goal["fail_book"] = {"people": str(people), "day": day, "time": time}
        ref = _ref(rng)
        b.system(rng.choice(SYS_BOOK_OK).format(ref=ref),
                 {"Booking-Book": [["Ref", ref]]})
        goal["book"] = {"people": str(people), "day": day, "time": final_time}

    # --- closing
    b.user(rng.choice(GOODBYES))
    b.system(rng.choice(SYS_BYE), {"general-bye": [["none", "none"]]})
    return goal, b.log


def make_specs(rng: random.Random, db) -> list[dict]:
    """Choose the flow spec (goal + branches) for every dialog."""
    specs: list[dict] = []
    restaurants = list(db.restaurants)
    usable = [r for r in restaurants if r.name != "ask"]

    def pick_constraints(r, allow_name: bool) -> dict[str, str]:
        if allow_name and rng.random() < 0.08:
            return {"name": r.name}
        slots = ["food", "area", "pricerange"]
        rng.shuffle(slots)
        n = rng.choice((1, 2, 2, 3))
        return {s: getattr(r, s) for s in sorted(slots[:n])}

    # 138 ask-info only, 9 both, 73 reservation only
    for kind, count in (("ai", 138), ("both", 9), ("mr", 73)):
        for _ in range(count):
            r = rng.choice(usable)
            spec: dict = {
                "restaurant": r,
                "constraints": pick_constraints(r, allow_name=(kind == "ai")),
            }
            if kind in ("ai", "both"):
                n_req = rng.choice((1, 1, 2, 2, 3))
                spec["reqt"] = set(rng.sample(("address", "phone", "postcode"), n_req))
            if kind in ("mr", "both"):
                spec["book"] = True
                spec["change_time"] = rng.random() < 0.30
                if kind == "both" and rng.random() < 0.5:
                    spec["reqt"] = set(spec.get("reqt", ())) | {"reference"}
            if "name" not in spec["constraints"]:
                if rng.random() < 0.082:
                    spec["anything_else"] = True
                if kind == "ai" and "food" in spec["constraints"] and rng.random() < 0.18:
                    spec["nomatch"] = rng.choice(MISSING_FOODS)
            specs.append(spec)
    rng.shuffle(specs)
    return specs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path,
                        default=Path("src/dialoglab/data/sample_corpus.json"))
    parser.add_argument("--seed", type=int, default=SEED)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    db = load_restaurant_db()
    corpus: dict[str, dict] = {}
    for i, spec in enumerate(make_specs(rng, db)):
        goal, log = build_dialog(rng, db, spec)
        corpus[f"SMP{i:04d}.json"] = {"goal": {"restaurant": goal}, "log": log}

    args.out.write_text(json.dumps(corpus, sort_keys=True, indent=1) + "\n")

    # quick stats for eyeballing
    user_texts = [e["text"] for d in corpus.values() for j, e in enumerate(d["log"])
                  if j % 2 == 0]
    tokens = [tokenize(t) for t in user_texts]
    vocab = {w for toks in tokens for w in toks}
    lengths = [len(t) for t in tokens]
    n_book = sum(1 for d in corpus.values() if d["goal"]["restaurant"]["book"])
    n_reqt = sum(1 for d in corpus.values() if d["goal"]["restaurant"]["reqt"])
    print(f"dialogs: {len(corpus)}")
    print(f"user turns: {len(user_texts)}  vocab: {len(vocab)}  "
          f"avg len: {sum(lengths) / len(lengths):.2f}")
    print(f"goals with booking: {n_book}  with requests: {n_reqt}")
    counts = Counter()
    for d in corpus.values():
        for e in d["log"]:
            for act in e["dialog_act"]:
                counts[act] += 1
    print("system acts:", dict(sorted(counts.items())))


if __name__ == "__main__":
    main()
