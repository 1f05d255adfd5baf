#!/usr/bin/env python3
"""Regenerates the toy corpus used by the end-to-end tests.

The corpus is built so that "car" and "vehicle" share their contexts (road
and engine vocabulary) while "tape" lives in bureaucratic contexts and
"ribbon" in gift-wrapping contexts. "red" and "scarlet" share colour
contexts and turn up in the same documents; only "red" sits next to "tape".

Output is fully determined by the fixed seed below. Run from any directory:

    python3 data/toy/make_toy.py
"""

import json
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent
SEED = 20161

FUNCTION = "the a of and to was in with for on is by at".split()
ROAD = ("drive road engine wheel garage highway fuel driver parked speed brake "
        "mechanic tire traffic license motor seat").split()
COLOUR = "bright colour paint dress rose shade dye vivid sunset lipstick glow hue".split()
BUREAU = ("paperwork permit forms office delays officials approval regulations clerk "
          "stamp application department agency queue").split()
GIFT = ("gift wrap bow satin hair birthday present decorate silk bouquet curl lace "
        "package card party wedding prize medal bride basket").split()
ADHESIVE = "sticky adhesive roll seal box duct measuring glue".split()


def words(rng, pool, n):
    return [rng.choice(pool) for _ in range(n)]


def sentence(rng, core, pools, length):
    """`core` tokens inserted at a random position inside filler words."""
    filler = []
    for _ in range(length):
        pool = rng.choice(pools)
        filler.append(rng.choice(pool))
    pos = rng.randrange(len(filler) + 1)
    return " ".join(filler[:pos] + core + filler[pos:])


def main():
    rng = random.Random(SEED)
    docs = []

    def add(kind, text):
        docs.append({"id": f"{kind}-{len(docs):03d}", "text": text})

    # colour + vehicle: both "car" and "vehicle", both "red" and "scarlet"
    for i in range(40):
        colour = ["red", "scarlet", "blue", "azure"][i % 4]
        noun = ["car", "vehicle"][(i // 4) % 2]
        parts = [sentence(rng, [colour, noun], [ROAD, FUNCTION, COLOUR], rng.randint(8, 14)),
                 sentence(rng, [noun], [ROAD, FUNCTION], rng.randint(6, 10))]
        add("auto", ". ".join(parts))

    # trucks and buses are rarer vehicle hyponyms
    for i in range(6):
        noun = ["truck", "bus"][i % 2]
        add("fleet", sentence(rng, [noun], [ROAD, FUNCTION], rng.randint(8, 12)))

    # colour only
    for i in range(24):
        colour = ["red", "scarlet", "crimson", "blue", "azure", "scarlet"][i % 6]
        add("colour", sentence(rng, [colour], [COLOUR, FUNCTION], rng.randint(8, 14)))

    # red tape: bureaucracy. "scarlet" shows up in the same documents (a
    # scarlet stamp, a scarlet folder) but never next to "tape".
    for i in range(30):
        parts = [sentence(rng, ["red", "tape"], [BUREAU, FUNCTION], rng.randint(8, 14)),
                 sentence(rng, ["tape"], [BUREAU, FUNCTION], rng.randint(6, 10))]
        if i % 2 == 0:
            parts.append(sentence(rng, ["scarlet"], [BUREAU, FUNCTION], rng.randint(8, 12)))
        add("bureau", ". ".join(parts))

    # adhesive tape, a little
    for i in range(6):
        add("adhesive", sentence(rng, ["tape"], [ADHESIVE, FUNCTION], rng.randint(6, 10)))

    # ribbons: gifts and prizes, never next to "red"
    for i in range(30):
        lead = ["blue", "satin", "silk", "gift"][i % 4]
        parts = [sentence(rng, [lead, "ribbon"], [GIFT, FUNCTION], rng.randint(8, 14)),
                 sentence(rng, ["ribbon"], [GIFT], rng.randint(6, 10))]
        add("gift", ". ".join(parts))

    # a single "strip" so the hypernym of tape/ribbon exists but is weak
    add("misc", "a strip of land by the road")

    with open(HERE / "corpus.jsonl", "w", encoding="utf-8") as out:
        for d in docs:
            out.write(json.dumps(d, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
