"""Built-in example arrangements used by the tests and the check harness."""

from __future__ import annotations

import json
from importlib import resources

from ..arrangement import Arrangement

CORE_NAMES = ("concurrent3", "triangle3", "doubleline", "pencil3planes",
              "fourplanes")
PAIR_NAMES = ("quad6a", "quad6b")
EXTRA_NAMES = ("doubleplane3",)
ALL_NAMES = CORE_NAMES + PAIR_NAMES + EXTRA_NAMES

# hyperplane relabeling identifying the lattices of the quad6 pair (1-based)
QUAD6_BIJECTION = {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5}


def corpus_path(name: str):
    if name not in ALL_NAMES:
        raise KeyError(f"unknown corpus arrangement {name!r}")
    return resources.files(__package__) / f"{name}.json"


def load(name: str) -> Arrangement:
    with corpus_path(name).open("r", encoding="utf-8") as fh:
        return Arrangement.from_json(json.load(fh))


def calibration_suite():
    """(name, arrangement, user_tables) triples for the convention search."""
    return [(name, load(name), None) for name in CORE_NAMES]
