from pathlib import Path

import pytest

from conceptseg.fca import FormalContext
from conceptseg.textio import read_corpus

DATA = Path(__file__).parent / "data"

TOURISM_OBJECTS = ("apartment", "car", "motor-bike", "excursion", "trip", "hotel")
TOURISM_ATTRIBUTES = ("bookable", "rentable", "driveable", "rideable", "joinable")
TOURISM_ROWS = ("XX...", "XXX..", "XXXX.", "X...X", "X...X", "X....")

# Concepts C1..C6 of the tourism example as (extent, intent) name sets.
TOURISM_CONCEPTS = {
    "C1": ({"apartment", "car", "motor-bike", "trip", "excursion", "hotel"}, {"bookable"}),
    "C2": ({"apartment", "car", "motor-bike"}, {"bookable", "rentable"}),
    "C3": ({"car", "motor-bike"}, {"bookable", "rentable", "driveable"}),
    "C4": ({"motor-bike"}, {"bookable", "rentable", "driveable", "rideable"}),
    "C5": ({"excursion", "trip"}, {"bookable", "joinable"}),
    "C6": (set(), {"bookable", "rentable", "driveable", "rideable", "joinable"}),
}

TOURISM_TAXONOMY = {
    ("bookable", "joinable"),
    ("bookable", "rentable"),
    ("bookable", "hotel"),
    ("joinable", "excursion"),
    ("joinable", "trip"),
    ("rentable", "apartment"),
    ("rentable", "driveable"),
    ("driveable", "car"),
    ("driveable", "rideable"),
    ("rideable", "motor-bike"),
}


def context_from_rows(objects, attributes, rows):
    return FormalContext(
        tuple(objects), tuple(attributes), tuple(tuple(c == "X" for c in r) for r in rows)
    )


@pytest.fixture
def tourism():
    return context_from_rows(TOURISM_OBJECTS, TOURISM_ATTRIBUTES, TOURISM_ROWS)


@pytest.fixture(scope="session")
def law_corpus():
    return read_corpus(DATA / "law_extract.tsv")


def named(context, concept):
    return (
        set(context.object_names(concept.extent)),
        set(context.attribute_names(concept.intent)),
    )
