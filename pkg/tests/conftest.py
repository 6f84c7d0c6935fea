"""Shared fixtures: a miniature WordNet database (~26 synsets) covering
every relation family the package consumes, written in the real 3.0 file
format and parsed by the production loader.
"""

import pytest

from mfskit.toyset import MiniWordNet
from mfskit.wordnet import load_wordnet


def build_miniature():
    """Miniature database: nouns under a single root, multi-root verbs,
    an adjective cluster with a satellite, one adverb, exception lists."""
    wn = MiniWordNet()
    # nouns -------------------------------------------------------------
    wn.synset("entity", "n", ["entity"], "that which exists")
    wn.synset("object", "n", ["object"], "a physical thing", hypernym=["entity"])
    wn.synset(
        "artifact", "n", ["artifact"], "a man-made object", hypernym=["object"]
    )
    wn.synset(
        "structure",
        "n",
        ["structure", "construction"],
        "a thing constructed",
        hypernym=["artifact"],
    )
    wn.synset(
        "bank_building",
        "n",
        ["bank", "depository"],
        "a building in which money is kept",
        examples=["he deposited his money at the bank"],
        hypernym=["structure"],
    )
    wn.synset(
        "formation",
        "n",
        ["formation"],
        "a natural arrangement of land",
        hypernym=["object"],
    )
    wn.synset(
        "bank_slope",
        "n",
        ["bank"],
        "sloping land beside a body of water",
        hypernym=["formation"],
    )
    wn.synset("animal", "n", ["animal"], "a living creature", hypernym=["object"])
    wn.synset(
        "dog",
        "n",
        ["dog"],
        "a domesticated animal that barks",
        examples=["the dog chased the cat"],
        hypernym=["animal"],
        meronym=["paw"],
        member_holonym=["pack"],
    )
    wn.synset("cat", "n", ["cat"], "a small feline animal", hypernym=["animal"])
    wn.synset("goose", "n", ["goose"], "a web-footed bird", hypernym=["animal"])
    wn.synset("paw", "n", ["paw"], "a clawed foot of an animal", hypernym=["object"])
    wn.synset("pack", "n", ["pack"], "a group of hunting animals", hypernym=["object"])
    wn.synset("money", "n", ["money"], "a medium of exchange", hypernym=["object"])
    wn.synset(
        "water", "n", ["water"], "a body of clear liquid", hypernym=["formation"]
    )
    # verbs (several roots; the virtual root joins them) -----------------
    wn.synset("move_v", "v", ["move"], "change position")
    wn.synset("run_v", "v", ["run"], "move fast on foot", hypernym=["move_v"])
    wn.synset(
        "close_v",
        "v",
        ["close", "shut"],
        "cease to operate",
        examples=["the banks closed at noon"],
    )
    wn.synset("sleep_v", "v", ["sleep"], "be in a state of rest")
    wn.synset("snore_v", "v", ["snore"], "breathe noisily", entailment=["sleep_v"])
    wn.synset("die_v", "v", ["die"], "stop living")
    wn.synset("kill_v", "v", ["kill"], "cause the death of", cause=["die_v"])
    # adjectives ----------------------------------------------------------
    wn.synset(
        "happy_a",
        "a",
        ["happy"],
        "feeling joy",
        examples=["a happy smile"],
        antonym=["unhappy_a"],
    )
    wn.synset(
        "felicitous_a",
        "a",
        ["felicitous"],
        "well chosen",
        satellite=True,
        similar=["happy_a"],
    )
    wn.synset("unhappy_a", "a", ["unhappy"], "feeling sorrow")
    # adverbs --------------------------------------------------------------
    wn.synset("quickly_r", "r", ["quickly"], "with speed")
    # exception lists -----------------------------------------------------
    wn.exception("n", "geese", "goose")
    wn.exception("v", "ran", "run")
    wn.exception("v", "slept", "sleep")
    return wn


@pytest.fixture(scope="session")
def mini_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("miniwn")
    ids = build_miniature().write(directory)
    return directory, ids


@pytest.fixture(scope="session")
def mini_db(mini_dir):
    directory, _ = mini_dir
    return load_wordnet(directory)


@pytest.fixture(scope="session")
def mini_ids(mini_dir):
    _, ids = mini_dir
    return ids
