import math
import os

import pytest

from mfskit.errors import WordNetLoadError
from mfskit.toyset import MiniWordNet
from mfskit.wordnet import (
    IcTable,
    JCN_CAP,
    SynsetId,
    VIRTUAL_VERB_ROOT,
    WordType,
    compute_ic,
    jcn,
    keywords,
    lcs,
    load_ic,
    load_wordnet,
    morphy,
    save_ic,
)

from oracles import ic_brute, jcn_brute

N, V = "n", "v"


# ---------------------------------------------------------------------------
# loading


def test_load_links_graph(mini_db, mini_ids):
    bank = WordType("bank", N)
    assert mini_db.senses(bank) == [mini_ids["bank_building"], mini_ids["bank_slope"]]
    dog = mini_db.synset(mini_ids["dog"])
    assert mini_ids["paw"] in dog.related("meronym")
    assert mini_ids["pack"] in dog.related("holonym")
    assert mini_ids["animal"] in dog.related("hypernym")
    assert mini_ids["dog"] in mini_db.synset(mini_ids["animal"]).related("hyponym")


def test_load_gloss_and_examples(mini_db, mini_ids):
    syn = mini_db.synset(mini_ids["bank_building"])
    assert syn.gloss == "a building in which money is kept"
    assert syn.examples == ["he deposited his money at the bank"]


def test_satellite_reachable_via_similar(mini_db, mini_ids):
    felicitous = mini_db.synset(mini_ids["felicitous_a"])
    assert felicitous.id.pos == "a"
    assert mini_ids["happy_a"] in felicitous.related("similar")
    assert mini_ids["felicitous_a"] in mini_db.synset(mini_ids["happy_a"]).related(
        "similar"
    )


def test_antonym_linked(mini_db, mini_ids):
    happy = mini_db.synset(mini_ids["happy_a"])
    assert mini_ids["unhappy_a"] in happy.related("antonym")


def test_load_missing_directory(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    with pytest.raises(WordNetLoadError, match="missing index.noun"):
        load_wordnet(empty)


def test_load_rejects_dangling_pointer(tmp_path):
    wn = MiniWordNet()
    wn.synset("root", N, ["thing"])
    wn.synset("leaf", N, ["leaf"], hypernym=["root"])
    directory = tmp_path / "broken"
    wn.write(directory)
    data = directory / "data.noun"
    text = data.read_text()
    # retarget the leaf's hypernym pointer at a nonexistent offset
    lines = text.splitlines(keepends=True)
    lines[-1] = lines[-1].replace("@ 00000", "@ 99990", 1)
    data.write_text("".join(lines))
    with pytest.raises(WordNetLoadError, match="dangling pointer"):
        load_wordnet(directory)


def test_load_rejects_multiple_noun_roots(tmp_path):
    wn = MiniWordNet()
    wn.synset("a", N, ["alpha"])
    wn.synset("b", N, ["beta"])
    directory = tmp_path / "tworoots"
    wn.write(directory)
    with pytest.raises(WordNetLoadError, match="single root"):
        load_wordnet(directory)


def test_index_order_is_sense_order(mini_db, mini_ids):
    senses = mini_db.senses(WordType("bank", N))
    assert senses[0] == mini_ids["bank_building"]


# ---------------------------------------------------------------------------
# morphy


@pytest.mark.parametrize(
    "surface,pos,expected",
    [
        ("dogs", N, ["dog"]),
        ("dog", N, ["dog"]),
        ("geese", N, ["goose"]),
        ("closed", V, ["close"]),
        ("ran", V, ["run"]),
        ("banks", N, ["bank"]),
        ("xylophones", N, []),
    ],
)
def test_morphy(mini_db, surface, pos, expected):
    assert morphy(mini_db, surface, pos) == expected


def test_morphy_surface_first_when_indexed(mini_db):
    # "bank" is itself indexed; it must come before any detached form
    assert morphy(mini_db, "bank", N)[0] == "bank"


# ---------------------------------------------------------------------------
# information content


@pytest.fixture(scope="module")
def mini_counts():
    return {
        WordType("dog", N): 8,
        WordType("cat", N): 4,
        WordType("money", N): 6,
        WordType("water", N): 2,
        WordType("bank", N): 6,  # split 3/3 over its two senses
        WordType("paw", N): 1,
        WordType("run", V): 5,
        WordType("move", V): 1,
        WordType("sleep", V): 3,
        WordType("kill", V): 2,
    }


@pytest.fixture(scope="module")
def mini_ic(mini_db, mini_counts):
    return compute_ic(mini_counts, mini_db)


def test_ic_root_is_zero(mini_ic, mini_ids):
    assert mini_ic.get(mini_ids["entity"]) == 0.0
    assert mini_ic.get(VIRTUAL_VERB_ROOT) == 0.0


def test_ic_smoothing_floor(mini_db, mini_ic, mini_ids):
    # goose never occurs: mass 1, so ic = -ln(1 / noun root mass)
    total = mini_ic.pos_totals[N]
    assert mini_ic.get(mini_ids["goose"]) == pytest.approx(math.log(total), abs=1e-12)


def test_ic_hand_propagated_chain(tmp_path):
    # five-node chain, every node on the path to the single leaf carries the
    # same mass, so all ics collapse to zero
    wn = MiniWordNet()
    wn.synset("n0", N, ["w0"])
    for i in range(1, 5):
        wn.synset(f"n{i}", N, [f"w{i}"], hypernym=[f"n{i-1}"])
    ids = wn.write(tmp_path / "chain")
    db = load_wordnet(tmp_path / "chain")
    ic = compute_ic({WordType("w4", N): 9}, db)
    assert ic.pos_totals[N] == 10.0
    for i in range(5):
        assert ic.get(ids[f"n{i}"]) == pytest.approx(0.0, abs=1e-12)


def test_ic_hand_propagated_branching(tmp_path):
    wn = MiniWordNet()
    wn.synset("root", N, ["root"])
    wn.synset("a", N, ["a"], hypernym=["root"])
    wn.synset("a1", N, ["aye"], hypernym=["a"])
    wn.synset("a2", N, ["atwo"], hypernym=["a"])
    wn.synset("b", N, ["bee"], hypernym=["root"])
    ids = wn.write(tmp_path / "branch")
    db = load_wordnet(tmp_path / "branch")
    ic = compute_ic({WordType("aye", N): 9}, db)
    # masses: a1 = 10, a2 = 1, a = 10, b = 1, root = 10
    assert ic.get(ids["root"]) == 0.0
    assert ic.get(ids["a"]) == pytest.approx(0.0, abs=1e-12)
    assert ic.get(ids["a1"]) == pytest.approx(0.0, abs=1e-12)
    assert ic.get(ids["a2"]) == pytest.approx(math.log(10.0), abs=1e-12)
    assert ic.get(ids["b"]) == pytest.approx(math.log(10.0), abs=1e-12)


def test_ic_monotone_along_hypernym_edges(mini_db, mini_ic):
    for sid, syn in mini_db.synsets.items():
        if sid.pos not in (N, V):
            continue
        for parent in syn.related("hypernym"):
            assert mini_ic.get(parent) <= mini_ic.get(sid) + 1e-12


def test_ic_matches_brute_force(mini_db, mini_counts, mini_ic):
    expected, totals = ic_brute(mini_counts, mini_db)
    assert totals[N] == pytest.approx(mini_ic.pos_totals[N])
    for sid, value in expected.items():
        assert mini_ic.get(sid) == pytest.approx(value, abs=1e-12)


def test_ic_roundtrip(tmp_path, mini_ic):
    path = tmp_path / "ic.tsv"
    save_ic(mini_ic, path)
    loaded = load_ic(path)
    for sid, value in mini_ic.ic.items():
        assert loaded.get(sid) == pytest.approx(value, abs=1e-9)


# ---------------------------------------------------------------------------
# lcs and jcn


def test_lcs_self(mini_db, mini_ic, mini_ids):
    assert lcs(mini_db, mini_ic, mini_ids["dog"], mini_ids["dog"]) == mini_ids["dog"]


def test_lcs_join_node(mini_db, mini_ic, mini_ids):
    assert lcs(mini_db, mini_ic, mini_ids["dog"], mini_ids["cat"]) == mini_ids["animal"]
    assert (
        lcs(mini_db, mini_ic, mini_ids["bank_building"], mini_ids["bank_slope"])
        == mini_ids["object"]
    )


def test_lcs_verbs_fall_back_to_virtual_root(mini_db, mini_ic, mini_ids):
    assert (
        lcs(mini_db, mini_ic, mini_ids["sleep_v"], mini_ids["die_v"])
        == VIRTUAL_VERB_ROOT
    )


def test_lcs_pos_mismatch_rejected(mini_db, mini_ic, mini_ids):
    with pytest.raises(ValueError):
        lcs(mini_db, mini_ic, mini_ids["dog"], mini_ids["run_v"])


def test_jcn_self_is_capped(mini_db, mini_ic, mini_ids):
    assert jcn(mini_db, mini_ic, mini_ids["dog"], mini_ids["dog"]) == JCN_CAP


def test_jcn_cross_pos_is_zero(mini_db, mini_ic, mini_ids):
    assert jcn(mini_db, mini_ic, mini_ids["dog"], mini_ids["run_v"]) == 0.0
    assert jcn(mini_db, mini_ic, mini_ids["happy_a"], mini_ids["happy_a"]) == 0.0
    assert jcn(mini_db, mini_ic, mini_ids["quickly_r"], mini_ids["quickly_r"]) == 0.0


def test_jcn_hand_computed_distance(tmp_path):
    # distances only depend on the ic table, so drive jcn with a synthetic one
    wn = MiniWordNet()
    wn.synset("root", N, ["root"])
    wn.synset("a", N, ["a"], hypernym=["root"])
    wn.synset("b", N, ["b"], hypernym=["root"])
    ids = wn.write(tmp_path / "vee")
    db = load_wordnet(tmp_path / "vee")
    # d = ic(a) + ic(b) - 2 ic(root) = 2.0, so similarity is 0.5
    table = IcTable(ic={ids["a"]: 1.0, ids["b"]: 1.0, ids["root"]: 0.0})
    assert jcn(db, table, ids["a"], ids["b"]) == pytest.approx(0.5, abs=1e-12)


def test_jcn_symmetry_and_self_maximality(mini_db, mini_ic):
    same_pos = [s for s in mini_db.synsets if s.pos in (N, V)]
    for a in same_pos:
        for b in same_pos:
            assert jcn(mini_db, mini_ic, a, b) == pytest.approx(
                jcn(mini_db, mini_ic, b, a), abs=1e-12
            )
            if a.pos == b.pos:
                assert (
                    jcn(mini_db, mini_ic, a, a)
                    >= jcn(mini_db, mini_ic, a, b) - 1e-12
                )


def test_jcn_matches_brute_force_oracle(mini_db, mini_counts, mini_ic):
    oracle_ic, _ = ic_brute(mini_counts, mini_db)
    nouns_verbs = [s for s in mini_db.synsets if s.pos in (N, V)]
    checked = 0
    for a in nouns_verbs:
        for b in nouns_verbs:
            if a.pos != b.pos:
                continue
            expected = jcn_brute(mini_db, oracle_ic, a, b)
            assert jcn(mini_db, mini_ic, a, b) == pytest.approx(expected, abs=1e-9)
            checked += 1
    assert checked > 100


# ---------------------------------------------------------------------------
# keywords


def test_keywords_light_gloss_only(mini_db, mini_ids):
    kws = keywords(mini_db, mini_ids["bank_building"], mode="light")
    assert kws == {WordType("money", N), WordType("bank", N)}


def test_keywords_light_empty_when_no_content(tmp_path):
    wn = MiniWordNet()
    wn.synset("root", N, ["solo"], gloss="of the and")
    ids = wn.write(tmp_path / "solo")
    db = load_wordnet(tmp_path / "solo")
    assert keywords(db, ids["root"], mode="light") == set()


def test_keywords_umfswe_adds_own_and_vertical_neighbours(mini_db, mini_ids):
    kws = keywords(mini_db, mini_ids["dog"], mode="umfswe")
    assert WordType("dog", N) in kws  # own lemma
    assert WordType("animal", N) in kws  # hypernym lemma
    assert WordType("cat", N) in kws  # from own example sentence
    assert WordType("paw", N) not in kws  # meronym only enters extended mode


def test_keywords_extended_enumeration(mini_db, mini_ids):
    kws = keywords(mini_db, mini_ids["dog"], mode="extended")
    assert kws == {
        WordType("dog", N),
        WordType("animal", N),
        WordType("cat", N),
        WordType("paw", N),
        WordType("pack", N),
    }


def test_keywords_containment(mini_db):
    for sid in mini_db.synsets:
        light = keywords(mini_db, sid, mode="light")
        umfswe = keywords(mini_db, sid, mode="umfswe")
        extended = keywords(mini_db, sid, mode="extended")
        assert light <= umfswe <= extended


def test_keywords_exclude_target_lemma(mini_db, mini_ids):
    kws = keywords(mini_db, mini_ids["dog"], mode="extended", exclude_lemma="dog")
    assert WordType("dog", N) not in kws


def test_keywords_no_examples_flag(mini_db, mini_ids):
    with_ex = keywords(mini_db, mini_ids["dog"], mode="light")
    without = keywords(mini_db, mini_ids["dog"], mode="light", include_examples=False)
    assert WordType("cat", N) in with_ex  # only mentioned in the example
    assert WordType("cat", N) not in without
    assert without <= with_ex


def test_keywords_no_examples_noop_without_examples(mini_db, mini_ids):
    # cat's synset has a gloss but no examples
    assert keywords(mini_db, mini_ids["cat"], mode="extended") == keywords(
        mini_db, mini_ids["cat"], mode="extended", include_examples=False
    )


def test_keywords_empty_gloss_with_examples_suppressed(tmp_path):
    wn = MiniWordNet()
    wn.synset("root", N, ["widget"], gloss="", examples=["a widget example"])
    ids = wn.write(tmp_path / "exonly")
    db = load_wordnet(tmp_path / "exonly")
    kws = keywords(db, ids["root"], mode="light", include_examples=False)
    assert kws == set()


def test_keywords_respect_stoplist(mini_db, mini_ids):
    kws = keywords(
        mini_db, mini_ids["bank_building"], mode="light", stoplist=frozenset({"money"})
    )
    assert WordType("money", N) not in kws
