import math
from collections import Counter

import numpy as np
import pytest

from mfskit.align import MftEntry, MftTable
from mfskit.corpus import CompanionSet, CooccurrenceTable
from mfskit.embeddings import VectorSpace
from mfskit.errors import NoPredictionError
from mfskit.mfs import (
    Chi,
    DEFAULT_CHI,
    LIGHT_CHI,
    MfsResources,
    companion_predict,
    predict_many,
    predict_word,
    random_predict,
    read_predictions,
    sense_vector,
    stable_word_seed,
    umfswe_predict,
    wct_predict,
    write_predictions,
)
from mfskit.toyset import MiniWordNet
from mfskit.wordnet import WordType, compute_ic, load_wordnet

from oracles import companion_scores_brute, ic_brute

N = "n"
EMPTY = frozenset()


# ---------------------------------------------------------------------------
# chi


def test_chi_defaults():
    assert DEFAULT_CHI.as_tuple() == (0.5, 0.4, 0.1)
    assert LIGHT_CHI.as_tuple() == (0.4, 0.1, 0.5)


def test_chi_validation():
    with pytest.raises(ValueError):
        Chi(0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        Chi(1.2, -0.2, 0.0)


def test_chi_parse():
    assert Chi.parse("0.5,0.4,0.1") == DEFAULT_CHI
    assert Chi.parse("1 0 0") == Chi(1.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# a tiny two-sense world with orthogonal feature vectors


@pytest.fixture(scope="module")
def duo(tmp_path_factory):
    """Word "duo" with two senses; sense one's keywords live on axis 0,
    sense two's on axis 1. Every vector is axis-aligned so each cosine is
    0 or 1 and winners can be computed by hand."""
    wn = MiniWordNet()
    wn.synset("root", N, ["thing"])
    wn.synset("s1", N, ["duo", "alpha"], gloss="about akey", hypernym=["root"])
    wn.synset("s2", N, ["duo", "beta"], gloss="about bkey", hypernym=["root"])
    wn.synset("akey", N, ["akey"], gloss="", hypernym=["s1"])
    wn.synset("bkey", N, ["bkey"], gloss="", hypernym=["s2"])
    directory = tmp_path_factory.mktemp("duo")
    ids = wn.write(directory)
    db = load_wordnet(directory)

    e = np.eye(4)
    english = VectorSpace(
        dim=4,
        vectors={
            "akey": e[0].copy(),
            "alpha": e[0].copy(),
            "bkey": e[1].copy(),
            "beta": e[1].copy(),
            "duo": e[0].copy(),  # the word vector favours sense one
            "neutral": e[2].copy(),
        },
        language="en",
    )
    foreign = VectorSpace(
        dim=4, vectors={"fdeux": e[3].copy()}, language="fr"
    )
    # translation matrix rotates the foreign axis onto sense two's axis
    tmatrix = np.zeros((4, 4))
    tmatrix[1, 3] = 1.0
    mft = MftTable(entries={WordType("duo", N): MftEntry("fdeux", 9, 9)})
    return db, ids, english, foreign, tmatrix, mft


def test_sense_vector_mean(duo):
    db, ids, english, *_ = duo
    # sense one, excluding the target lemma: keywords alpha + akey, both axis 0
    vec = sense_vector(db, ids["s1"], "umfswe", english, EMPTY, exclude_lemma="duo")
    assert vec is not None
    assert np.allclose(vec, np.eye(4)[0])


def test_sense_vector_single_keyword(duo):
    db, ids, english, *_ = duo
    vec = sense_vector(db, ids["akey"], "light", english, EMPTY)
    assert vec is None  # empty gloss, no keywords at all
    vec = sense_vector(db, ids["s1"], "light", english, EMPTY)
    assert np.allclose(vec, np.eye(4)[0])  # gloss word "akey" only


def test_sense_vector_absent_when_oov(duo):
    db, ids, *_ = duo
    tiny = VectorSpace(dim=2, vectors={"unrelated": np.ones(2)})
    assert sense_vector(db, ids["s1"], "extended", tiny, EMPTY) is None


def test_wct_word_feature_wins_with_default_chi(duo):
    db, ids, english, foreign, tmatrix, mft = duo
    pred = wct_predict(
        WordType("duo", N),
        DEFAULT_CHI,
        english,
        db,
        mft=mft,
        tmatrix=tmatrix,
        foreign=foreign,
        mode="umfswe",
        stoplist=EMPTY,
    )
    # word vector backs sense one (weight .5/.6), translation backs sense two
    assert pred.chosen == ids["s1"]
    assert pred.features_used == {"word", "mft"}


def test_wct_mft_only_flips_winner(duo):
    db, ids, english, foreign, tmatrix, mft = duo
    pred = wct_predict(
        WordType("duo", N),
        Chi(0.0, 0.0, 1.0),
        english,
        db,
        mft=mft,
        tmatrix=tmatrix,
        foreign=foreign,
        mode="umfswe",
        stoplist=EMPTY,
    )
    assert pred.chosen == ids["s2"]


def test_wct_companion_feature(duo):
    db, ids, english, *_ = duo
    comp = CompanionSet(
        target=WordType("duo", N), companions=[WordType("bkey", N)]
    )
    pred = wct_predict(
        WordType("duo", N),
        Chi(0.0, 1.0, 0.0),
        english,
        db,
        companion_set=comp,
        mode="umfswe",
        stoplist=EMPTY,
    )
    assert pred.chosen == ids["s2"]
    assert pred.features_used == {"companions"}


def test_wct_missing_features_renormalize(duo):
    db, ids, english, *_ = duo
    # no mft, no companions: the .4 and .1 mass folds back onto the word
    pred = wct_predict(
        WordType("duo", N), DEFAULT_CHI, english, db, mode="umfswe", stoplist=EMPTY
    )
    assert pred.features_used == {"word"}
    assert pred.scores[ids["s1"]] == pytest.approx(1.0)  # weight renormalized to 1


def test_wct_monosemous(duo):
    db, ids, english, *_ = duo
    pred = wct_predict(
        WordType("akey", N), DEFAULT_CHI, english, db, mode="umfswe", stoplist=EMPTY
    )
    assert pred.chosen == ids["akey"]
    assert pred.scores[ids["akey"]] == pytest.approx(1.0)


def test_wct_no_features_is_no_prediction(duo):
    db, ids, english, *_ = duo
    with pytest.raises(NoPredictionError):
        wct_predict(
            WordType("thing", N), DEFAULT_CHI, english, db, mode="umfswe", stoplist=EMPTY
        )


def test_wct_zero_weight_on_only_feature_is_no_prediction(duo):
    db, ids, english, foreign, tmatrix, mft = duo
    removed = VectorSpace(
        dim=4,
        vectors={k: v for k, v in english.vectors.items() if k != "duo"},
        language="en",
    )
    # chi = (1,0,0) but the word vector is gone and only mft remains at weight 0
    with pytest.raises(NoPredictionError):
        wct_predict(
            WordType("duo", N),
            Chi(1.0, 0.0, 0.0),
            removed,
            db,
            mft=mft,
            tmatrix=tmatrix,
            foreign=foreign,
            mode="umfswe",
            stoplist=EMPTY,
        )


def test_wct_all_senses_oov_is_no_prediction(duo):
    db, ids, *_ = duo
    sparse = VectorSpace(dim=4, vectors={"duo": np.eye(4)[0]}, language="en")
    with pytest.raises(NoPredictionError, match="keyword"):
        wct_predict(
            WordType("duo", N), DEFAULT_CHI, sparse, db, mode="light", stoplist=EMPTY
        )


def test_wct_scale_invariance(duo):
    db, ids, english, foreign, tmatrix, mft = duo
    scaled = VectorSpace(
        dim=4,
        vectors={k: (7.0 if k == "duo" else 1.0) * v for k, v in english.vectors.items()},
        language="en",
    )
    args = dict(mft=mft, tmatrix=tmatrix, foreign=foreign, mode="umfswe", stoplist=EMPTY)
    base = wct_predict(WordType("duo", N), DEFAULT_CHI, english, db, **args)
    rescaled = wct_predict(WordType("duo", N), DEFAULT_CHI, scaled, db, **args)
    assert base.chosen == rescaled.chosen
    for sid, value in base.scores.items():
        assert rescaled.scores[sid] == pytest.approx(value, abs=1e-9)


def test_umfswe_equals_wct_reduction(duo):
    db, ids, english, *_ = duo
    for lemma in ("duo", "akey", "alpha"):
        word = WordType(lemma, N)
        via_wct = wct_predict(
            word, Chi(1.0, 0.0, 0.0), english, db, mode="umfswe", stoplist=EMPTY
        )
        direct = umfswe_predict(word, english, db, stoplist=EMPTY)
        assert direct.chosen == via_wct.chosen
        assert direct.scores == via_wct.scores


def test_umfswe_fixture_winner(duo):
    db, ids, english, *_ = duo
    pred = umfswe_predict(WordType("duo", N), english, db, stoplist=EMPTY)
    assert pred.chosen == ids["s1"]


# ---------------------------------------------------------------------------
# companion scorer on the miniature hierarchy


@pytest.fixture(scope="module")
def mini_ic_table(mini_db):
    counts = {
        WordType("dog", N): 8,
        WordType("cat", N): 4,
        WordType("money", N): 6,
        WordType("water", N): 2,
        WordType("bank", N): 6,
    }
    return counts, compute_ic(counts, mini_db)


def cooc_with_neighbors(word, neighbor_counts):
    table = CooccurrenceTable()
    for neighbor, count in neighbor_counts.items():
        table._adj.setdefault(word, {})[neighbor] = count
        table._adj.setdefault(neighbor, {})[word] = count
    return table


def test_companion_shared_synset_dominates(mini_db, mini_ids, mini_ic_table):
    _, ic = mini_ic_table
    # "depository" shares the building synset with "bank": jcn hits the cap
    word = WordType("bank", N)
    table = cooc_with_neighbors(word, {WordType("depository", N): 3})
    pred = companion_predict(word, 5, mini_db, ic, table)
    assert pred.chosen == mini_ids["bank_building"]
    assert pred.scores[mini_ids["bank_building"]] >= 1e7


def test_companion_fixture_matches_brute_force(mini_db, mini_ids, mini_ic_table):
    counts, ic = mini_ic_table
    word = WordType("bank", N)
    comps = {
        WordType("money", N): 9,
        WordType("water", N): 5,
        WordType("dog", N): 2,
    }
    table = cooc_with_neighbors(word, comps)
    pred = companion_predict(word, 3, mini_db, ic, table)
    oracle_ic, totals = ic_brute(counts, mini_db)
    expected = companion_scores_brute(
        mini_db, oracle_ic, totals, word, list(comps)
    )
    assert set(pred.scores) == set(expected)
    for sid, value in expected.items():
        assert pred.scores[sid] == pytest.approx(value, abs=1e-9)
    assert pred.chosen == max(
        mini_db.senses(word), key=lambda s: (expected[s], -s.offset)
    )


def test_companion_water_pulls_slope_sense(mini_db, mini_ids, mini_ic_table):
    _, ic = mini_ic_table
    word = WordType("bank", N)
    # make the slope sense's neighbourhood much more informative
    table = cooc_with_neighbors(word, {WordType("water", N): 4})
    pred = companion_predict(word, 5, mini_db, ic, table)
    scores = pred.scores
    assert scores[mini_ids["bank_slope"]] != scores[mini_ids["bank_building"]]


def test_companion_empty_set_is_no_prediction(mini_db, mini_ic_table):
    _, ic = mini_ic_table
    with pytest.raises(NoPredictionError, match="companions"):
        companion_predict(
            WordType("bank", N), 5, mini_db, ic, CooccurrenceTable()
        )


def test_companion_adj_only_low_confidence(mini_db, mini_ids, mini_ic_table):
    _, ic = mini_ic_table
    word = WordType("bank", N)
    table = cooc_with_neighbors(word, {WordType("happy", "a"): 4})
    pred = companion_predict(word, 5, mini_db, ic, table)
    assert all(v == 0.0 for v in pred.scores.values())
    assert pred.chosen == mini_ids["bank_building"]  # lowest sense index
    assert pred.low_confidence


def test_companion_senseless_companion_contributes_zero(mini_db, mini_ic_table):
    _, ic = mini_ic_table
    word = WordType("bank", N)
    with_unknown = cooc_with_neighbors(
        word, {WordType("money", N): 3, WordType("qqqq", N): 9}
    )
    only_known = cooc_with_neighbors(word, {WordType("money", N): 3})
    a = companion_predict(word, 5, mini_db, ic, with_unknown)
    b = companion_predict(word, 5, mini_db, ic, only_known)
    assert a.scores == b.scores


# ---------------------------------------------------------------------------
# random baseline


def test_random_monosemous(mini_db, mini_ids):
    pred = random_predict(WordType("dog", N), mini_db, seed=1)
    assert pred.chosen == mini_ids["dog"]


def test_random_deterministic_per_seed(mini_db):
    word = WordType("bank", N)
    assert random_predict(word, mini_db, 7).chosen == random_predict(word, mini_db, 7).chosen
    assert stable_word_seed(word, 7) == stable_word_seed(word, 7)
    assert stable_word_seed(word, 7) != stable_word_seed(word, 8)


def test_random_uniform_over_four_senses(tmp_path):
    wn = MiniWordNet()
    wn.synset("root", N, ["thing"])
    for i in range(4):
        wn.synset(f"s{i}", N, ["quad", f"filler{i}"], hypernym=["root"])
    ids = wn.write(tmp_path / "quad")
    db = load_wordnet(tmp_path / "quad")
    word = WordType("quad", N)
    freqs = Counter(random_predict(word, db, seed=s).chosen for s in range(100_000))
    for sid, count in freqs.items():
        assert abs(count / 100_000 - 0.25) < 0.01
    assert len(freqs) == 4


# ---------------------------------------------------------------------------
# batch driver and serialization


def test_predict_many_records_skips(duo):
    db, ids, english, foreign, tmatrix, mft = duo
    resources = MfsResources(
        db=db,
        english=english,
        foreign=foreign,
        tmatrix=tmatrix,
        mft=mft,
        stoplist=EMPTY,
    )
    words = [WordType("duo", N), WordType("akey", N), WordType("thing", N)]
    preds, skipped = predict_many(words, "wct", resources, mode="umfswe")
    assert set(preds) == {WordType("duo", N), WordType("akey", N)}
    assert skipped == [WordType("thing", N)]


def test_predict_word_dispatch_random(duo):
    db, *_ = duo
    resources = MfsResources(db=db)
    pred = predict_word(WordType("duo", N), "random", resources, seed=3)
    assert pred.method == "random"


def test_predictions_roundtrip(tmp_path, duo):
    db, ids, english, foreign, tmatrix, mft = duo
    resources = MfsResources(
        db=db, english=english, foreign=foreign, tmatrix=tmatrix, mft=mft, stoplist=EMPTY
    )
    preds, _ = predict_many(
        [WordType("duo", N), WordType("akey", N)], "wct", resources, mode="umfswe"
    )
    path = tmp_path / "preds.tsv"
    write_predictions(preds, path)
    text = path.read_text()
    assert "duo\tn\t" in text and "\twct\t" in text
    loaded = read_predictions(path)
    assert set(loaded) == set(preds)
    for word, pred in preds.items():
        assert loaded[word].chosen == pred.chosen
        assert loaded[word].method == pred.method
        assert loaded[word].features_used == pred.features_used
